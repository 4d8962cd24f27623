use qlambert::dsl::{Status, VerifyReport};
use serde_json::{json, Value};

use crate::Format;

/// One verified assertion, ready for output.
pub struct Record {
    pub file: String,
    pub index: usize,
    pub report: VerifyReport,
    pub elapsed_ms: Option<u128>,
}

impl Record {
    pub fn id(&self) -> String {
        format!("{}#{}", self.file, self.index + 1)
    }

    fn diff(&self) -> Option<(i64, String)> {
        self.report.status.first_difference().map(|(e, c)| (e, c.to_string()))
    }

    fn detail(&self) -> String {
        match &self.report.status {
            Status::KnownDiscrepancy { note, .. } => note.clone(),
            Status::Error(e) => e.to_string(),
            _ => String::new(),
        }
    }

    fn json(&self) -> Value {
        let mut v = json!({
            "assertion_id": self.id(),
            "file": self.file,
            "line": self.report.line,
            "order": self.report.order,
            "status": self.report.status.label(),
        });
        if let Some((e, c)) = self.diff() {
            v["first_diff_exponent"] = json!(e);
            v["diff_coefficient"] = json!(c);
        }
        let detail = self.detail();
        if !detail.is_empty() {
            v["detail"] = json!(detail);
        }
        if let Some(ms) = self.elapsed_ms {
            v["elapsed_ms"] = json!(ms);
        }
        v
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn render(records: &[Record], format: Format, timings: bool) -> String {
    match format {
        Format::Text => {
            let mut out = String::new();
            for r in records {
                let label = r.report.status.label().to_uppercase();
                out.push_str(&format!("{label:<17} {}:{}  O(q^{})", r.file, r.report.line, r.report.order + 1));
                if let Some((e, c)) = r.diff() {
                    out.push_str(&format!("  first difference at q^{e}: {c}"));
                }
                let detail = r.detail();
                if !detail.is_empty() {
                    out.push_str(&format!("  ({detail})"));
                }
                if let Some(ms) = r.elapsed_ms {
                    out.push_str(&format!("  {ms} ms"));
                }
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let arr: Vec<Value> = records.iter().map(Record::json).collect();
            serde_json::to_string_pretty(&arr).expect("json values serialize") + "\n"
        }
        Format::Csv => {
            let mut out = String::from("assertion_id,file,line,order,status,first_diff_exponent,diff_coefficient,detail");
            if timings {
                out.push_str(",elapsed_ms");
            }
            out.push('\n');
            for r in records {
                let (e, c) = r.diff().map(|(e, c)| (e.to_string(), c)).unwrap_or_default();
                let mut row = [
                    r.id(),
                    r.file.clone(),
                    r.report.line.to_string(),
                    r.report.order.to_string(),
                    r.report.status.label().to_string(),
                    e,
                    c,
                    r.detail(),
                ]
                .iter()
                .map(|s| csv_field(s))
                .collect::<Vec<_>>()
                .join(",");
                if let Some(ms) = r.elapsed_ms {
                    row.push_str(&format!(",{ms}"));
                }
                out.push_str(&row);
                out.push('\n');
            }
            out
        }
    }
}

#[derive(Default)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub known: usize,
    pub error: usize,
}

impl Summary {
    pub fn of(records: &[Record]) -> Self {
        let mut s = Summary::default();
        for r in records {
            match r.report.status {
                Status::Pass => s.pass += 1,
                Status::Fail { .. } => s.fail += 1,
                Status::KnownDiscrepancy { .. } => s.known += 1,
                Status::Error(_) => s.error += 1,
            }
        }
        s
    }

    pub fn ok(&self) -> bool {
        self.fail == 0 && self.error == 0
    }
}

impl std::fmt::Display for Summary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} passed, {} failed, {} errors, {} known discrepancies",
            self.pass, self.fail, self.error, self.known
        )
    }
}
