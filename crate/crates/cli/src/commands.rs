use std::fmt::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use num_bigint::BigInt;
use qlambert::corpus::FILES;
use qlambert::dsl::{eval, parse, parse_expr, verify_at, Assertion, Evaluator};
use qlambert::partitions::{conjecture_scan, enumerate_ranks, gf_rank_counts, ENUMERATION_LIMIT};
use rayon::prelude::*;
use serde_json::json;

use crate::report::{render, Record, Summary};
use crate::{Format, Oracle};

pub const OK: u8 = 0;
pub const FAILED: u8 = 1;
pub const BAD_INPUT: u8 = 2;

/// Environment variable naming a directory that replaces the bundled corpus.
pub const CORPUS_ENV: &str = "QLAMBERT_CORPUS";

fn read_corpus_dir(dir: &Path) -> std::io::Result<Vec<(String, String)>> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "qid"))
        .collect();
    paths.sort();
    paths.into_iter().map(|p| Ok((p.display().to_string(), std::fs::read_to_string(&p)?))).collect()
}

fn sources(paths: &[PathBuf], corpus: bool) -> Result<Vec<(String, String)>, String> {
    let mut out = Vec::new();
    if corpus {
        match std::env::var_os(CORPUS_ENV) {
            Some(dir) => {
                let dir = PathBuf::from(dir);
                out.extend(read_corpus_dir(&dir).map_err(|e| format!("{}: {e}", dir.display()))?);
            }
            None => out.extend(FILES.iter().map(|f| (format!("corpus/{}.qid", f.name), f.text.to_string()))),
        }
    }
    for p in paths {
        let text = std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?;
        out.push((p.display().to_string(), text));
    }
    if out.is_empty() {
        return Err("nothing to verify: give script paths or --corpus".into());
    }
    Ok(out)
}

pub fn verify(paths: &[PathBuf], corpus: bool, order: Option<u64>, jobs: usize, format: Format, timings: bool, out: &mut String) -> u8 {
    let sources = match sources(paths, corpus) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return BAD_INPUT;
        }
    };
    let mut work: Vec<(String, usize, Assertion)> = Vec::new();
    for (name, text) in &sources {
        match parse(text) {
            Ok(assertions) => work.extend(assertions.into_iter().enumerate().map(|(i, a)| (name.clone(), i, a))),
            Err(e) => {
                eprintln!("error: {name}:{e}");
                return BAD_INPUT;
            }
        }
    }
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return BAD_INPUT;
        }
    };
    let records: Vec<Record> = pool.install(|| {
        work.into_par_iter()
            .map(|(file, index, a)| {
                let start = Instant::now();
                let report = verify_at(&a, order.unwrap_or(a.order));
                let elapsed_ms = timings.then(|| start.elapsed().as_millis());
                Record { file, index, report, elapsed_ms }
            })
            .collect()
    });
    out.push_str(&render(&records, format, timings));
    let summary = Summary::of(&records);
    match format {
        Format::Text => {
            let _ = writeln!(out, "{summary}");
        }
        _ => eprintln!("{summary}"),
    }
    if summary.ok() {
        OK
    } else {
        FAILED
    }
}

pub fn series(text: &str, order: usize, out: &mut String) -> u8 {
    let e = match parse_expr(text) {
        Ok(e) => e,
        Err(err) => {
            eprintln!("error: {err}");
            return BAD_INPUT;
        }
    };
    match Evaluator::new().eval_to(&e, order as i64) {
        Ok(v) => {
            let start = v.valuation().map_or(0, |x| x.min(0));
            for k in start..=order as i64 {
                let _ = writeln!(out, "{k},{}", v.coeff(k).expect("within the known order"));
            }
            OK
        }
        Err(err) => {
            eprintln!("error: {err}");
            FAILED
        }
    }
}

pub fn dissect(text: &str, modulus: usize, residue: usize, order: usize, out: &mut String) -> u8 {
    if residue >= modulus {
        eprintln!("error: residue {residue} is not below the modulus {modulus}");
        return BAD_INPUT;
    }
    let e = match parse_expr(text) {
        Ok(e) => e,
        Err(err) => {
            eprintln!("error: {err}");
            return BAD_INPUT;
        }
    };
    match eval(&e, modulus * order + residue).and_then(|s| {
        s.dissect(modulus, residue).map_err(|error| qlambert::dsl::EvalError { span: e.span, error })
    }) {
        Ok(s) => {
            for (k, c) in s.coeffs().iter().enumerate() {
                let _ = writeln!(out, "{k},{c}");
            }
            OK
        }
        Err(err) => {
            eprintln!("error: {err}");
            FAILED
        }
    }
}

fn rank_rows(max: u64, oracle: Oracle) -> Result<Vec<[BigInt; 4]>, String> {
    match oracle {
        Oracle::Gf => gf_rank_counts(max as usize).map_err(|e| e.to_string()),
        Oracle::Enum => {
            let t = enumerate_ranks(max).map_err(|e| e.to_string())?;
            Ok((0..=max).map(|n| [0, 1, 2, 3].map(|s| BigInt::from(t.count_rank_mod(s, 6, n)))).collect())
        }
    }
}

pub fn ranks(max: u64, oracle: Oracle, cross_check: bool, format: Format, out: &mut String) -> u8 {
    if (oracle == Oracle::Enum || cross_check) && max > ENUMERATION_LIMIT {
        eprintln!("error: enumeration is limited to n <= {ENUMERATION_LIMIT}");
        return BAD_INPUT;
    }
    let rows = match rank_rows(max, oracle) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return FAILED;
        }
    };
    match format {
        Format::Text => {
            let _ = writeln!(out, "{:>4} {:>14} {:>14} {:>14} {:>14}", "n", "N(0,6,n)", "N(1,6,n)", "N(2,6,n)", "N(3,6,n)");
            for (n, r) in rows.iter().enumerate() {
                let _ = writeln!(out, "{n:>4} {:>14} {:>14} {:>14} {:>14}", r[0], r[1], r[2], r[3]);
            }
        }
        Format::Json => {
            let v: Vec<_> = rows
                .iter()
                .enumerate()
                .map(|(n, r)| json!({"n": n, "counts": r.iter().map(|c| c.to_string()).collect::<Vec<_>>()}))
                .collect();
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json values serialize"));
        }
        Format::Csv => {
            let _ = writeln!(out, "n,r0,r1,r2,r3");
            for (n, r) in rows.iter().enumerate() {
                let _ = writeln!(out, "{n},{},{},{},{}", r[0], r[1], r[2], r[3]);
            }
        }
    }
    if cross_check {
        let other = if oracle == Oracle::Gf { Oracle::Enum } else { Oracle::Gf };
        let check = match rank_rows(max, other) {
            Ok(r) => r,
            Err(e) => {
                eprintln!("error: {e}");
                return FAILED;
            }
        };
        if let Some(n) = (0..rows.len()).find(|&n| rows[n] != check[n]) {
            eprintln!("cross-check: oracles disagree at n={n}: {:?} vs {:?}", rows[n], check[n]);
            return FAILED;
        }
        eprintln!("cross-check: enumeration and generating functions agree for n <= {max}");
    }
    OK
}

pub fn conjecture(from: u64, to: u64, format: Format, out: &mut String) -> u8 {
    let violations = match conjecture_scan(from, to) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return FAILED;
        }
    };
    match format {
        Format::Text => {
            for v in &violations {
                let _ = writeln!(out, "{v}");
            }
            if violations.is_empty() {
                let _ = writeln!(out, "no violations for {from} <= n <= {to}");
            } else {
                let _ = writeln!(out, "{} violations for {from} <= n <= {to}", violations.len());
            }
        }
        Format::Json => {
            let v: Vec<_> = violations
                .iter()
                .map(|v| {
                    json!({
                        "n": v.n,
                        "argument": v.argument(),
                        "relation": v.relation.to_string(),
                        "counts": v.counts.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json values serialize"));
        }
        Format::Csv => {
            let _ = writeln!(out, "n,argument,relation,r0,r1,r2,r3");
            for v in &violations {
                let [a, b, c, d] = &v.counts;
                let _ = writeln!(out, "{},{},{},{a},{b},{c},{d}", v.n, v.argument(), v.relation);
            }
        }
    }
    OK
}
