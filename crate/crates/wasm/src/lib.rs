//! Browser bindings: series expansion, rank tables and script verification.
//!
//! Each export wraps a plain function returning `Result<String, String>` so
//! the logic is testable without a JavaScript host.

use std::fmt::Write;

use qlambert::dsl::{parse_expr, verify_script, Evaluator, Status};
use qlambert::partitions::{gf_rank_counts, ORDERING_CHAINS};
use wasm_bindgen::prelude::*;

/// Largest truncation order accepted from the page.
pub const MAX_ORDER: u32 = 400;
/// Largest `n` for rank tables.
pub const MAX_RANK_N: u32 = 300;

pub fn series_text(expr: &str, order: u32) -> Result<String, String> {
    if order > MAX_ORDER {
        return Err(format!("order is limited to {MAX_ORDER}"));
    }
    let e = parse_expr(expr).map_err(|e| e.to_string())?;
    let v = Evaluator::new().eval_to(&e, order as i64).map_err(|e| e.to_string())?;
    let mut out = String::new();
    let start = v.valuation().map_or(0, |x| x.min(0));
    for k in start..=order as i64 {
        let c = v.coeff(k).map_err(|e| e.to_string())?;
        let _ = writeln!(out, "{k}\t{c}");
    }
    Ok(out)
}

/// `n, N(0,6,n) .. N(3,6,n)` rows, with `*` marking arguments that break
/// the expected ordering for their residue class mod 3.
pub fn rank_table_text(max: u32) -> Result<String, String> {
    if max > MAX_RANK_N {
        return Err(format!("n is limited to {MAX_RANK_N}"));
    }
    let rows = gf_rank_counts(max as usize).map_err(|e| e.to_string())?;
    let mut out = String::from("n\tN(0,6,n)\tN(1,6,n)\tN(2,6,n)\tN(3,6,n)\tordering\n");
    for (n, r) in rows.iter().enumerate() {
        let broken: Vec<String> = ORDERING_CHAINS[n % 3]
            .iter()
            .filter(|rel| if rel.equal { r[rel.lhs] != r[rel.rhs] } else { r[rel.lhs] < r[rel.rhs] })
            .map(|rel| rel.to_string())
            .collect();
        let mark = if broken.is_empty() { "ok".to_string() } else { format!("* {}", broken.join("; ")) };
        let _ = writeln!(out, "{n}\t{}\t{}\t{}\t{}\t{mark}", r[0], r[1], r[2], r[3]);
    }
    Ok(out)
}

pub fn verify_text(script: &str) -> Result<String, String> {
    let reports = verify_script(script).map_err(|e| e.to_string())?;
    let mut out = String::new();
    let mut failed = 0;
    for r in &reports {
        if !r.status.is_ok() {
            failed += 1;
        }
        let _ = writeln!(out, "{r}");
    }
    let passed = reports.iter().filter(|r| r.status == Status::Pass).count();
    let _ = writeln!(out, "{passed} passed, {failed} failed of {}", reports.len());
    Ok(out)
}

#[wasm_bindgen]
pub fn series(expr: &str, order: u32) -> Result<String, JsValue> {
    series_text(expr, order).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn rank_table(max: u32) -> Result<String, JsValue> {
    rank_table_text(max).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn verify(script: &str) -> Result<String, JsValue> {
    verify_text(script).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_lists_every_exponent() {
        assert_eq!(series_text("OPGF()", 3).unwrap(), "0\t1\n1\t2\n2\t4\n3\t8\n");
        assert!(series_text("J(1,", 3).unwrap_err().contains("expected"));
        assert!(series_text("q", MAX_ORDER + 1).is_err());
    }

    #[test]
    fn rank_rows_and_marks() {
        let t = rank_table_text(4).unwrap();
        let rows: Vec<&str> = t.lines().collect();
        assert_eq!(rows.len(), 6);
        assert_eq!(rows[1], "0\t1\t0\t0\t0\tok");
        assert!(rows[4].starts_with("3\t4\t0\t2\t0\t*"));
    }

    #[test]
    fn verify_reports_failures() {
        let out = verify_text("assert OPGF() * Jm(1) == poch(-q, 1) to 30;\nassert q == q^2 to 4;").unwrap();
        assert!(out.contains("first difference at q^1"));
        assert!(out.ends_with("1 passed, 1 failed of 2\n"));
        assert!(verify_text("assert 1 == ;").is_err());
    }
}
