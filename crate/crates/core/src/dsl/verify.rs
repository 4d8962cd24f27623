use std::fmt;

use super::ast::{Assertion, Expected};
use super::eval::{EvalError, Evaluator};
use super::parser::parse;
use super::SyntaxError;
use crate::series::Coeff;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    /// `lhs - rhs` first differs from zero at `q^exponent` by `difference`.
    Fail { exponent: i64, difference: Coeff },
    /// Declared discrepancy; `reproduced` holds the first difference if it still occurs.
    KnownDiscrepancy { note: String, reproduced: Option<(i64, Coeff)> },
    Error(EvalError),
}

impl Status {
    pub fn label(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail { .. } => "fail",
            Status::KnownDiscrepancy { .. } => "known-discrepancy",
            Status::Error(_) => "error",
        }
    }

    /// Pass and declared discrepancies do not fail a run.
    pub fn is_ok(&self) -> bool {
        matches!(self, Status::Pass | Status::KnownDiscrepancy { .. })
    }

    pub fn first_difference(&self) -> Option<(i64, &Coeff)> {
        match self {
            Status::Fail { exponent, difference } => Some((*exponent, difference)),
            Status::KnownDiscrepancy { reproduced: Some((e, c)), .. } => Some((*e, c)),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub line: usize,
    pub order: u64,
    pub status: Status,
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {} to O(q^{})", self.line, self.status.label(), self.order + 1)?;
        match &self.status {
            Status::Fail { exponent, difference } => write!(f, ": first difference at q^{exponent}: {difference}"),
            Status::KnownDiscrepancy { note, reproduced } => {
                write!(f, " ({note})")?;
                match reproduced {
                    Some((e, c)) => write!(f, ": first difference at q^{e}: {c}"),
                    None => write!(f, ": no longer reproduces"),
                }
            }
            Status::Error(e) => write!(f, ": {e}"),
            Status::Pass => Ok(()),
        }
    }
}

fn first_difference(a: &Assertion, order: u64) -> Result<Option<(i64, Coeff)>, EvalError> {
    let mut ev = Evaluator::new();
    let lhs = ev.eval_to(&a.lhs, order as i64)?;
    let rhs = ev.eval_to(&a.rhs, order as i64)?;
    Ok((&lhs - &rhs).leading_term().filter(|(e, _)| *e <= order as i64))
}

/// Verifies `a` at its own truncation order.
pub fn verify(a: &Assertion) -> VerifyReport {
    verify_at(a, a.order)
}

/// Verifies `a` through `q^order`, overriding the order written in the script.
pub fn verify_at(a: &Assertion, order: u64) -> VerifyReport {
    let status = match (first_difference(a, order), &a.expected) {
        (Err(e), _) => Status::Error(e),
        (Ok(diff), Expected::KnownDiscrepancy(note)) => Status::KnownDiscrepancy { note: note.clone(), reproduced: diff },
        (Ok(None), Expected::Pass) => Status::Pass,
        (Ok(Some((exponent, difference))), Expected::Pass) => Status::Fail { exponent, difference },
    };
    VerifyReport { line: a.line, order, status }
}

/// Parses and verifies every assertion in `text`.
pub fn verify_script(text: &str) -> Result<Vec<VerifyReport>, SyntaxError> {
    Ok(parse(text)?.iter().map(verify).collect())
}
