//! A small language for q-series assertions.
//!
//! ```text
//! # comment
//! assert OPGF() * Jm(1) == poch(-q, 1) to 40;
//! assert L[(-1)^n q^(3n^2+3n) / (1 + q^(3n+1))] + L[(-1)^n q^(3n^2+3n) / (1 - q^(3n+1))]
//!     == 2 * Jm(6)^3 / Jm(2) to 60;
//! ```
//!
//! Precedence from tightest: `^` (integer exponents), unary `-`, `*` `/`,
//! `+` `-`. Monomial arguments are written `q`, `-q^3`, `q^-2`, `1` or `-1`.

pub mod ast;
pub mod eval;
pub mod lexer;
pub mod parser;
pub mod verify;

use std::fmt;

pub use ast::{pretty, Assertion, BinOp, Builtin, Expected, Expr, ExprKind, Span};
pub use eval::{eval, EvalError, Evaluator};
pub use parser::{parse, parse_expr};
pub use verify::{verify, verify_at, verify_script, Status, VerifyReport};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyntaxError {
    pub line: usize,
    pub col: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl SyntaxError {
    pub(crate) fn new(span: Span, expected: Vec<String>, found: &str) -> Self {
        SyntaxError { line: span.line, col: span.col, expected, found: found.to_string() }
    }
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: expected ", self.line, self.col)?;
        match self.expected.as_slice() {
            [one] => write!(f, "{one}")?,
            many => write!(f, "one of {}", many.join(", "))?,
        }
        write!(f, ", found {}", self.found)
    }
}

impl std::error::Error for SyntaxError {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{Coeff, TruncSeries};

    #[test]
    fn reflexive_identity_passes() {
        let src = "assert J(1,6)^6 * Jm(2)^2 * J(3,6) / Jm(6)^6 == J(1,6)^6 * Jm(2)^2 * J(3,6) / Jm(6)^6 to 40;";
        let r = verify_script(src).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].status, Status::Pass);
    }

    #[test]
    fn stray_comma_is_located() {
        let e = parse_expr("J(1,)").unwrap_err();
        assert_eq!((e.line, e.col), (1, 5));
        assert!(e.expected.iter().any(|s| s.contains("integer")));
    }

    #[test]
    fn precedence() {
        let e = parse_expr("-q^2 + 2*q/3").unwrap();
        assert_eq!(e.to_string(), "-q^2 + 2 * q / 3");
        let s = eval(&e, 3).unwrap();
        let expect = TruncSeries::from_coeffs(vec![Coeff::from_integer(0.into()), Coeff::new(2.into(), 3.into()), Coeff::from_integer((-1).into()), Coeff::from_integer(0.into())]);
        assert_eq!(s, expect);
        assert_eq!(eval(&parse_expr("(1 - q)^(-1)").unwrap(), 4).unwrap(), TruncSeries::from_ints(&[1; 5]));
    }

    #[test]
    fn literals_and_constants() {
        assert_eq!(eval(&parse_expr("1/6").unwrap(), 3).unwrap(), TruncSeries::constant(Coeff::new(1.into(), 6.into()), 3));
        assert_eq!(eval(&parse_expr("OPGF()").unwrap(), 3).unwrap().coeff(0).unwrap(), Coeff::from_integer(1.into()));
    }

    #[test]
    fn laurent_intermediates_cancel() {
        let e = parse_expr("q^-1 * (q + q^2) - 1").unwrap();
        assert_eq!(eval(&e, 5).unwrap(), TruncSeries::monomial(Coeff::from_integer(1.into()), 1, 5));
        assert!(eval(&parse_expr("q^-1").unwrap(), 5).is_err());
    }

    #[test]
    fn mismatch_reports_first_difference() {
        let r = verify_script("assert Jm(1) + q^7 == Jm(1) to 20;").unwrap();
        assert_eq!(r[0].status, Status::Fail { exponent: 7, difference: Coeff::from_integer(1.into()) });
        let r = verify_script("assert Jm(1) == Jm(1) + 1 to 20 known \"constant\";").unwrap();
        assert!(matches!(&r[0].status, Status::KnownDiscrepancy { reproduced: Some((0, _)), .. }));
    }

    #[test]
    fn empty_script() {
        assert!(verify_script("# nothing\n").unwrap().is_empty());
    }

    #[test]
    fn lambert_syntax_round_trip() {
        for src in [
            "L[(-1)^n q^(3n^2 + 3n) / (1 + q^(3n + 1))^2]",
            "L[(-1)^n q^(n^2 + n) / (1 - q^(3n)), n != 0]",
            "L[q^(3n^2/2 + 3n/2) / (1 - q^(n + 1)), n != -1]",
            "L[(-1)^n q^(9n^2 + 9n + 2) / (1 - q^(9n + 3))]",
        ] {
            let e = parse_expr(src).unwrap();
            assert_eq!(e.to_string(), src);
            assert_eq!(parse_expr(&e.to_string()).unwrap(), e);
        }
    }

    #[test]
    fn evaluation_errors_carry_location() {
        let r = verify_script("assert\n  P(1, 1, 1; 3) == 1 to 5;").unwrap();
        match &r[0].status {
            Status::Error(e) => assert_eq!(e.span, Span { line: 2, col: 3 }),
            s => panic!("unexpected {s:?}"),
        }
    }
}
