use std::collections::HashMap;
use std::fmt;

use num_traits::One;

use super::ast::{BinOp, Builtin, Expr, ExprKind, Span};
use crate::error::QError;
use crate::lambert::{appell_lerch_laurent, g2_laurent, lambert_sum_laurent, mock_omega, mock_rho, s_direct, SSeriesSpec};
use crate::laurent::LaurentSeries;
use crate::partitions::{rank_dissection, rbar_spec, residue_gf};
use crate::products::{bracket, opgf, p_function_laurent, ProductBuilder};
use crate::series::{Coeff, TruncSeries};

/// A lower-level error tagged with the expression that raised it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalError {
    pub span: Span,
    pub error: QError,
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.span.line, self.span.col, self.error)
    }
}

impl std::error::Error for EvalError {}

/// Evaluates expressions at a fixed working order, caching builtin values.
#[derive(Default)]
pub struct Evaluator {
    cache: HashMap<(Builtin, i64), LaurentSeries>,
}

/// How many times the working order is raised before giving up.
const MAX_RETRIES: usize = 8;

impl Evaluator {
    pub fn new() -> Self {
        Evaluator::default()
    }

    /// Value of `e` known through at least `q^order`, raising the working
    /// order when divisions by series of positive valuation lose precision.
    pub fn eval_to(&mut self, e: &Expr, order: i64) -> Result<LaurentSeries, EvalError> {
        let mut work = order;
        for _ in 0..MAX_RETRIES {
            let v = self.eval_at(e, work)?;
            if v.order() >= order {
                return Ok(v.truncate(order));
            }
            work += (order - v.order()).max(1);
        }
        let got = self.eval_at(e, work)?.order();
        Err(EvalError { span: e.span, error: QError::InsufficientPrecision { wanted: order, got } })
    }

    /// Raw value at working order `w`; its known order may fall short of `w`.
    pub fn eval_at(&mut self, e: &Expr, w: i64) -> Result<LaurentSeries, EvalError> {
        let tag = |error: QError| EvalError { span: e.span, error };
        Ok(match &e.kind {
            ExprKind::Int(n) => LaurentSeries::constant(Coeff::from_integer(n.clone()), w),
            ExprKind::Q => LaurentSeries::monomial(Coeff::one(), 1, w),
            ExprKind::Neg(a) => -&self.eval_at(a, w)?,
            ExprKind::Binary(op, a, b) => {
                let x = self.eval_at(a, w)?;
                let y = self.eval_at(b, w)?;
                match op {
                    BinOp::Add => &x + &y,
                    BinOp::Sub => &x - &y,
                    BinOp::Mul => &x * &y,
                    BinOp::Div => {
                        let inv = y.invert().map_err(|_| EvalError { span: b.span, error: QError::NonUnit })?;
                        &x * &inv
                    }
                }
            }
            ExprKind::Pow(a, k) => self.eval_at(a, w)?.pow(*k).map_err(tag)?,
            ExprKind::Call(b) => {
                let key = (b.clone(), w);
                if let Some(v) = self.cache.get(&key) {
                    return Ok(v.clone());
                }
                let v = builtin(b, w).map_err(tag)?;
                self.cache.insert(key, v.clone());
                v
            }
        })
    }
}

fn series(s: TruncSeries) -> LaurentSeries {
    LaurentSeries::from(s)
}

fn builtin(b: &Builtin, w: i64) -> Result<LaurentSeries, QError> {
    let n = w.max(0) as usize;
    Ok(match b {
        Builtin::J(a, m) => ProductBuilder::new().cap_j(*a, *m, 1).laurent(w)?,
        Builtin::Jm(m) => ProductBuilder::new().cap_jm(*m, 1).laurent(w)?,
        Builtin::Theta(z, m) => ProductBuilder::new().theta(*z, *m, 1).laurent(w)?,
        Builtin::Bracket(a, m) => bracket(*a, *m, w).to_laurent(w),
        Builtin::Poch(a, s) => ProductBuilder::new().poch(*a, *s, 1).laurent(w)?,
        Builtin::FinitePoch(a, s, k) => ProductBuilder::new().finite_poch(*a, *s, *k, 1).laurent(w)?,
        Builtin::P([a, b, c], m) => p_function_laurent(*a, *b, *c, *m, w)?,
        Builtin::S(a, base) => series(s_direct(SSeriesSpec::of(*a, *base), n)?),
        Builtin::AppellLerch(x, base, z) => appell_lerch_laurent(*x, *base, *z, w)?,
        Builtin::G2(x, base) => g2_laurent(*x, *base, w)?,
        Builtin::Omega => series(mock_omega(n)),
        Builtin::Rho => series(mock_rho(n)),
        Builtin::Opgf => series(opgf(n)),
        Builtin::Rbar(t) => series(rbar_spec(*t, n)?),
        Builtin::Rgf(s) => series(residue_gf(*s, n)?),
        Builtin::Rdiss(s, d) => series(rank_dissection(*s, *d, n)?),
        Builtin::Lambert(spec) => lambert_sum_laurent(spec, w)?,
    })
}

/// Evaluates `e` as a power series through `q^order`.
pub fn eval(e: &Expr, order: usize) -> Result<TruncSeries, EvalError> {
    let v = Evaluator::new().eval_to(e, order as i64)?;
    v.to_power_series(order).map_err(|error| EvalError { span: e.span, error })
}
