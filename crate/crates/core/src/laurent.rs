//! Truncated Laurent series `q^shift · body` with finitely many negative exponents.
//!
//! Intermediate values such as `q^-1 · m(q, q^6, q^2)` or brackets whose
//! arguments fall outside the fundamental range carry a negative leading
//! exponent; they are combined here and converted back to a [`TruncSeries`]
//! only once the final value is known to be a power series.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{QError, Result};
use crate::series::{fmt_terms, Coeff, TruncSeries};

/// Invariant: either `body` has a nonzero constant term, or `body` is the zero
/// series of order 0 and the value is known to vanish through `q^shift`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentSeries {
    shift: i64,
    body: TruncSeries,
}

impl LaurentSeries {
    /// The zero value known through `q^order`.
    pub fn zero(order: i64) -> Self {
        LaurentSeries { shift: order, body: TruncSeries::zero(0) }
    }

    pub fn one(order: i64) -> Self {
        Self::monomial(Coeff::one(), 0, order)
    }

    pub fn constant(c: Coeff, order: i64) -> Self {
        Self::monomial(c, 0, order)
    }

    pub fn monomial(c: Coeff, exponent: i64, order: i64) -> Self {
        if exponent > order || c.is_zero() {
            return Self::zero(order);
        }
        let body = TruncSeries::constant(c, (order - exponent) as usize);
        LaurentSeries { shift: exponent, body }
    }

    /// `q^shift · body`, known through `q^(shift + body.order())`.
    pub fn from_parts(shift: i64, body: TruncSeries) -> Self {
        let mut s = LaurentSeries { shift, body };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        match self.body.valuation() {
            None => {
                self.shift += self.body.order() as i64;
                self.body = TruncSeries::zero(0);
            }
            Some(0) => {}
            Some(v) => {
                self.shift += v as i64;
                self.body = self.body.drop_leading(v);
            }
        }
    }

    /// Highest exponent whose coefficient is known.
    pub fn order(&self) -> i64 {
        self.shift + self.body.order() as i64
    }

    /// Exponent of the leading nonzero term.
    pub fn valuation(&self) -> Option<i64> {
        (!self.body.is_zero()).then_some(self.shift)
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    pub fn coeff(&self, exponent: i64) -> Result<Coeff> {
        if exponent > self.order() {
            return Err(QError::BeyondOrder { exponent, order: self.order() });
        }
        if exponent < self.shift {
            return Ok(Coeff::zero());
        }
        Ok(self.body.coeff_at((exponent - self.shift) as usize))
    }

    /// Leading nonzero term `(exponent, coefficient)`.
    pub fn leading_term(&self) -> Option<(i64, Coeff)> {
        self.valuation().map(|v| (v, self.body.coeff_at(0)))
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, Coeff)> + '_ {
        (0..=self.body.order())
            .map(move |k| (self.shift + k as i64, self.body.coeff_at(k)))
            .filter(|(_, c)| !c.is_zero())
    }

    /// Drops everything above `order`.
    pub fn truncate(&self, order: i64) -> LaurentSeries {
        if order >= self.order() {
            return self.clone();
        }
        if order < self.shift {
            return LaurentSeries::zero(order);
        }
        LaurentSeries::from_parts(self.shift, self.body.truncate((order - self.shift) as usize))
    }

    pub fn scale(&self, c: &Coeff) -> LaurentSeries {
        if c.is_zero() {
            return LaurentSeries::zero(self.order());
        }
        LaurentSeries { shift: self.shift, body: self.body.scale(c) }
    }

    /// Multiplies by `q^k`.
    pub fn shift_by(&self, k: i64) -> LaurentSeries {
        LaurentSeries { shift: self.shift + k, body: self.body.clone() }
    }

    pub fn invert(&self) -> Result<LaurentSeries> {
        if self.body.is_zero() {
            return Err(QError::NonUnit);
        }
        Ok(LaurentSeries { shift: -self.shift, body: self.body.invert()? })
    }

    pub fn pow(&self, exponent: i64) -> Result<LaurentSeries> {
        let base = if exponent < 0 { self.invert()? } else { self.clone() };
        let e = exponent.unsigned_abs();
        if e == 0 {
            return Ok(LaurentSeries::one(self.order() - self.shift));
        }
        let e32 = u32::try_from(e).map_err(|_| QError::InvalidArgument(format!("exponent {exponent} too large")))?;
        Ok(LaurentSeries::from_parts(base.shift * e as i64, base.body.pow(e32)))
    }

    /// Converts to a power series known through `q^order`; fails if a nonzero
    /// negative-exponent term survives or the value is not known far enough.
    pub fn to_power_series(&self, order: usize) -> Result<TruncSeries> {
        if let Some(v) = self.valuation() {
            if v < 0 {
                return Err(QError::NegativeExponentResult(v));
            }
        }
        if self.order() < order as i64 {
            return Err(QError::InsufficientPrecision { wanted: order as i64, got: self.order() });
        }
        if self.body.is_zero() {
            return Ok(TruncSeries::zero(order));
        }
        Ok(self.body.placed(self.shift as usize, order))
    }

    pub fn body(&self) -> &TruncSeries {
        &self.body
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }
}

/// Re-evaluates `f` at increasing working orders until its result is known
/// through `q^order`; quotients by series of positive valuation lose precision.
pub fn reach_order<F>(order: i64, mut f: F) -> Result<LaurentSeries>
where
    F: FnMut(i64) -> Result<LaurentSeries>,
{
    let mut work = order;
    let mut got = i64::MIN;
    for _ in 0..8 {
        let v = f(work)?;
        if v.order() >= order {
            return Ok(v.truncate(order));
        }
        got = v.order();
        work += (order - got).max(1);
    }
    Err(QError::InsufficientPrecision { wanted: order, got })
}

impl From<TruncSeries> for LaurentSeries {
    fn from(s: TruncSeries) -> Self {
        LaurentSeries::from_parts(0, s)
    }
}

impl From<&TruncSeries> for LaurentSeries {
    fn from(s: &TruncSeries) -> Self {
        LaurentSeries::from_parts(0, s.clone())
    }
}

fn combine(a: &LaurentSeries, b: &LaurentSeries, negate_b: bool) -> LaurentSeries {
    let lo = a.shift.min(b.shift);
    let hi = a.order().min(b.order());
    let order = (hi - lo) as usize;
    let pa = if a.body.is_zero() { TruncSeries::zero(order) } else { a.body.placed((a.shift - lo) as usize, order) };
    let pb = if b.body.is_zero() { TruncSeries::zero(order) } else { b.body.placed((b.shift - lo) as usize, order) };
    let body = if negate_b { &pa - &pb } else { &pa + &pb };
    LaurentSeries::from_parts(lo, body)
}

impl Add for &LaurentSeries {
    type Output = LaurentSeries;
    fn add(self, rhs: &LaurentSeries) -> LaurentSeries {
        combine(self, rhs, false)
    }
}

impl Sub for &LaurentSeries {
    type Output = LaurentSeries;
    fn sub(self, rhs: &LaurentSeries) -> LaurentSeries {
        combine(self, rhs, true)
    }
}

impl Mul for &LaurentSeries {
    type Output = LaurentSeries;
    fn mul(self, rhs: &LaurentSeries) -> LaurentSeries {
        LaurentSeries::from_parts(self.shift + rhs.shift, &self.body * &rhs.body)
    }
}

impl Neg for &LaurentSeries {
    type Output = LaurentSeries;
    fn neg(self) -> LaurentSeries {
        LaurentSeries { shift: self.shift, body: -&self.body }
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, self.terms())?;
        write!(f, " + O(q^{})", self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn geo(order: usize) -> TruncSeries {
        TruncSeries::from_ints(&vec![1; order + 1])
    }

    #[test]
    fn leading_zeros_are_absorbed_into_the_shift() {
        let s = LaurentSeries::from_parts(-3, TruncSeries::from_ints(&[0, 0, 5, 1]));
        assert_eq!(s.valuation(), Some(-1));
        assert_eq!(s.order(), 0);
        assert_eq!(s.coeff(-1).unwrap(), Coeff::from_integer(5.into()));
        assert_eq!(s.coeff(-7).unwrap(), Coeff::zero());
        assert!(s.coeff(1).is_err());
    }

    #[test]
    fn negative_power_times_its_inverse() {
        let x = LaurentSeries::from_parts(-2, geo(10));
        let y = x.invert().unwrap();
        let p = &x * &y;
        assert_eq!(p.to_power_series(10).unwrap(), TruncSeries::one(10));
    }

    #[test]
    fn addition_aligns_shifts() {
        let a = LaurentSeries::monomial(Coeff::one(), -1, 5);
        let b = LaurentSeries::from(geo(5));
        let s = &a + &b;
        assert_eq!(s.valuation(), Some(-1));
        assert_eq!(s.order(), 5);
        let back = &s - &a;
        assert_eq!(back.to_power_series(5).unwrap(), geo(5));
    }

    #[test]
    fn surviving_negative_terms_are_reported() {
        let a = LaurentSeries::monomial(Coeff::one(), -2, 5);
        assert_eq!(a.to_power_series(3), Err(QError::NegativeExponentResult(-2)));
    }

    #[test]
    fn precision_shortfall_is_reported() {
        let a = LaurentSeries::from(geo(3));
        assert!(matches!(a.to_power_series(5), Err(QError::InsufficientPrecision { .. })));
    }

    #[test]
    fn zero_keeps_its_order() {
        let z = &LaurentSeries::from(geo(4)) - &LaurentSeries::from(geo(6));
        assert!(z.is_zero());
        assert_eq!(z.order(), 4);
        assert_eq!(z.to_power_series(4).unwrap(), TruncSeries::zero(4));
    }

    #[test]
    fn integer_powers() {
        let q = LaurentSeries::monomial(Coeff::one(), 1, 10);
        let p = q.pow(-3).unwrap();
        assert_eq!(p.leading_term().unwrap().0, -3);
        let one = &p * &q.pow(3).unwrap();
        assert_eq!(one.leading_term(), Some((0, Coeff::one())));
    }
}
