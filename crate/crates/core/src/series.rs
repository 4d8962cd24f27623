//! Truncated formal power series in `q` with exact rational coefficients.
//!
//! A [`TruncSeries`] knows its coefficients for exponents `0..=order` and
//! nothing beyond. Coefficients are stored as a vector of integer numerators
//! over one shared positive denominator, so the common case (integer series
//! built from theta products) never touches a gcd.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{QError, Result};
use crate::monomial::Sign;

/// Exact rational coefficient.
pub type Coeff = BigRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    order: usize,
    num: Vec<BigInt>,
    den: BigInt,
}

impl TruncSeries {
    pub fn zero(order: usize) -> Self {
        TruncSeries { order, num: vec![BigInt::zero(); order + 1], den: BigInt::one() }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Coeff::one(), order)
    }

    pub fn constant(c: Coeff, order: usize) -> Self {
        Self::monomial(c, 0, order)
    }

    /// `c·q^exponent`, or the zero series when the exponent lies past `order`.
    pub fn monomial(c: Coeff, exponent: usize, order: usize) -> Self {
        let mut num = vec![BigInt::zero(); order + 1];
        let den = c.denom().clone();
        if exponent <= order {
            num[exponent] = c.numer().clone();
        }
        Self::from_parts(order, num, den)
    }

    /// Builds a series from sparse `(exponent, coefficient)` pairs; pairs past
    /// `order` are dropped and repeated exponents are summed.
    pub fn from_terms<I>(order: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (usize, Coeff)>,
    {
        let mut dense = vec![Coeff::zero(); order + 1];
        for (e, c) in terms {
            if e <= order {
                dense[e] += c;
            }
        }
        Self::from_coeffs(dense)
    }

    /// Dense constructor; the order is `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<Coeff>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least one coefficient");
        let order = coeffs.len() - 1;
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs.into_iter().map(|c| c.numer() * (&den / c.denom())).collect();
        Self::from_parts(order, num, den)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least one coefficient");
        TruncSeries {
            order: coeffs.len() - 1,
            num: coeffs.iter().map(|&c| BigInt::from(c)).collect(),
            den: BigInt::one(),
        }
    }

    pub(crate) fn from_parts(order: usize, num: Vec<BigInt>, den: BigInt) -> Self {
        debug_assert_eq!(num.len(), order + 1);
        let mut s = TruncSeries { order, num, den };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -&self.den;
            for c in &mut self.num {
                *c = -&*c;
            }
        }
        if self.den.is_one() {
            return;
        }
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                return;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if !g.is_one() {
            self.den /= &g;
            for c in &mut self.num {
                *c /= &g;
            }
        }
    }

    /// Highest exponent whose coefficient is known (inclusive).
    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient of `q^n`; reading past the truncation order is an error.
    pub fn coeff(&self, n: usize) -> Result<Coeff> {
        if n > self.order {
            return Err(QError::BeyondOrder { exponent: n as i64, order: self.order as i64 });
        }
        Ok(self.coeff_at(n))
    }

    pub(crate) fn coeff_at(&self, n: usize) -> Coeff {
        Coeff::new(self.num[n].clone(), self.den.clone())
    }

    pub fn coeffs(&self) -> Vec<Coeff> {
        (0..=self.order).map(|n| self.coeff_at(n)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    /// Smallest exponent with a nonzero coefficient, if any.
    pub fn valuation(&self) -> Option<usize> {
        self.num.iter().position(|c| !c.is_zero())
    }

    /// True when both series agree on every exponent up to the smaller order.
    pub fn agrees_with(&self, other: &TruncSeries) -> bool {
        let n = self.order.min(other.order);
        (0..=n).all(|k| &self.num[k] * &other.den == &other.num[k] * &self.den)
    }

    /// Drops every coefficient above `order`; a larger `order` is clamped to the current one.
    pub fn truncate(&self, order: usize) -> TruncSeries {
        let order = order.min(self.order);
        TruncSeries::from_parts(order, self.num[..=order].to_vec(), self.den.clone())
    }

    pub fn scale(&self, c: &Coeff) -> TruncSeries {
        if c.is_zero() {
            return TruncSeries::zero(self.order);
        }
        let num = self.num.iter().map(|x| x * c.numer()).collect();
        TruncSeries::from_parts(self.order, num, &self.den * c.denom())
    }

    pub fn add_constant(&self, c: &Coeff) -> TruncSeries {
        self + &TruncSeries::constant(c.clone(), self.order)
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn invert(&self) -> Result<TruncSeries> {
        let p0 = &self.num[0];
        if p0.is_zero() {
            return Err(QError::NonUnit);
        }
        let n = self.order;
        // With g = 1/P over the integer numerators P, write g_k = h_k / p0^(k+1):
        // h_0 = 1 and h_k = -sum_{j=1..k} P_j h_{k-j} p0^(j-1).
        let mut pow = Vec::with_capacity(n + 1);
        pow.push(BigInt::one());
        for j in 1..=n {
            let next = &pow[j - 1] * p0;
            pow.push(next);
        }
        let mut h: Vec<BigInt> = Vec::with_capacity(n + 1);
        h.push(BigInt::one());
        for k in 1..=n {
            let mut acc = BigInt::zero();
            for j in 1..=k {
                let pj = &self.num[j];
                if pj.is_zero() || h[k - j].is_zero() {
                    continue;
                }
                acc += pj * &h[k - j] * &pow[j - 1];
            }
            h.push(-acc);
        }
        // 1/f = den / P; bring everything over p0^(n+1).
        let num = (0..=n).map(|k| &h[k] * &pow[n - k] * &self.den).collect();
        Ok(TruncSeries::from_parts(n, num, &pow[n] * p0))
    }

    pub fn pow(&self, exponent: u32) -> TruncSeries {
        let mut result = TruncSeries::one(self.order);
        let mut base = self.clone();
        let mut e = exponent;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Substitutes `q -> q^k`. A series known through `q^N` becomes known
    /// through `q^(k(N+1)-1)`.
    pub fn dilate(&self, k: usize) -> TruncSeries {
        assert!(k >= 1, "dilation factor must be positive");
        let order = k * (self.order + 1) - 1;
        let mut num = vec![BigInt::zero(); order + 1];
        for (n, c) in self.num.iter().enumerate() {
            num[k * n] = c.clone();
        }
        TruncSeries { order, num, den: self.den.clone() }
    }

    /// Extracts `sum_n f[m n + d] q^n`.
    pub fn dissect(&self, m: usize, d: usize) -> Result<TruncSeries> {
        if m == 0 || d >= m {
            return Err(QError::InvalidArgument(format!("dissection residue {d} mod {m}")));
        }
        if d > self.order {
            return Err(QError::BeyondOrder { exponent: d as i64, order: self.order as i64 });
        }
        let order = (self.order - d) / m;
        let num = (0..=order).map(|n| self.num[m * n + d].clone()).collect();
        Ok(TruncSeries::from_parts(order, num, self.den.clone()))
    }

    /// Multiplies by `q^k`, keeping the absolute truncation order.
    pub fn shift_up(&self, k: usize) -> TruncSeries {
        let mut num = vec![BigInt::zero(); self.order + 1];
        for n in 0..=self.order {
            if n + k > self.order {
                break;
            }
            num[n + k] = self.num[n].clone();
        }
        TruncSeries::from_parts(self.order, num, self.den.clone())
    }

    /// In-place multiplication by `(1 - sign·q^e)`, `e >= 1`.
    pub(crate) fn mul_binomial(&mut self, sign: Sign, e: usize) {
        debug_assert!(e >= 1);
        if e > self.order {
            return;
        }
        for n in (e..=self.order).rev() {
            let (lo, hi) = self.num.split_at_mut(n);
            match sign {
                Sign::Plus => hi[0] -= &lo[n - e],
                Sign::Minus => hi[0] += &lo[n - e],
            }
        }
    }

    /// In-place division by `(1 - sign·q^e)`, `e >= 1`.
    pub(crate) fn div_binomial(&mut self, sign: Sign, e: usize) {
        debug_assert!(e >= 1);
        if e > self.order {
            return;
        }
        for n in e..=self.order {
            let (lo, hi) = self.num.split_at_mut(n);
            match sign {
                Sign::Plus => hi[0] += &lo[n - e],
                Sign::Minus => hi[0] -= &lo[n - e],
            }
        }
    }

    /// Removes the first `k` coefficients (division by `q^k` when they vanish).
    pub(crate) fn drop_leading(&self, k: usize) -> TruncSeries {
        debug_assert!(k <= self.order);
        TruncSeries::from_parts(self.order - k, self.num[k..].to_vec(), self.den.clone())
    }

    /// Places this series at exponent offset `offset` inside a series of the given order.
    pub(crate) fn placed(&self, offset: usize, order: usize) -> TruncSeries {
        let mut num = vec![BigInt::zero(); order + 1];
        for (n, c) in self.num.iter().enumerate() {
            if n + offset > order {
                break;
            }
            num[n + offset] = c.clone();
        }
        TruncSeries::from_parts(order, num, self.den.clone())
    }

    fn align(a: &TruncSeries, b: &TruncSeries, order: usize) -> (Vec<BigInt>, Vec<BigInt>, BigInt) {
        if a.den == b.den {
            return (a.num[..=order].to_vec(), b.num[..=order].to_vec(), a.den.clone());
        }
        let den = a.den.lcm(&b.den);
        let fa = &den / &a.den;
        let fb = &den / &b.den;
        let na = a.num[..=order].iter().map(|x| x * &fa).collect();
        let nb = b.num[..=order].iter().map(|x| x * &fb).collect();
        (na, nb, den)
    }
}

impl Add for &TruncSeries {
    type Output = TruncSeries;

    fn add(self, rhs: &TruncSeries) -> TruncSeries {
        let order = self.order.min(rhs.order);
        let (mut a, b, den) = TruncSeries::align(self, rhs, order);
        for (x, y) in a.iter_mut().zip(b) {
            *x += y;
        }
        TruncSeries::from_parts(order, a, den)
    }
}

impl Sub for &TruncSeries {
    type Output = TruncSeries;

    fn sub(self, rhs: &TruncSeries) -> TruncSeries {
        let order = self.order.min(rhs.order);
        let (mut a, b, den) = TruncSeries::align(self, rhs, order);
        for (x, y) in a.iter_mut().zip(b) {
            *x -= y;
        }
        TruncSeries::from_parts(order, a, den)
    }
}

impl Neg for &TruncSeries {
    type Output = TruncSeries;

    fn neg(self) -> TruncSeries {
        TruncSeries { order: self.order, num: self.num.iter().map(|x| -x).collect(), den: self.den.clone() }
    }
}

impl Mul for &TruncSeries {
    type Output = TruncSeries;

    fn mul(self, rhs: &TruncSeries) -> TruncSeries {
        let order = self.order.min(rhs.order);
        let mut acc = vec![BigInt::zero(); order + 1];
        for (i, a) in self.num[..=order].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.num[..=order - i].iter().enumerate() {
                if !b.is_zero() {
                    acc[i + j] += a * b;
                }
            }
        }
        TruncSeries::from_parts(order, acc, &self.den * &rhs.den)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for TruncSeries {
            type Output = TruncSeries;
            fn $m(self, rhs: TruncSeries) -> TruncSeries {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for TruncSeries {
    type Output = TruncSeries;
    fn neg(self) -> TruncSeries {
        -&self
    }
}

pub(crate) fn fmt_terms<I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: IntoIterator<Item = (i64, Coeff)>,
{
    let mut first = true;
    for (e, c) in terms {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let abs = c.abs();
        match (first, neg) {
            (true, true) => write!(f, "-")?,
            (true, false) => {}
            (false, true) => write!(f, " - ")?,
            (false, false) => write!(f, " + ")?,
        }
        first = false;
        let unit = abs.is_one();
        match e {
            0 => write!(f, "{abs}")?,
            _ => {
                if !unit {
                    write!(f, "{abs}*")?;
                }
                if e == 1 {
                    write!(f, "q")?;
                } else {
                    write!(f, "q^{e}")?;
                }
            }
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, (0..=self.order).map(|n| (n as i64, self.coeff_at(n))))?;
        write!(f, " + O(q^{})", self.order + 1)
    }
}
