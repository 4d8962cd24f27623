//! Infinite and finite q-products: Pochhammer symbols, brackets `[a]∞`,
//! theta functions `j(z; q^m)`, `J_{a,m}`, `J_m`, the P-function and the
//! overpartition generating function.
//!
//! Every product is a list of factor runs `∏ (1 - σ q^(e + step·j))^(±1)`.
//! Factors with a negative exponent are rewritten as
//! `1 - σq^k = -σ q^k (1 - σ q^-k)`, so a product evaluates to a signed
//! monomial multiplier times a genuine power series. Each remaining factor is
//! applied in place in O(N), so no product ever needs a dense multiplication
//! or an inversion.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{QError, Result};
use crate::laurent::LaurentSeries;
use crate::monomial::{Sign, SignedMonomial};
use crate::series::{Coeff, TruncSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct FactorRun {
    start: SignedMonomial,
    step: i64,
    /// `None` for an infinite product.
    count: Option<u64>,
    /// Multiplicity; negative for factors in the denominator.
    power: i32,
}

impl FactorRun {
    fn exponent(&self, j: u64) -> i64 {
        self.start.exponent + self.step * j as i64
    }

    /// Indices `j` whose exponent is `<= 0`.
    fn nonpositive_indices(&self) -> u64 {
        if self.start.exponent > 0 {
            return 0;
        }
        let n = (-self.start.exponent) / self.step + 1;
        match self.count {
            Some(c) => c.min(n as u64),
            None => n as u64,
        }
    }
}

/// A product of factor runs, evaluated lazily at a requested truncation order.
#[derive(Clone, Debug, Default)]
pub struct ProductBuilder {
    runs: Vec<FactorRun>,
}

impl ProductBuilder {
    pub fn new() -> Self {
        ProductBuilder::default()
    }

    /// Multiplies by `(a; q^step)_∞^power` (negative `power` divides).
    pub fn poch(mut self, a: SignedMonomial, step: u64, power: i32) -> Self {
        assert!(step >= 1, "pochhammer step must be positive");
        self.runs.push(FactorRun { start: a, step: step as i64, count: None, power });
        self
    }

    /// Multiplies by `(a; q^step)_k^power`.
    pub fn finite_poch(mut self, a: SignedMonomial, step: u64, k: u64, power: i32) -> Self {
        assert!(step >= 1, "pochhammer step must be positive");
        if k > 0 {
            self.runs.push(FactorRun { start: a, step: step as i64, count: Some(k), power });
        }
        self
    }

    /// Multiplies by `[a]_∞^power` with base `q^m`.
    pub fn bracket(self, a: SignedMonomial, m: u64, power: i32) -> Self {
        let conj = SignedMonomial::plus(m as i64) / a;
        self.poch(a, m, power).poch(conj, m, power)
    }

    /// Multiplies by `j(z; q^m)^power`.
    pub fn theta(self, z: SignedMonomial, m: u64, power: i32) -> Self {
        self.bracket(z, m, power).poch(SignedMonomial::plus(m as i64), m, power)
    }

    /// Multiplies by `J_{a,m}^power = j(q^a; q^m)^power`.
    pub fn cap_j(self, a: i64, m: u64, power: i32) -> Self {
        self.theta(SignedMonomial::plus(a), m, power)
    }

    /// Multiplies by `J_m^power = (q^m; q^m)_∞^power`.
    pub fn cap_jm(self, m: u64, power: i32) -> Self {
        self.poch(SignedMonomial::plus(m as i64), m, power)
    }

    /// Splits the product into a monomial multiplier and a power series known
    /// through `q^order` once the multiplier is applied.
    pub fn reduce(&self, order: i64) -> Result<BracketReduction> {
        let mut mult = SignedMonomial::ONE;
        let mut scalar = Coeff::one();
        let mut vanishes = false;
        for run in &self.runs {
            for j in 0..run.nonpositive_indices() {
                let k = run.exponent(j);
                let s = run.start.sign;
                if k == 0 {
                    match s {
                        Sign::Plus if run.power < 0 => return Err(QError::PoleInSpecialization),
                        Sign::Plus => vanishes = true,
                        Sign::Minus => {
                            let two = Coeff::from_integer(BigInt::from(2));
                            scalar *= if run.power > 0 { two.pow(run.power) } else { two.recip().pow(-run.power) };
                        }
                    }
                } else {
                    // 1 - s q^k = (-s q^k) (1 - s q^-k)
                    mult = mult * SignedMonomial::new(-s, k).pow(run.power as i64);
                }
            }
        }
        if vanishes {
            return Ok(BracketReduction::vanishing(order));
        }
        let work = order - mult.exponent;
        if work < 0 {
            return Ok(BracketReduction { multiplier: mult, reduced: TruncSeries::zero(0), known_zero: true });
        }
        let work = work as usize;
        let mut series = TruncSeries::constant(scalar, work);
        for run in &self.runs {
            let neg = run.nonpositive_indices();
            // Reflected factors (1 - s q^-k) from negative exponents.
            for j in 0..neg {
                let k = run.exponent(j);
                if k < 0 {
                    apply(&mut series, run.start.sign, (-k) as usize, run.power);
                }
            }
            let mut j = neg;
            loop {
                if run.count.is_some_and(|c| j >= c) {
                    break;
                }
                let k = run.exponent(j);
                if k as usize > work {
                    break;
                }
                apply(&mut series, run.start.sign, k as usize, run.power);
                j += 1;
            }
        }
        Ok(BracketReduction { multiplier: mult, reduced: series, known_zero: false })
    }

    pub fn laurent(&self, order: i64) -> Result<LaurentSeries> {
        Ok(self.reduce(order)?.to_laurent(order))
    }

    pub fn series(&self, order: usize) -> Result<TruncSeries> {
        self.laurent(order as i64)?.to_power_series(order)
    }
}

fn apply(series: &mut TruncSeries, sign: Sign, k: usize, power: i32) {
    if k > series.order() {
        return;
    }
    for _ in 0..power.unsigned_abs() {
        if power > 0 {
            series.mul_binomial(sign, k);
        } else {
            series.div_binomial(sign, k);
        }
    }
}

/// `multiplier · reduced`, where `reduced` is a power series with nonzero
/// constant term, or the zero series for a product containing `1 - q^0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketReduction {
    pub multiplier: SignedMonomial,
    pub reduced: TruncSeries,
    known_zero: bool,
}

impl BracketReduction {
    fn vanishing(order: i64) -> Self {
        BracketReduction {
            multiplier: SignedMonomial::ONE,
            reduced: TruncSeries::zero(order.max(0) as usize),
            known_zero: false,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.reduced.is_zero()
    }

    pub fn to_laurent(&self, order: i64) -> LaurentSeries {
        if self.known_zero {
            return LaurentSeries::zero(order);
        }
        if self.reduced.is_zero() {
            return LaurentSeries::zero(order);
        }
        let body = match self.multiplier.sign {
            Sign::Plus => self.reduced.clone(),
            Sign::Minus => -&self.reduced,
        };
        LaurentSeries::from_parts(self.multiplier.exponent, body)
    }
}

/// `(a; q^step)_∞` truncated at `q^order`.
pub fn pochhammer(a: SignedMonomial, step: u64, order: usize) -> TruncSeries {
    if a.exponent < 0 {
        panic!("pochhammer: negative exponent {} needs the Laurent form", a.exponent);
    }
    ProductBuilder::new().poch(a, step, 1).series(order).expect("nonnegative exponents give a power series")
}

/// `(a; q^step)_k`, the product of the first `k` factors.
pub fn finite_pochhammer(a: SignedMonomial, step: u64, k: u64, order: usize) -> Result<TruncSeries> {
    ProductBuilder::new().finite_poch(a, step, k, 1).series(order)
}

/// `[a]_∞ = (a, q^m/a; q^m)_∞` in reduced form.
pub fn bracket(a: SignedMonomial, m: u64, order: i64) -> BracketReduction {
    ProductBuilder::new().bracket(a, m, 1).reduce(order).expect("a bracket has no denominator")
}

/// `j(z; q^m)`; fails when a negative-exponent multiplier survives.
pub fn theta_j(z: SignedMonomial, m: u64, order: usize) -> Result<TruncSeries> {
    ProductBuilder::new().theta(z, m, 1).series(order)
}

pub fn theta_j_laurent(z: SignedMonomial, m: u64, order: i64) -> LaurentSeries {
    ProductBuilder::new().theta(z, m, 1).laurent(order).expect("a theta function has no denominator")
}

/// `J_{a,m} = j(q^a; q^m)`.
pub fn cap_j(a: i64, m: u64, order: usize) -> Result<TruncSeries> {
    theta_j(SignedMonomial::plus(a), m, order)
}

/// `J_m = (q^m; q^m)_∞`.
pub fn cap_jm(m: u64, order: usize) -> TruncSeries {
    pochhammer(SignedMonomial::plus(m as i64), m, order)
}

fn p_builder(a: SignedMonomial, b: SignedMonomial, c: SignedMonomial, base: u64) -> ProductBuilder {
    ProductBuilder::new()
        .bracket(a * b, base, 1)
        .bracket(b * c, base, 1)
        .bracket(c * a, base, 1)
        .cap_jm(base, 2)
        .bracket(a, base, -1)
        .bracket(b, base, -1)
        .bracket(c, base, -1)
        .bracket(a * b * c, base, -1)
}

/// `P(a,b,c; q^base) = [ab, bc, ca]_∞ (q^base; q^base)_∞² / [a, b, c, abc]_∞`.
pub fn p_function(a: SignedMonomial, b: SignedMonomial, c: SignedMonomial, base: u64, order: usize) -> Result<TruncSeries> {
    p_builder(a, b, c, base).series(order)
}

pub fn p_function_laurent(a: SignedMonomial, b: SignedMonomial, c: SignedMonomial, base: u64, order: i64) -> Result<LaurentSeries> {
    p_builder(a, b, c, base).laurent(order)
}

/// Overpartition generating function `(-q; q)_∞ / (q; q)_∞`.
pub fn opgf(order: usize) -> TruncSeries {
    ProductBuilder::new()
        .poch(SignedMonomial::minus(1), 1, 1)
        .poch(SignedMonomial::plus(1), 1, -1)
        .series(order)
        .expect("overpartition generating function is a power series")
}

/// Convenience for tests and callers that want integer coefficients.
pub fn integer_coeffs(s: &TruncSeries) -> Option<Vec<BigInt>> {
    s.coeffs().into_iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Oracle: multiply out the factors one by one with plain i64 polynomials.
    fn naive_product(factors: &[(i64, i64)], order: usize) -> Vec<i64> {
        let mut acc = vec![0i64; order + 1];
        acc[0] = 1;
        for &(sign, e) in factors {
            let e = e as usize;
            let mut next = acc.clone();
            for n in e..=order {
                next[n] -= sign * acc[n - e];
            }
            acc = next;
        }
        acc
    }

    fn ints(s: &TruncSeries) -> Vec<i64> {
        integer_coeffs(s).unwrap().iter().map(|c| i64::try_from(c).unwrap()).collect()
    }

    #[test]
    fn euler_product_pentagonal_pattern() {
        let p = pochhammer(SignedMonomial::plus(1), 1, 12);
        let factors: Vec<_> = (1..=12).map(|k| (1, k)).collect();
        assert_eq!(ints(&p), naive_product(&factors, 12));
        assert_eq!(ints(&p), vec![1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1]);
    }

    #[test]
    fn constant_factor_cases() {
        let p = pochhammer(SignedMonomial::minus(0), 1, 6);
        assert_eq!(p.coeff(0).unwrap(), Coeff::from_integer(2.into()));
        assert!(pochhammer(SignedMonomial::plus(0), 1, 6).is_zero());
    }

    #[test]
    fn finite_pochhammer_examples() {
        let n = 20;
        assert_eq!(finite_pochhammer(SignedMonomial::plus(1), 2, 0, n).unwrap(), TruncSeries::one(n));
        let p = finite_pochhammer(SignedMonomial::plus(1), 2, 2, n).unwrap();
        assert_eq!(ints(&p), naive_product(&[(1, 1), (1, 3)], n));
        let long = finite_pochhammer(SignedMonomial::plus(1), 2, 11, n).unwrap();
        assert_eq!(long, pochhammer(SignedMonomial::plus(1), 2, n));
    }

    #[test]
    fn bracket_in_fundamental_range() {
        let b = bracket(SignedMonomial::plus(1), 6, 30);
        assert_eq!(b.multiplier, SignedMonomial::ONE);
        let direct = &pochhammer(SignedMonomial::plus(1), 6, 30) * &pochhammer(SignedMonomial::plus(5), 6, 30);
        assert_eq!(b.reduced, direct);
    }

    #[test]
    fn bracket_with_vanishing_factor() {
        assert!(bracket(SignedMonomial::plus(6), 6, 30).is_zero());
        assert!(bracket(SignedMonomial::plus(-12), 6, 30).is_zero());
    }

    #[test]
    fn bracket_quasi_periodicity() {
        // [-q^7]_{q^6} = (1 + q^-1)(-q^7;q^6)(-q^5;q^6) expanded by hand:
        // (1 + q^-1) = q^-1 (1 + q), so the value is +q^-1 [-q]_{q^6}.
        let order = 40;
        let lhs = bracket(SignedMonomial::minus(7), 6, order);
        assert_eq!(lhs.multiplier, SignedMonomial::plus(-1));
        let rhs = bracket(SignedMonomial::minus(1), 6, order + 1);
        assert_eq!(lhs.to_laurent(order), rhs.to_laurent(order + 1).shift_by(-1).truncate(order));

        let mut factors = vec![(-1, 1)];
        for j in 0..8 {
            factors.push((-1, 7 + 6 * j));
            factors.push((-1, 5 + 6 * j));
        }
        assert_eq!(ints(&lhs.reduced.truncate(30)), naive_product(&factors, 30));
    }

    #[test]
    fn j36_two_ways() {
        let n = 50;
        let a = cap_j(3, 6, n).unwrap();
        let p3 = pochhammer(SignedMonomial::plus(3), 6, n);
        let b = &(&p3 * &p3) * &cap_jm(6, n);
        assert_eq!(a, b);
        assert_eq!(theta_j(SignedMonomial::plus(3), 6, n).unwrap(), a);
    }

    #[test]
    fn jm_is_euler_product() {
        assert_eq!(cap_jm(1, 12), pochhammer(SignedMonomial::plus(1), 1, 12));
    }

    #[test]
    fn theta_with_negative_multiplier_is_rejected() {
        assert_eq!(theta_j(SignedMonomial::minus(7), 6, 10), Err(QError::NegativeExponentResult(-1)));
        let l = theta_j_laurent(SignedMonomial::minus(7), 6, 10);
        assert_eq!(l.valuation(), Some(-1));
    }

    #[test]
    fn p_function_pole() {
        // abc = -q^3 · ... chosen so that abc = q^3 with base 3
        let r = p_function(SignedMonomial::plus(1), SignedMonomial::plus(1), SignedMonomial::plus(1), 3, 10);
        assert_eq!(r, Err(QError::PoleInSpecialization));
    }

    #[test]
    fn opgf_small_coefficients() {
        let g = opgf(10);
        assert_eq!(ints(&g), vec![1, 2, 4, 8, 14, 24, 40, 64, 100, 154, 232]);
        let alt = &pochhammer(SignedMonomial::minus(1), 1, 10) * &pochhammer(SignedMonomial::plus(1), 1, 10).invert().unwrap();
        assert_eq!(g, alt);
    }

    #[test]
    fn finite_product_agrees_with_builder_division() {
        let n = 25;
        let num = pochhammer(SignedMonomial::minus(1), 2, n);
        let den = pochhammer(SignedMonomial::plus(3), 5, n);
        let via_inverse = &num * &den.invert().unwrap();
        let via_builder = ProductBuilder::new()
            .poch(SignedMonomial::minus(1), 2, 1)
            .poch(SignedMonomial::plus(3), 5, -1)
            .series(n)
            .unwrap();
        assert_eq!(via_inverse, via_builder);
    }
}
