//! Bilateral generalized Lambert series, the S-series, Appell-Lerch sums,
//! `g₂` and the third-order mock theta functions ω and ρ.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{QError, Result};
use crate::laurent::{reach_order, LaurentSeries};
use crate::monomial::{Sign, SignedMonomial};
use crate::products::{cap_j, theta_j_laurent, ProductBuilder};
use crate::series::{Coeff, TruncSeries};

/// `Σ_n (±1)^n q^((a2·n² + b2·n)/2 + c) / (1 - σ q^(d·n + e))^power`, `n ∉ exclusions`.
///
/// The quadratic part is stored doubled so that half-integral forms such as
/// `3n(n+1)/2` are representable; `a2 + b2` must be even.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LambertSpec {
    pub alternating: bool,
    pub a2: i64,
    pub b2: i64,
    pub c: i64,
    pub denom_sign: Sign,
    pub d: i64,
    pub e: i64,
    pub power: u32,
    pub exclusions: Vec<i64>,
}

/// Extra indices evaluated beyond the window `{n : numerator exponent <= N}`.
pub const DEFAULT_PADDING: i64 = 2;

impl LambertSpec {
    /// Integer quadratic `a·n² + b·n + c`.
    #[allow(clippy::too_many_arguments)]
    pub fn new(alternating: bool, a: i64, b: i64, c: i64, denom_sign: Sign, d: i64, e: i64, power: u32) -> Self {
        LambertSpec { alternating, a2: 2 * a, b2: 2 * b, c, denom_sign, d, e, power, exclusions: Vec::new() }
    }

    pub fn excluding(mut self, n: i64) -> Self {
        if !self.exclusions.contains(&n) {
            self.exclusions.push(n);
            self.exclusions.sort_unstable();
        }
        self
    }

    pub fn numerator_exponent(&self, n: i64) -> i64 {
        (self.a2 * n * n + self.b2 * n) / 2 + self.c
    }

    pub fn validate(&self) -> Result<()> {
        if self.a2 < 1 {
            return Err(QError::InvalidArgument("Lambert sum needs a positive quadratic coefficient".into()));
        }
        if (self.a2 + self.b2) % 2 != 0 {
            return Err(QError::InvalidArgument("Lambert exponent is not integral".into()));
        }
        if !(1..=2).contains(&self.power) {
            return Err(QError::InvalidArgument(format!("denominator power {} not supported", self.power)));
        }
        if self.denom_sign == Sign::Plus {
            if self.d == 0 {
                if self.e == 0 {
                    return Err(QError::PoleAtIndex(self.window(0, 0).0));
                }
            } else if self.e % self.d == 0 {
                let n = -self.e / self.d;
                if !self.exclusions.contains(&n) {
                    return Err(QError::PoleAtIndex(n));
                }
            }
        }
        Ok(())
    }

    /// Index interval `{n : numerator exponent <= order}` widened by `padding`.
    fn window(&self, order: i64, padding: i64) -> (i64, i64) {
        let vertex = (-self.b2).div_euclid(2 * self.a2);
        let mut lo = vertex;
        let mut hi = vertex;
        if self.numerator_exponent(vertex) <= order || self.numerator_exponent(vertex + 1) <= order {
            while self.numerator_exponent(lo - 1) <= order {
                lo -= 1;
            }
            while self.numerator_exponent(hi + 1) <= order {
                hi += 1;
            }
        }
        (lo - padding, hi + padding)
    }
}

/// One summand with its denominator made into a unit:
/// `coeff · q^start / (1 - sign q^step)^power`, with `coeff` over a common factor 4.
struct Term {
    scaled: i128,
    start: i64,
    sign: Sign,
    step: i64,
}

fn normalize_term(spec: &LambertSpec, n: i64) -> Result<Term> {
    let sign = if spec.alternating { Sign::parity(n) } else { Sign::Plus };
    let x = spec.numerator_exponent(n);
    let k = spec.d * n + spec.e;
    let p = spec.power as i64;
    let s = spec.denom_sign;
    if k == 0 {
        return match s {
            Sign::Plus => Err(QError::PoleAtIndex(n)),
            // 1/(1+1)^p
            Sign::Minus => Ok(Term { scaled: sign.to_i64() as i128 * (4 >> p), start: x, sign: s, step: 0 }),
        };
    }
    if k > 0 {
        return Ok(Term { scaled: sign.to_i64() as i128 * 4, start: x, sign: s, step: k });
    }
    // (1 - s q^k)^-p = (-s)^p q^(-k p) (1 - s q^-k)^-p
    let factor = (-s).pow(p);
    Ok(Term { scaled: (sign * factor).to_i64() as i128 * 4, start: x - k * p, sign: s, step: -k })
}

/// Bilateral sum known through `q^order`, with explicit window padding.
pub fn lambert_sum_laurent_padded(spec: &LambertSpec, order: i64, padding: i64) -> Result<LaurentSeries> {
    spec.validate()?;
    let (lo_n, hi_n) = spec.window(order, padding);
    let mut terms = Vec::new();
    for n in lo_n..=hi_n {
        if spec.exclusions.contains(&n) {
            continue;
        }
        let t = normalize_term(spec, n)?;
        if t.start <= order {
            terms.push(t);
        }
    }
    let Some(lo) = terms.iter().map(|t| t.start).min() else {
        return Ok(LaurentSeries::zero(order));
    };
    let len = (order - lo + 1) as usize;
    let mut acc = vec![0i128; len];
    for t in &terms {
        let base = (t.start - lo) as usize;
        if t.step == 0 {
            acc[base] += t.scaled;
            continue;
        }
        let step = t.step as usize;
        let mut j = 0i128;
        let mut idx = base;
        let mut sgn = 1i128;
        while idx < len {
            let mult = if spec.power == 2 { j + 1 } else { 1 };
            acc[idx] += t.scaled * sgn * mult;
            if t.sign == Sign::Minus {
                sgn = -sgn;
            }
            j += 1;
            idx += step;
        }
    }
    let num: Vec<BigInt> = acc.into_iter().map(BigInt::from).collect();
    let body = TruncSeries::from_parts(len - 1, num, BigInt::from(4));
    Ok(LaurentSeries::from_parts(lo, body))
}

pub fn lambert_sum_laurent(spec: &LambertSpec, order: i64) -> Result<LaurentSeries> {
    lambert_sum_laurent_padded(spec, order, DEFAULT_PADDING)
}

/// Bilateral sum as a power series through `q^order`.
pub fn lambert_sum(spec: &LambertSpec, order: usize) -> Result<TruncSeries> {
    lambert_sum_laurent(spec, order as i64)?.to_power_series(order)
}

/// `S(sign·q^m; q^n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SSeriesSpec {
    pub sign: Sign,
    pub m: i64,
    pub n: i64,
}

/// Result of normalizing an S-series: a canonical series with `0 < m < n`,
/// or an exact constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SCanonical {
    Series(SSeriesSpec),
    Value(Coeff),
}

impl SSeriesSpec {
    pub fn new(sign: Sign, m: i64, n: i64) -> Self {
        SSeriesSpec { sign, m, n }
    }

    pub fn of(a: SignedMonomial, base: i64) -> Self {
        SSeriesSpec::new(a.sign, a.exponent, base)
    }
}

fn half() -> Coeff {
    Coeff::new(1.into(), 2.into())
}

/// Brings `S(±q^m; q^n)` into `0 < m < n` using `S(aq) = S(a) + 1` and
/// `S(q^s; q^-t) = S(q^(s+t); q^t)`, returning the integer offset separately.
pub fn s_normalize(spec: SSeriesSpec) -> Result<(SCanonical, Coeff)> {
    let SSeriesSpec { sign, mut m, mut n } = spec;
    if n == 0 {
        return Err(QError::InvalidArgument("S-series base exponent must be nonzero".into()));
    }
    if n < 0 {
        m -= n;
        n = -n;
    }
    let r = m.rem_euclid(n);
    let offset = Coeff::from_integer(BigInt::from((m - r) / n));
    let canonical = if r == 0 {
        match sign {
            Sign::Plus => return Err(QError::UndefinedS),
            Sign::Minus => SCanonical::Value(-half()),
        }
    } else if 2 * r == n {
        // S(q/a) = -S(a) with q/a = a
        SCanonical::Value(Coeff::zero())
    } else {
        SCanonical::Series(SSeriesSpec::new(sign, r, n))
    };
    Ok((canonical, offset))
}

fn s_canonical_series(spec: SSeriesSpec, order: usize) -> TruncSeries {
    let SSeriesSpec { sign, m, n } = spec;
    let (m, n) = (m as usize, n as usize);
    let mut acc = vec![0i64; order + 1];
    let mut j = 0usize;
    loop {
        let u = m + n * j;
        let v = n * (j + 1) - m;
        if u.min(v) > order {
            break;
        }
        for (e, s) in [(u, 1i64), (v, -1i64)] {
            let mut k = 1usize;
            while k * e <= order {
                let sk = if sign == Sign::Minus && k % 2 == 1 { -1 } else { 1 };
                acc[k * e] += s * sk;
                k += 1;
            }
        }
        j += 1;
    }
    TruncSeries::from_ints(&acc)
}

/// Direct evaluation of `S(±q^m; q^n)` from its defining double sum.
pub fn s_direct(spec: SSeriesSpec, order: usize) -> Result<TruncSeries> {
    let (canonical, offset) = s_normalize(spec)?;
    let s = match canonical {
        SCanonical::Series(c) => s_canonical_series(c, order),
        SCanonical::Value(v) => TruncSeries::constant(v, order),
    };
    Ok(s.add_constant(&offset))
}

/// `S(a; q^base)` for a monomial `a`.
pub fn s_value(a: SignedMonomial, base: u64, order: usize) -> Result<TruncSeries> {
    s_direct(SSeriesSpec::of(a, base as i64), order)
}

/// Numerator sum of `m(x, q^base, z)` as a Lambert spec.
pub fn appell_lerch_spec(x: SignedMonomial, base: u64, z: SignedMonomial) -> LambertSpec {
    let b = base as i64;
    LambertSpec {
        alternating: z.sign == Sign::Plus,
        a2: b,
        b2: -b + 2 * z.exponent,
        c: 0,
        denom_sign: x.sign * z.sign,
        d: b,
        e: x.exponent + z.exponent - b,
        power: 1,
        exclusions: Vec::new(),
    }
}

/// `m(x, q^base, z) = j(z; q^base)^-1 Σ_r (-1)^r q^(base·r(r-1)/2) z^r / (1 - q^(base(r-1)) x z)`.
pub fn appell_lerch_laurent(x: SignedMonomial, base: u64, z: SignedMonomial, order: i64) -> Result<LaurentSeries> {
    let spec = appell_lerch_spec(x, base, z);
    reach_order(order, |w| {
        let num = lambert_sum_laurent(&spec, w)?;
        let theta = theta_j_laurent(z, base, w);
        let inv = theta.invert().map_err(|_| QError::PoleInSpecialization)?;
        Ok(&num * &inv)
    })
}

pub fn appell_lerch(x: SignedMonomial, base: u64, z: SignedMonomial, order: usize) -> Result<TruncSeries> {
    appell_lerch_laurent(x, base, z, order as i64)?.to_power_series(order)
}

/// Numerator sum of `g₂(x, q^base)`.
pub fn g2_spec(x: SignedMonomial, base: u64) -> LambertSpec {
    let b = base as i64;
    LambertSpec {
        alternating: true,
        a2: 2 * b,
        b2: 2 * b,
        c: 0,
        denom_sign: x.sign,
        d: b,
        e: x.exponent,
        power: 1,
        exclusions: Vec::new(),
    }
}

/// `g₂(x, q^base) = J_{1,2}^-1 Σ_n (-1)^n q^(base·n(n+1)) / (1 - x q^(base·n))`.
pub fn g2_laurent(x: SignedMonomial, base: u64, order: i64) -> Result<LaurentSeries> {
    let spec = g2_spec(x, base);
    reach_order(order, |w| {
        let num = lambert_sum_laurent(&spec, w)?;
        let j12 = cap_j(base as i64, 2 * base, w.max(0) as usize).expect("J_{1,2} is a power series");
        Ok(&num * &LaurentSeries::from(j12.invert()?))
    })
}

pub fn g2(x: SignedMonomial, base: u64, order: usize) -> Result<TruncSeries> {
    g2_laurent(x, base, order as i64)?.to_power_series(order)
}

fn q_hypergeometric<F>(order: usize, mut term: F) -> TruncSeries
where
    F: FnMut(u64) -> ProductBuilder,
{
    let mut acc = TruncSeries::zero(order);
    let mut n = 0u64;
    loop {
        let shift = 2 * n * (n + 1);
        if shift as usize > order {
            break;
        }
        let body = term(n).series(order - shift as usize).expect("finite products with positive exponents");
        acc = &acc + &body.placed(shift as usize, order);
        n += 1;
    }
    acc
}

/// `ω(q) = Σ_n q^(2n(n+1)) / (q; q²)²_{n+1}`.
pub fn mock_omega(order: usize) -> TruncSeries {
    q_hypergeometric(order, |n| ProductBuilder::new().finite_poch(SignedMonomial::plus(1), 2, n + 1, -2))
}

/// `ρ(q) = Σ_n q^(2n(n+1)) (q; q²)_{n+1} / (q³; q⁶)_{n+1}`.
pub fn mock_rho(order: usize) -> TruncSeries {
    q_hypergeometric(order, |n| {
        ProductBuilder::new()
            .finite_poch(SignedMonomial::plus(1), 2, n + 1, 1)
            .finite_poch(SignedMonomial::plus(3), 6, n + 1, -1)
    })
}
