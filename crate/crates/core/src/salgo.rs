//! Expansion of `S(±q^m; q^n)` into a rational combination of P-products.
//!
//! Chain identities `P(-q^e; q^n) = 1 + 3S(-q^e) - S(-q^(3e))` are summed with
//! geometric weights; the chain closes either when `3^l·2m` reaches `0` or
//! `n/2` modulo `n` (short form), or after `s + k` steps where `3^(s+k) ≡ 3^s`
//! modulo `n` (general form).

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{QError, Result};
use crate::monomial::{Sign, SignedMonomial};
use crate::products::p_function;
use crate::series::{Coeff, TruncSeries};

/// Least `k >= 1` with `3^k ≡ 1 (mod n')`.
pub fn order3(n_prime: u64) -> Result<u64> {
    if n_prime == 0 || n_prime.is_multiple_of(3) {
        return Err(QError::InvalidModulus(n_prime));
    }
    if n_prime == 1 {
        return Ok(1);
    }
    let mut x = 3 % n_prime;
    let mut k = 1;
    while x != 1 {
        x = x * 3 % n_prime;
        k += 1;
    }
    Ok(k)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PTerm {
    pub weight: Coeff,
    pub args: [SignedMonomial; 3],
    pub base: u64,
}

/// `Σ weight · P(args; q^base) + constant`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PExpansion {
    pub terms: Vec<PTerm>,
    pub constant: Coeff,
}

impl PExpansion {
    pub fn constant(c: Coeff) -> Self {
        PExpansion { terms: Vec::new(), constant: c }
    }
}

/// Splits `n = 3^s · n'` with `3 ∤ n'`.
fn split3(mut n: u64) -> (u32, u64) {
    let mut s = 0;
    while n.is_multiple_of(3) {
        n /= 3;
        s += 1;
    }
    (s, n)
}

fn pow3(e: u32) -> BigInt {
    BigInt::from(3).pow(e)
}

/// `e` reduced into `(0, n]`; P is invariant under `a -> a q^n` in each argument.
fn reduce(e: i64, n: u64) -> i64 {
    let n = n as i64;
    let r = e.rem_euclid(n);
    if r == 0 {
        n
    } else {
        r
    }
}

/// Exponent of the `j`-th chain argument `-q^(3^(j-1)·2m)`, reduced mod `n`.
fn chain_exponent(j: u32, m: u64, n: u64) -> i64 {
    let mut x = (2 * m) % n;
    for _ in 1..j {
        x = x * 3 % n;
    }
    reduce(x as i64, n)
}

fn chain_term(weight: Coeff, j: u32, m: u64, n: u64) -> PTerm {
    let a = SignedMonomial::minus(chain_exponent(j, m, n));
    PTerm { weight, args: [a, a, a], base: n }
}

fn closing_term(sign: Sign, m: u64, n: u64) -> PTerm {
    let a = SignedMonomial::new(sign, reduce(m as i64, n));
    let c = SignedMonomial::minus(reduce(n as i64 - 2 * m as i64, n));
    PTerm { weight: Coeff::one(), args: [a, a, c], base: n }
}

fn check_defined(sign: Sign, m: u64, n: u64) -> Result<()> {
    if n == 0 || m == 0 {
        return Err(QError::InvalidArgument(format!("S(±q^{m}; q^{n}) needs positive m and n")));
    }
    if sign == Sign::Plus && m.is_multiple_of(n) {
        return Err(QError::UndefinedS);
    }
    Ok(())
}

/// Least `l` with `3^l · 4m ≡ 0 (mod n)`, if any.
pub fn short_chain_length(m: u64, n: u64) -> Option<u32> {
    let (s, _) = split3(n);
    let mut x = (4 * m) % n;
    for l in 0..=s {
        if x == 0 {
            return Some(l);
        }
        x = x * 3 % n;
    }
    None
}

/// The short chain, available when `3^l · 4m ≡ 0 (mod n)` for some `l`.
pub fn s_expand_short(sign: Sign, m: u64, n: u64) -> Result<Option<PExpansion>> {
    check_defined(sign, m, n)?;
    let Some(l) = short_chain_length(m, n) else {
        return Ok(None);
    };
    let mut terms: Vec<PTerm> = (1..=l).map(|j| chain_term(Coeff::new(1.into(), pow3(j)), j, m, n)).collect();
    terms.push(closing_term(sign, m, n));
    Ok(Some(PExpansion { terms, constant: Coeff::zero() }))
}

/// The general chain of length `s + k`.
pub fn s_expand_general(sign: Sign, m: u64, n: u64) -> Result<PExpansion> {
    check_defined(sign, m, n)?;
    let (s, n_prime) = split3(n);
    let k = order3(n_prime)? as u32;
    let denom = pow3(k) - BigInt::one();
    let mut terms: Vec<PTerm> = Vec::new();
    for j in 1..=s + k {
        // for j <= s the two sums combine: (3^(k-j) - 3^-j) / (3^k - 1) = 3^-j
        let weight = if j <= s {
            Coeff::new(1.into(), pow3(j))
        } else {
            Coeff::new(pow3(k), &denom * pow3(j))
        };
        terms.push(chain_term(weight, j, m, n));
    }
    terms.push(closing_term(sign, m, n));
    Ok(PExpansion { terms, constant: Coeff::zero() })
}

/// Expansion whose value is `2S(±q^m; q^n) + (n - 2m)/n`; the short chain is
/// preferred when it exists.
pub fn s_expand(sign: Sign, m: u64, n: u64) -> Result<PExpansion> {
    match s_expand_short(sign, m, n)? {
        Some(e) => Ok(e),
        None => s_expand_general(sign, m, n),
    }
}

pub fn evaluate(exp: &PExpansion, order: usize) -> Result<TruncSeries> {
    let mut acc = TruncSeries::constant(exp.constant.clone(), order);
    for t in &exp.terms {
        if t.weight.is_zero() {
            continue;
        }
        let [a, b, c] = t.args;
        let p = p_function(a, b, c, t.base, order)?;
        acc = &acc + &p.scale(&t.weight);
    }
    Ok(acc)
}
