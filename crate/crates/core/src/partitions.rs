//! Overpartition ranks modulo 6: a brute-force enumeration oracle, the rank
//! generating function at sixth roots of unity (in real form), residue-class
//! generating functions, their 3-dissections and an ordering scan.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{QError, Result};
use crate::lambert::{lambert_sum, LambertSpec};
use crate::monomial::Sign;
use crate::products::opgf;
use crate::series::{Coeff, TruncSeries};

/// Largest `n` for which brute-force enumeration is offered.
pub const ENUMERATION_LIMIT: u64 = 25;

/// An overpartition: parts in nonincreasing order; `overlined` lists the part
/// sizes whose first occurrence carries an overline.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Overpartition {
    pub parts: Vec<u64>,
    pub overlined: Vec<u64>,
}

impl Overpartition {
    pub fn size(&self) -> u64 {
        self.parts.iter().sum()
    }

    /// Largest part minus number of parts; 0 for the empty overpartition.
    pub fn rank(&self) -> i64 {
        self.parts.first().copied().unwrap_or(0) as i64 - self.parts.len() as i64
    }
}

impl fmt::Display for Overpartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        let mut prev = None;
        for (i, &p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let first = prev != Some(p);
            if first && self.overlined.contains(&p) {
                write!(f, "{p}\u{305}")?;
            } else {
                write!(f, "{p}")?;
            }
            prev = Some(p);
        }
        write!(f, ")")
    }
}

/// Calls `visit` on every partition of `n` with parts at most `max`, written
/// as a nonincreasing sequence.
fn for_each_partition(n: u64, max: u64, prefix: &mut Vec<u64>, visit: &mut dyn FnMut(&[u64])) {
    if n == 0 {
        visit(prefix);
        return;
    }
    for p in (1..=max.min(n)).rev() {
        prefix.push(p);
        for_each_partition(n - p, p, prefix, visit);
        prefix.pop();
    }
}

fn distinct_parts(parts: &[u64]) -> Vec<u64> {
    let mut d = parts.to_vec();
    d.dedup();
    d
}

/// Every overpartition of `n`: each partition with each subset of its
/// distinct part sizes overlined.
pub fn overpartitions(n: u64) -> Vec<Overpartition> {
    let mut out = Vec::new();
    for_each_partition(n, n, &mut Vec::new(), &mut |parts| {
        let distinct = distinct_parts(parts);
        for mask in 0u64..(1 << distinct.len()) {
            let overlined = distinct.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
            out.push(Overpartition { parts: parts.to_vec(), overlined });
        }
    });
    out
}

/// Exact counts `N̄(m, n)` for `0 <= n <= max_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankTable {
    max_n: u64,
    /// `rows[n][m + n]`
    rows: Vec<Vec<u64>>,
}

impl RankTable {
    pub fn max_n(&self) -> u64 {
        self.max_n
    }

    /// `N̄(m, n)`.
    pub fn count(&self, m: i64, n: u64) -> u64 {
        assert!(n <= self.max_n, "rank table only covers n <= {}", self.max_n);
        let idx = m + n as i64;
        if idx < 0 || idx > 2 * n as i64 {
            return 0;
        }
        self.rows[n as usize][idx as usize]
    }

    /// `p̄(n)`.
    pub fn total(&self, n: u64) -> u64 {
        self.rows[n as usize].iter().sum()
    }

    /// `N̄(s, ell, n)`: overpartitions of `n` with rank `≡ s (mod ell)`.
    pub fn count_rank_mod(&self, s: i64, ell: u64, n: u64) -> u64 {
        let ell = ell as i64;
        (-(n as i64)..=n as i64).filter(|m| (m - s).rem_euclid(ell) == 0).map(|m| self.count(m, n)).sum()
    }
}

/// Brute-force rank table. Each partition with `d` distinct part sizes stands
/// for `2^d` overpartitions of the same rank.
pub fn enumerate_ranks(max_n: u64) -> Result<RankTable> {
    if max_n > ENUMERATION_LIMIT {
        return Err(QError::InvalidArgument(format!("enumeration is capped at n = {ENUMERATION_LIMIT}")));
    }
    let mut rows = Vec::with_capacity(max_n as usize + 1);
    for n in 0..=max_n {
        let mut row = vec![0u64; 2 * n as usize + 1];
        for_each_partition(n, n, &mut Vec::new(), &mut |parts| {
            let rank = parts.first().copied().unwrap_or(0) as i64 - parts.len() as i64;
            row[(rank + n as i64) as usize] += 1 << distinct_parts(parts).len();
        });
        rows.push(row);
    }
    Ok(RankTable { max_n, rows })
}

fn int(n: i64) -> Coeff {
    Coeff::from_integer(n.into())
}

/// `R̄(ξ₆^t; q)` in real form, `t ∈ {0, 1, 2, 3}`.
pub fn rbar_spec(t: u32, order: usize) -> Result<TruncSeries> {
    let g = opgf(order);
    let sum = |sign: Sign, d: i64, power: u32, exclude_zero: bool| {
        let mut spec = LambertSpec::new(true, 1, 1, 0, sign, d, 0, power);
        if exclude_zero {
            spec = spec.excluding(0);
        }
        lambert_sum(&spec, order)
    };
    Ok(match t {
        0 => g,
        1 => (&g * &sum(Sign::Minus, 3, 1, false)?).scale(&int(2)),
        2 => &(&g * &sum(Sign::Plus, 3, 1, true)?).scale(&int(6)) + &g,
        3 => (&g * &sum(Sign::Minus, 1, 2, false)?).scale(&int(4)),
        _ => return Err(QError::InvalidArgument(format!("rank specialization index {t} not in 0..=3"))),
    })
}

/// Rows of the linear system expressing `Σ N̄(s,6,n) q^n` through `R̄(ξ₆^t)`, in units of 1/6.
const RESIDUE_WEIGHTS: [[i64; 4]; 4] = [[1, 2, 2, 1], [1, 1, -1, -1], [1, -1, -1, 1], [1, -2, 2, -1]];

/// `Σ_n N̄(s, 6, n) q^n` for `s ∈ {0, 1, 2, 3}`.
pub fn residue_gf(s: u32, order: usize) -> Result<TruncSeries> {
    let row = RESIDUE_WEIGHTS
        .get(s as usize)
        .ok_or_else(|| QError::InvalidArgument(format!("residue {s} not in 0..=3")))?;
    let mut acc = TruncSeries::zero(order);
    for (t, &w) in row.iter().enumerate() {
        acc = &acc + &rbar_spec(t as u32, order)?.scale(&int(w));
    }
    Ok(acc.scale(&Coeff::new(1.into(), 6.into())))
}

/// `r̄_s(d) = Σ_n N̄(s, 6, 3n + d) q^n`.
pub fn rank_dissection(s: u32, d: u32, order: usize) -> Result<TruncSeries> {
    if d > 2 {
        return Err(QError::InvalidArgument(format!("dissection residue {d} not in 0..=2")));
    }
    residue_gf(s, 3 * order + d as usize)?.dissect(3, d as usize)
}

/// `N̄(s, 6, n)` for `s = 0..=3` and `n <= max_n`, from generating functions.
pub fn gf_rank_counts(max_n: usize) -> Result<Vec<[BigInt; 4]>> {
    let gfs = (0..4).map(|s| residue_gf(s, max_n)).collect::<Result<Vec<_>>>()?;
    (0..=max_n)
        .map(|n| {
            let row: Vec<BigInt> = gfs
                .iter()
                .map(|g| {
                    let c = g.coeff(n)?;
                    if !c.is_integer() {
                        return Err(QError::InvalidArgument(format!("non-integral rank count at q^{n}: {c}")));
                    }
                    Ok(c.to_integer())
                })
                .collect::<Result<_>>()?;
            Ok(row.try_into().expect("four residues"))
        })
        .collect()
}

/// One relation in an ordering chain: `N̄(lhs,6,·) >= N̄(rhs,6,·)` or `=`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Relation {
    pub lhs: usize,
    pub rhs: usize,
    pub equal: bool,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = if self.equal { "=" } else { ">=" };
        write!(f, "N({},6) {op} N({},6)", self.lhs, self.rhs)
    }
}

const fn ge(lhs: usize, rhs: usize) -> Relation {
    Relation { lhs, rhs, equal: false }
}

const fn eq(lhs: usize, rhs: usize) -> Relation {
    Relation { lhs, rhs, equal: true }
}

/// Conjectured orderings for arguments `3n`, `3n+1`, `3n+2`.
pub const ORDERING_CHAINS: [[Relation; 3]; 3] =
    [[ge(0, 1), eq(1, 3), ge(3, 2)], [ge(0, 1), eq(1, 3), ge(3, 2)], [ge(1, 2), ge(2, 0), ge(0, 3)]];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub n: u64,
    /// The argument `3n + residue`.
    pub residue: u32,
    pub relation: Relation,
    pub counts: [BigInt; 4],
}

impl Violation {
    pub fn argument(&self) -> u64 {
        3 * self.n + self.residue as u64
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.counts;
        write!(
            f,
            "n={} arg={}: {} fails (N0={a}, N1={b}, N2={c}, N3={d})",
            self.n,
            self.argument(),
            self.relation
        )
    }
}

/// Checks every ordering chain for `n_lo <= n <= n_hi`, returning each violated relation.
pub fn conjecture_scan(n_lo: u64, n_hi: u64) -> Result<Vec<Violation>> {
    if n_lo > n_hi {
        return Ok(Vec::new());
    }
    let counts = gf_rank_counts(3 * n_hi as usize + 2)?;
    let mut out = Vec::new();
    for n in n_lo..=n_hi {
        for (residue, chain) in ORDERING_CHAINS.iter().enumerate() {
            let row = &counts[3 * n as usize + residue];
            for &rel in chain {
                let ok = if rel.equal { row[rel.lhs] == row[rel.rhs] } else { row[rel.lhs] >= row[rel.rhs] };
                if !ok {
                    out.push(Violation { n, residue: residue as u32, relation: rel, counts: row.clone() });
                }
            }
        }
    }
    Ok(out)
}

/// `p̄(n)` for `n <= max_n` from the product formula.
pub fn overpartition_counts(max_n: usize) -> Vec<BigInt> {
    let g = opgf(max_n);
    (0..=max_n).map(|n| g.coeff(n).map(|c| c.to_integer()).unwrap_or_else(|_| BigInt::zero())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_overpartitions() {
        assert_eq!(overpartitions(0).len(), 1);
        assert_eq!(overpartitions(0)[0].rank(), 0);
        let one = overpartitions(1);
        assert_eq!(one.len(), 2);
        assert!(one.iter().all(|o| o.rank() == 0));
        let counts: Vec<usize> = (0..8).map(|n| overpartitions(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 8, 14, 24, 40, 64]);
        for o in overpartitions(6) {
            assert_eq!(o.size(), 6);
        }
    }

    #[test]
    fn table_matches_explicit_listing() {
        let t = enumerate_ranks(10).unwrap();
        for n in 0..=10 {
            for m in -(n as i64)..=n as i64 {
                let explicit = overpartitions(n).iter().filter(|o| o.rank() == m).count() as u64;
                assert_eq!(t.count(m, n), explicit, "N({m},{n})");
            }
        }
        assert_eq!(t.count(0, 0), 1);
        assert_eq!(t.count(0, 1), 2);
        assert_eq!(t.count_rank_mod(0, 6, 0), 1);
    }

    #[test]
    fn rank_symmetry_and_totals() {
        let t = enumerate_ranks(ENUMERATION_LIMIT).unwrap();
        let pbar = overpartition_counts(ENUMERATION_LIMIT as usize);
        for n in 0..=ENUMERATION_LIMIT {
            assert_eq!(BigInt::from(t.total(n)), pbar[n as usize]);
            for m in 0..=n as i64 {
                assert_eq!(t.count(m, n), t.count(-m, n));
            }
            let by_res: u64 = (0..6).map(|s| t.count_rank_mod(s, 6, n)).sum();
            assert_eq!(by_res, t.total(n));
            for s in 1..6 {
                assert_eq!(t.count_rank_mod(s, 6, n), t.count_rank_mod(6 - s, 6, n));
            }
        }
    }

    #[test]
    fn specializations_match_oracle() {
        let n = 20;
        let t = enumerate_ranks(n as u64).unwrap();
        let r1 = rbar_spec(1, n).unwrap();
        let r3 = rbar_spec(3, n).unwrap();
        for k in 0..=n as u64 {
            let c = |s| t.count_rank_mod(s, 6, k) as i64;
            assert_eq!(r1.coeff(k as usize).unwrap(), int(c(0) + c(1) - c(2) - c(3)));
            assert_eq!(r3.coeff(k as usize).unwrap(), int(c(0) - 2 * c(1) + 2 * c(2) - c(3)));
        }
        assert_eq!(rbar_spec(0, n).unwrap(), opgf(n));
    }

    #[test]
    fn residue_series_match_oracle() {
        let n = 20;
        let t = enumerate_ranks(n as u64).unwrap();
        for s in 0..4 {
            let g = residue_gf(s, n).unwrap();
            for k in 0..=n {
                assert_eq!(g.coeff(k).unwrap(), int(t.count_rank_mod(s as i64, 6, k as u64) as i64));
            }
        }
        let recombined = (0..4).fold(TruncSeries::zero(n), |acc, s| {
            &acc + &residue_gf(s, n).unwrap().scale(&int(RESIDUE_WEIGHTS[0][s as usize]))
        });
        assert_eq!(recombined, opgf(n));
    }

    #[test]
    fn dissection_reindexes() {
        let t = enumerate_ranks(24).unwrap();
        let r = rank_dissection(2, 1, 7).unwrap();
        for k in 0..=7u64 {
            assert_eq!(r.coeff(k as usize).unwrap(), int(t.count_rank_mod(2, 6, 3 * k + 1) as i64));
        }
    }

    #[test]
    fn scan_reports_exact_counts() {
        let v = conjecture_scan(0, 3).unwrap();
        let counts = gf_rank_counts(11).unwrap();
        for x in &v {
            assert_eq!(x.counts, counts[x.argument() as usize]);
        }
        assert!(conjecture_scan(5, 4).unwrap().is_empty());
    }
}
