//! Acceptance criteria, one line each. Run with `cargo test --test acceptance`.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use qlambert::corpus::{self, FILES};
use qlambert::dsl::{verify, verify_at, BinOp, Builtin, Expr, ExprKind, Status};
use qlambert::lambert::{s_direct, SSeriesSpec};
use qlambert::partitions::{conjecture_scan, enumerate_ranks, gf_rank_counts, overpartition_counts, ENUMERATION_LIMIT};
use qlambert::salgo::{evaluate, s_expand};
use qlambert::{Coeff, Sign};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn corpus_passes() -> Outcome {
    let start = Instant::now();
    let mut passed = 0;
    let mut failures = Vec::new();
    for f in FILES {
        for a in f.parse().map_err(|e| format!("{}: {e}", f.name))? {
            let r = verify(&a);
            match r.status {
                Status::Pass => passed += 1,
                _ => failures.push(format!("{}: {r}", f.name)),
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    if !failures.is_empty() {
        return Err(failures.join("; "));
    }
    if passed < 30 {
        return Err(format!("only {passed} assertions"));
    }
    if secs > 300.0 {
        return Err(format!("took {secs:.1}s"));
    }
    Ok(format!("{passed} assertions in {} files, {secs:.2}s", FILES.len()))
}

fn s_algorithm_grid() -> Outcome {
    const ORDER: usize = 60;
    let mut checked = 0;
    let mut bad = Vec::new();
    for n in 2..=18u64 {
        for m in 1..n {
            for sign in [Sign::Plus, Sign::Minus] {
                let lhs = s_expand(sign, m, n).and_then(|e| evaluate(&e, ORDER));
                let rhs = s_direct(SSeriesSpec::new(sign, m as i64, n as i64), ORDER).map(|s| {
                    let c = Coeff::new(BigInt::from(n as i64 - 2 * m as i64), BigInt::from(n));
                    (&s + &s).add_constant(&c)
                });
                match (lhs, rhs) {
                    (Ok(l), Ok(r)) if l == r => checked += 1,
                    (l, r) => bad.push(format!("({sign:?}, m={m}, n={n}): {l:?} vs {r:?}")),
                }
            }
        }
    }
    if bad.is_empty() {
        Ok(format!("{checked} cases, 1 <= m < n <= 18, both signs, O(q^{})", ORDER + 1))
    } else {
        Err(format!("{} mismatches, first {}", bad.len(), bad[0]))
    }
}

fn enumeration_oracle() -> Outcome {
    let table = enumerate_ranks(ENUMERATION_LIMIT).map_err(|e| e.to_string())?;
    let gf = gf_rank_counts(ENUMERATION_LIMIT as usize).map_err(|e| e.to_string())?;
    let totals = overpartition_counts(ENUMERATION_LIMIT as usize);
    for n in 0..=ENUMERATION_LIMIT {
        if BigInt::from(table.total(n)) != totals[n as usize] {
            return Err(format!("total at n={n}"));
        }
        for s in 0..4 {
            let direct = BigInt::from(table.count_rank_mod(s, 6, n));
            if direct != gf[n as usize][s as usize] {
                return Err(format!("N({s},6,{n}): enumerated {direct}, series {}", gf[n as usize][s as usize]));
            }
        }
    }
    Ok(format!("N(s,6,n) for s = 0..3, n <= {ENUMERATION_LIMIT}"))
}

fn dissection_closed_forms() -> Outcome {
    let mut found = 0;
    for name in ["thm_5_5", "thm_5_6", "thm_5_7"] {
        for a in corpus::file(name).unwrap().parse().map_err(|e| e.to_string())? {
            let ExprKind::Call(Builtin::Rdiss(s, d)) = a.lhs.kind else { continue };
            let r = verify_at(&a, 39);
            if r.status != Status::Pass {
                return Err(format!("(s={s}, d={d}): {r}"));
            }
            found += 1;
        }
    }
    if found == 12 {
        Ok("12 residue/progression pairs to O(q^40)".into())
    } else {
        Err(format!("found {found} closed forms, expected 12"))
    }
}

fn conjecture_range() -> Outcome {
    let v = conjecture_scan(11, 40).map_err(|e| e.to_string())?;
    if let Some(first) = v.first() {
        return Err(format!("{} violations, first {first}", v.len()));
    }
    let below = conjecture_scan(0, 10).map_err(|e| e.to_string())?;
    let args: Vec<String> = below.iter().map(|x| format!("{} ({})", x.argument(), x.relation)).collect();
    Ok(format!("no violations for 11 <= n <= 40; n <= 10 fails at arguments 3n+r = {}", if args.is_empty() { "none".into() } else { args.join(", ") }))
}

fn property_suites() -> Outcome {
    let mut failed = Vec::new();
    for (name, check) in common::PROPERTIES {
        if let Err(e) = check() {
            failed.push(format!("{name}: {e}"));
        }
    }
    if failed.is_empty() {
        Ok(format!("{} suites, seed {:#x}", common::PROPERTIES.len(), common::SEED))
    } else {
        Err(failed.join("; "))
    }
}

fn plus_monomial(e: &Expr, k: i64) -> Expr {
    let q = Expr::new(ExprKind::Q, e.span);
    let term = Expr::new(ExprKind::Pow(Box::new(q), k), e.span);
    Expr::new(ExprKind::Binary(BinOp::Add, Box::new(e.clone()), Box::new(term)), e.span)
}

fn mutation_sensitivity() -> Outcome {
    let cases = [("lemma_1_1", 0), ("cor_4_4", 3), ("hirschhorn_sellers", 7), ("eq_6_6", 12), ("thm_5_7", 25)];
    for (name, k) in cases {
        let mut a = corpus::file(name).unwrap().parse().map_err(|e| e.to_string())?.remove(0);
        a.lhs = plus_monomial(&a.lhs, k);
        let r = verify(&a);
        let one = Coeff::from_integer(BigInt::from(1));
        match &r.status {
            Status::Fail { exponent, difference } if *exponent == k && *difference == one => {}
            _ => return Err(format!("{name} + q^{k}: {r}")),
        }
    }
    Ok(format!("{} mutants caught at the perturbed exponent with difference 1", cases.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("corpus verification", corpus_passes),
        ("S-algorithm grid", s_algorithm_grid),
        ("enumeration oracle", enumeration_oracle),
        ("dissection closed forms", dissection_closed_forms),
        ("ordering conjecture scan", conjecture_range),
        ("property suites", property_suites),
        ("mutation sensitivity", mutation_sensitivity),
    ];
    let mut failed = 0;
    for (i, (label, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("[PASS] {}. {label}: {detail} ({ms} ms)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {}. {label}: {detail} ({ms} ms)", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
