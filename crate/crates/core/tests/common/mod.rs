//! Property checks shared by the `properties` and `acceptance` targets.
#![allow(dead_code)]

use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestRunner};
use qlambert::dsl::{verify_script, Status};
use qlambert::lambert::{lambert_sum_laurent_padded, s_direct, LambertSpec, SSeriesSpec};
use qlambert::{Coeff, Sign, TruncSeries};

pub const SEED: u64 = 0x51_6c_61_6d;

pub fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        rng_seed: RngSeed::Fixed(SEED),
        failure_persistence: None,
        ..Config::default()
    })
}

fn coeff() -> impl Strategy<Value = Coeff> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| Coeff::new(BigInt::from(n), BigInt::from(d)))
}

pub fn series(order: usize) -> impl Strategy<Value = TruncSeries> {
    prop::collection::vec(coeff(), order + 1).prop_map(TruncSeries::from_coeffs)
}

fn unit_series(order: usize) -> impl Strategy<Value = TruncSeries> {
    (series(order), 1i64..=5, any::<bool>()).prop_map(|(s, c, neg)| {
        let c = Coeff::from_integer(BigInt::from(if neg { -c } else { c }));
        let mut v = s.coeffs();
        v[0] = c;
        TruncSeries::from_coeffs(v)
    })
}

fn sign() -> impl Strategy<Value = Sign> {
    prop_oneof![Just(Sign::Plus), Just(Sign::Minus)]
}

type Check = std::result::Result<(), String>;

fn finish<T: std::fmt::Debug>(r: std::result::Result<(), proptest::test_runner::TestError<T>>) -> Check {
    r.map_err(|e| e.to_string())
}

pub fn ring_axioms() -> Check {
    finish(runner(64).run(&(series(12), series(12), series(12)), |(a, b, c)| {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        #[allow(clippy::eq_op)]
        let zero = &a - &a;
        prop_assert!(zero.is_zero());
        prop_assert_eq!(&a * &TruncSeries::one(12), a.clone());
        Ok(())
    }))
}

pub fn dissection_recomposes() -> Check {
    finish(runner(64).run(&(series(30), 1usize..=6), |(f, m)| {
        let mut sum = TruncSeries::zero(30);
        for d in 0..m {
            let part = f.dissect(m, d).unwrap();
            sum = &sum + &part.dilate(m).shift_up(d);
        }
        prop_assert!(sum.order() + m > 30);
        prop_assert!(sum.agrees_with(&f), "{} vs {}", sum, f);
        Ok(())
    }))
}

pub fn inversion_is_involutive() -> Check {
    finish(runner(64).run(&unit_series(10), |f| {
        let g = f.invert().unwrap();
        prop_assert_eq!(&f * &g, TruncSeries::one(10));
        prop_assert_eq!(g.invert().unwrap(), f);
        Ok(())
    }))
}

pub fn dilation_composes() -> Check {
    finish(runner(64).run(&(series(40), 1usize..=5, 1usize..=5), |(f, a, b)| {
        prop_assert_eq!(f.dilate(a).dilate(b), f.dilate(a * b));
        Ok(())
    }))
}

const S_ORDER: usize = 30;

fn s(sign: Sign, m: i64, n: i64) -> Option<TruncSeries> {
    s_direct(SSeriesSpec::new(sign, m, n), S_ORDER).ok()
}

/// Special values, shift, reflection and negative base of `S`.
pub fn s_properties() -> Check {
    finish(runner(96).run(&(sign(), -12i64..=12, 1i64..=9), |(sg, m, n)| {
        let half = |c: i64| TruncSeries::constant(Coeff::new(BigInt::from(c), BigInt::from(2)), S_ORDER);
        prop_assert_eq!(s(Sign::Minus, 0, n), Some(half(-1)));
        prop_assert_eq!(s(Sign::Minus, n, n), Some(half(1)));
        let base = s(sg, m, n);
        let one = Coeff::from_integer(BigInt::from(1));
        prop_assert_eq!(s(sg, m + n, n), base.as_ref().map(|x| x.add_constant(&one)));
        prop_assert_eq!(s(sg, n - m, n), base.as_ref().map(|x| -x));
        prop_assert_eq!(s(sg, m, -n), s(sg, m + n, n));
        Ok(())
    }))
}

fn lambert_spec() -> impl Strategy<Value = LambertSpec> {
    (any::<bool>(), 1i64..=3, -6i64..=6, 0i64..=3, sign(), 1i64..=4, -5i64..=5, 1u32..=2).prop_map(
        |(alt, a, b, c, sg, d, e, p)| {
            let spec = LambertSpec::new(alt, a, b, c, sg, d, e, p);
            if sg == Sign::Plus && e % d == 0 {
                spec.excluding(-e / d)
            } else {
                spec
            }
        },
    )
}

/// Widening the summation window past its default padding changes nothing.
pub fn lambert_window_independence() -> Check {
    finish(runner(96).run(&(lambert_spec(), 1i64..=8), |(spec, extra)| {
        let a = lambert_sum_laurent_padded(&spec, 40, 2).unwrap();
        let b = lambert_sum_laurent_padded(&spec, 40, 2 + extra).unwrap();
        prop_assert_eq!(a, b);
        Ok(())
    }))
}

fn mono(sign: bool, e: i64) -> String {
    let body = match e {
        0 => "1".to_string(),
        1 => "q".to_string(),
        e if e < 0 => format!("q^({e})"),
        e => format!("q^{e}"),
    };
    if sign {
        body
    } else {
        format!("-{body}")
    }
}

/// `j(z; q^m)` vanishes only at `z = q^(mk)`.
fn theta_vanishes(sign: bool, e: i64, m: i64) -> bool {
    sign && e.rem_euclid(m) == 0
}

/// `m(x,q,z1) - m(x,q,z0)` against its theta quotient at random monomials.
pub fn appell_lerch_z_shift() -> Check {
    let gen = (3i64..=8, any::<(bool, bool, bool)>(), -6i64..=6, -6i64..=6, -6i64..=6);
    finish(runner(24).run(&gen, |(m, (sx, s0, s1), ex, e0, e1)| {
        let pairs = [(s0, e0), (s1, e1), (sx == s0, ex + e0), (sx == s1, ex + e1)];
        prop_assume!(pairs.iter().all(|&(s, e)| !theta_vanishes(s, e, m)));
        let x = mono(sx, ex);
        let (z0, z1) = (mono(s0, e0), mono(s1, e1));
        let ratio = mono(s0 == s1, e1 - e0);
        let prod = mono(sx == (s0 == s1), ex + e0 + e1);
        let xz0 = mono(sx == s0, ex + e0);
        let xz1 = mono(sx == s1, ex + e1);
        let script = format!(
            "assert AL({x}; {m}; {z1}) - AL({x}; {m}; {z0}) == ({z0}) * Jm({m})^3 * jtheta({ratio}, {m}) * jtheta({prod}, {m}) \
             / (jtheta({z0}, {m}) * jtheta({z1}, {m}) * jtheta({xz0}, {m}) * jtheta({xz1}, {m})) to 30;"
        );
        let reports = verify_script(&script).map_err(|e| TestCaseError::fail(format!("{script}: {e}")))?;
        prop_assert_eq!(&reports[0].status, &Status::Pass, "{}", script);
        Ok(())
    }))
}

pub type Property = (&'static str, fn() -> Check);

pub const PROPERTIES: &[Property] = &[
    ("series ring axioms", ring_axioms),
    ("dissection recomposition", dissection_recomposes),
    ("inversion involution", inversion_is_involutive),
    ("dilation composition", dilation_composes),
    ("S special values, shift, reflection, negative base", s_properties),
    ("Lambert window independence", lambert_window_independence),
    ("Appell-Lerch change of z", appell_lerch_z_shift),
];
