//! Soundness checks for the logarithmic bounds, the interval arithmetic,
//! the continued fractions, the reduction step and the family verifier.

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use simpal_core::bounds::{laurent_lower_bound, matveev_lower_bound, solve_log_majorant, LaurentInstance, LogPower, MatveevInstance};
use simpal_core::lindep::rationals_independent;
use simpal_core::radix::is_palindrome;
use simpal_core::reduction::bd::reduced_bound;
use simpal_core::reduction::cf::{approximation_error, convergent_law_holds};
use simpal_core::reduction::{
    baker_davenport_reduce, continued_fraction, hp_log, precompute_reduction_pairs, Branch, FamilyConfig, FamilyOutcome, FamilyVerifier, RealSource,
    ReductionOutcome, ReductionProblem,
};
use simpal_core::{PosRational, PreciseReal, Radix, Rational};

fn r(b: u64) -> Radix {
    Radix::new(b).unwrap()
}

fn q(n: u64, d: u64) -> PosRational {
    PosRational::new(n.into(), d.into()).unwrap()
}

/// `a/b ≤ c/d` for positive denominators.
fn frac_le((a, b): &(BigInt, BigUint), (c, d): &(BigInt, BigUint)) -> bool {
    a * BigInt::from(d.clone()) <= c * BigInt::from(b.clone())
}

/// Whether `inner ⊆ outer` as closed intervals.
fn contained(inner: &PreciseReal, outer: &PreciseReal) -> bool {
    frac_le(&outer.lower_fraction(), &inner.lower_fraction()) && frac_le(&inner.upper_fraction(), &outer.upper_fraction())
}

/// Largest root of `x − A(log x)^p − B` on `x > 1`: the last sign change on
/// a fine geometric grid, refined by bisection.
fn largest_root(a: f64, b: f64, p: i32) -> f64 {
    let f = |x: f64| x - a * x.ln().powi(p) - b;
    let mut last_nonpositive = 1.0;
    let mut x = 1.0f64;
    while x < 1e13 {
        if f(x) <= 0.0 {
            last_nonpositive = x;
        }
        x *= 1.0005;
    }
    let (mut lo, mut hi) = (last_nonpositive, last_nonpositive * 1.0005);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if f(mid) <= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

#[test]
fn majorants_dominate_the_largest_root() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for i in 0..200 {
        let a = 10f64.powf(rng.gen_range(-0.5..4.0));
        let b = if i % 5 == 0 { 0.0 } else { 10f64.powf(rng.gen_range(0.0..4.0)) };
        for (power, p) in [(LogPower::Single, 1), (LogPower::Square, 2)] {
            let m = solve_log_majorant(a, b, power).unwrap();
            let root = largest_root(a, b, p);
            assert!(m >= root * (1.0 - 1e-9), "A = {a}, B = {b}, p = {p}: {m} < {root}");
            // The closed forms are loose only when log A is small.
            assert!(a < 3.0 || m <= 1e3 * root.max(3.0), "A = {a}, B = {b}, p = {p}: {m} is too loose against {root}");
        }
    }
}

#[test]
fn matveev_bounds_are_negative_logarithms() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..100 {
        let n = rng.gen_range(2..=4);
        let alphas: Vec<PosRational> = (0..n).map(|_| q(rng.gen_range(2..1000), rng.gen_range(1..50))).collect();
        let bs: Vec<BigInt> = (0..n).map(|_| BigInt::from(rng.gen_range(-1_000_000i64..1_000_000))).collect();
        if bs.iter().all(|b| b == &BigInt::from(0)) || alphas.iter().any(|a| a.is_one()) {
            continue;
        }
        let bound = matveev_lower_bound(&MatveevInstance::rational(alphas, bs)).unwrap();
        assert!(bound.log_lower_bound < 0.0 && bound.log_lower_bound.is_finite());
    }
}

#[test]
fn laurent_bounds_lie_below_the_true_gap() {
    let mut rng = StdRng::seed_from_u64(11);
    let mut checked = 0;
    while checked < 100 {
        let a1 = q(rng.gen_range(2..500), rng.gen_range(1..20));
        let a2 = q(rng.gen_range(2..500), rng.gen_range(1..20));
        if a1.is_one() || a2.is_one() || !rationals_independent(&a1, &a2).unwrap() {
            continue;
        }
        let b1: u64 = rng.gen_range(1..1_000_000);
        let b2: u64 = rng.gen_range(1..1_000_000);
        let inst = LaurentInstance::rational(a1.clone(), a2.clone(), b1.into(), b2.into());
        let bound = laurent_lower_bound(&inst).unwrap();
        assert!(bound.lower_bound() > 0.0 || bound.log_lower_bound < -700.0);
        assert!(bound.lower_bound() < 1.0);
        let gap = (hp_log(&a2, 256).mul_int(&BigInt::from(b2)) - hp_log(&a1, 256).mul_int(&BigInt::from(b1))).abs();
        let gap_lo = gap.lower_f64();
        assert!(gap_lo > 0.0, "independent logarithms cannot cancel");
        assert!(bound.log_lower_bound <= gap_lo.ln(), "{a1} {a2} {b1} {b2}");
        checked += 1;
    }
}

#[test]
fn enclosures_shrink_under_refinement() {
    let xs = [q(2, 1), q(10, 1), q(3, 7), q(1_000_003, 999_983), q(12345, 1)];
    for x in &xs {
        for prec in [64, 128, 192, 333] {
            let coarse = hp_log(x, prec);
            let fine = hp_log(x, 2 * prec);
            assert!(contained(&fine, &coarse), "ln {x} at {prec} bits");
        }
    }
    let ratio = RealSource::log_ratio(q(10, 1), q(2, 1)).unwrap();
    for prec in [96, 192, 384] {
        assert!(contained(&ratio.eval(2 * prec), &ratio.eval(prec)));
    }
    let exact = PreciseReal::from_rational(&Rational::from_decimal("2.65e15").unwrap(), 100);
    assert!(exact.is_exact());
}

#[test]
fn convergents_obey_the_approximation_law() {
    for (g, h) in [(10, 2), (6, 2), (12, 3), (7, 5), (3, 2)] {
        let x = RealSource::log_ratio(q(g, 1), q(h, 1)).unwrap();
        let cf = continued_fraction(&x, 40, 192).unwrap();
        assert_eq!(cf.len(), 40);
        let v = x.eval(cf.precision + 64);
        let mut previous = None::<PreciseReal>;
        for c in &cf.convergents {
            assert_eq!(convergent_law_holds(&v, c), Some(true), "({g},{h}) {}/{}", c.p, c.q);
            // Errors alternate in sign and decrease in size.
            let err = approximation_error(&v, c);
            if let Some(prev) = &previous {
                assert!(err.lower_f64() * prev.lower_f64() < 0.0);
                assert_eq!(err.abs().lt(&prev.abs()), Some(true));
            }
            previous = Some(err);
        }
        // Doubling the precision reproduces the same quotients.
        let again = continued_fraction(&x, 40, 2 * cf.precision).unwrap();
        assert_eq!(again.quotients, cf.quotients);
    }
}

#[test]
fn reduction_never_cuts_below_a_planted_solution() {
    let eps = RealSource::log_ratio(q(10, 1), q(2, 1)).unwrap();
    let x = BigUint::from(2_650_000_000_000_000u64);
    let pairs = precompute_reduction_pairs(&eps, &x, 50, 192).unwrap();
    assert!(!pairs.is_empty());
    let ln2 = hp_log(&q(2, 1), 192);
    let c1 = PreciseReal::from_integer(12, 192);
    let mut reduced = 0;
    for m in [3u64, 9, 17, 28, 40, 55] {
        for shift in 1..=6u32 {
            // δ = −m·ε + t with a tiny t, so that (n₁, n₂) = (0, m) solves
            // |n₁ + n₂ε + δ| = t < 12·2^{−m}.
            let prec = 400;
            let (num, den) = eps.eval(prec).mul_int(&BigInt::from(m)).lower_fraction();
            let t = Rational::new(BigInt::from(shift), BigUint::one() << 62usize).unwrap();
            let delta_num = -num * BigInt::from(t.denom().clone()) + t.numer() * BigInt::from(den.clone());
            let delta = Rational::new(delta_num, den * t.denom()).unwrap();
            let problem = ReductionProblem {
                epsilon: eps.clone(),
                delta: RealSource::Rational(delta),
                c1: c1.clone(),
                c2: ln2.clone(),
                x: x.clone(),
                pairs: pairs.clone(),
                precision: 192,
            };
            if let ReductionOutcome::Reduced { new_bound, pair } = baker_davenport_reduce(&problem).unwrap() {
                assert!(new_bound >= m, "m = {m}, shift = {shift}: bound {new_bound}");
                assert_eq!(reduced_bound(&pair, &c1, &ln2).unwrap(), new_bound);
                reduced += 1;
            }
        }
    }
    assert!(reduced > 0, "no planted instance was reduced");
}

#[test]
fn family_verifier_agrees_with_direct_testing() {
    let mut complete = 0;
    for (g, h, max_a) in [(10u64, 2u64, 300u64), (6, 2, 60), (12, 3, 60)] {
        let verifier = FamilyVerifier::new(r(g), r(h), FamilyConfig::default()).unwrap();
        for a in 1..=max_a {
            if a % g == 0 {
                continue;
            }
            let a_big = BigUint::from(a);
            let report = verifier.verify(&a_big).unwrap();
            let rev: BigUint = {
                let mut digits = Vec::new();
                let mut t = a;
                while t > 0 {
                    digits.push(t % g);
                    t /= g;
                }
                digits.iter().fold(BigUint::from(0u32), |acc, &d| acc * g + d)
            };
            let n_a = report.n_a;
            let brute: Vec<u64> = (n_a..=40)
                .filter(|&n| is_palindrome(&(&a_big * BigUint::from(g).pow(n as u32) + &rev), r(h)))
                .collect();
            let listed: Vec<u64> = report.solutions.iter().copied().filter(|&n| (n_a..=40).contains(&n)).collect();
            assert_eq!(listed, brute, "a = {a} in ({g},{h})");
            for v in report.values() {
                assert!(is_palindrome(&v, r(g)) && is_palindrome(&v, r(h)), "a = {a}: {v}");
            }
            match report.outcome {
                FamilyOutcome::Complete => complete += 1,
                FamilyOutcome::Undecided { above } => assert!(report.tested_up_to >= above),
            }
            if let Branch::Independent { new_bound: Some(b), .. } = report.branch {
                assert!(b <= report.x_bound);
            }
        }
    }
    assert!(complete > 200, "only {complete} prefixes certified");
}
