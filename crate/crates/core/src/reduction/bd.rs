//! Baker–Davenport reduction.
//!
//! Suppose `|n₁ + n₂ε + δ| < c₁·exp(−n₂c₂)` with integers `n₁` and
//! `0 ≤ n₂ ≤ X`. Take a denominator `q` and `κ > 1` with `X/q < 1/(2κ)`,
//! `‖qε‖ < 1/(2κX)` and `‖qδ‖ > 1/κ`. Multiplying by `q`,
//!
//! `c₁·q·exp(−n₂c₂) > ‖n₂qε + qδ‖ ≥ ‖qδ‖ − n₂‖qε‖ > 1/κ − 1/(2κ) = 1/(2κ)`,
//!
//! so `n₂ < log(2κqc₁)/c₂`.
//!
//! Pairs are formed from convergents `p/q` of `ε` with `q > 4X` and
//! `κ = q/(4X)`: then `X/q = 1/(4κ) < 1/(2κ)` and the `ε` condition reads
//! `‖qε‖ < 2/q`, which every convergent satisfies and which is nevertheless
//! certified for each pair.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

use super::cf::{continued_fraction, RealSource};
use super::decide;
use super::precise::PreciseReal;
use crate::ratio::PosRational;
use crate::{Error, Result};

/// A denominator `q` with its `κ`, satisfying the hypotheses on `ε`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionPair {
    pub p: BigInt,
    pub q: BigUint,
    pub kappa: PosRational,
}

impl ReductionPair {
    /// `κ = q/(4X)`.
    pub fn for_bound(p: BigInt, q: BigUint, x: &BigUint) -> Result<Self> {
        let kappa = PosRational::new(q.clone(), x * 4u32)?;
        Ok(ReductionPair { p, q, kappa })
    }

    /// `κ > 1` and `X/q < 1/(2κ)`, in exact arithmetic.
    pub fn kappa_hypotheses(&self, x: &BigUint) -> bool {
        let (kn, kd) = (self.kappa.numer(), self.kappa.denom());
        // X/q < kd/(2 kn)  ⇔  2·X·kn < q·kd
        kn > kd && x * kn * 2u32 < &self.q * kd
    }

    /// `‖qε‖ < 1/(2κX)`, certified with precision escalation.
    pub fn epsilon_hypothesis(&self, epsilon: &RealSource, x: &BigUint, start_prec: u32) -> bool {
        let q = BigInt::from(self.q.clone());
        // 1/(2κX) = kd / (2·kn·X)
        let num = BigInt::from(self.kappa.denom().clone());
        let den = self.kappa.numer() * x * 2u32;
        decide(start_prec, |prec| {
            let d = epsilon.eval(prec).mul_int(&q).dist_to_nearest_int();
            d.lt(&PreciseReal::from_ratio(&num, &den, prec))
        })
        .unwrap_or(false)
    }

    /// `‖qδ‖ > 1/κ`, certified with precision escalation. An undecidable
    /// comparison counts as failure.
    pub fn delta_condition(&self, delta: &RealSource, start_prec: u32) -> bool {
        let q = BigInt::from(self.q.clone());
        let inv = self.kappa.recip();
        decide(start_prec, |prec| {
            let d = delta.eval(prec).mul_int(&q).dist_to_nearest_int();
            d.gt(&PreciseReal::from_pos_rational(&inv, prec))
        })
        .unwrap_or(false)
    }
}

/// The pairs usable for `ε` and the bound `X`, taken from the first `count`
/// convergents.
pub fn precompute_reduction_pairs(epsilon: &RealSource, x: &BigUint, count: usize, prec: u32) -> Result<Vec<ReductionPair>> {
    if x.is_zero() {
        return Err(Error::NotPositive("X"));
    }
    let cf = continued_fraction(epsilon, count, prec)?;
    let four_x = x * 4u32;
    let mut out = Vec::new();
    for c in cf.convergents {
        if c.q <= four_x {
            continue;
        }
        let pair = ReductionPair::for_bound(c.p, c.q, x)?;
        if pair.kappa_hypotheses(x) && pair.epsilon_hypothesis(epsilon, x, prec) {
            out.push(pair);
        }
    }
    Ok(out)
}

/// An instance of `|n₁ + n₂ε + δ| < c₁·exp(−n₂c₂)` with `n₂ ≤ X`.
#[derive(Clone, Debug)]
pub struct ReductionProblem {
    pub epsilon: RealSource,
    pub delta: RealSource,
    pub c1: PreciseReal,
    pub c2: PreciseReal,
    pub x: BigUint,
    pub pairs: Vec<ReductionPair>,
    /// Starting precision for the `‖qδ‖` tests.
    pub precision: u32,
}

/// Result of [`baker_davenport_reduce`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReductionOutcome {
    /// `n₂ ≤ new_bound`, obtained from `pair`.
    Reduced { new_bound: u64, pair: ReductionPair },
    /// No pair has `‖qδ‖ > 1/κ`; only `n₂ ≤ X` is known.
    NoUsablePair,
}

/// `⌊log(2κqc₁)/c₂⌋`, rounded up through the enclosure.
pub fn reduced_bound(pair: &ReductionPair, c1: &PreciseReal, c2: &PreciseReal) -> Result<u64> {
    let prec = c1.precision().max(c2.precision());
    let kq2 = PreciseReal::from_pos_rational(&pair.kappa, prec).mul_int(&(BigInt::from(pair.q.clone()) * 2));
    let arg = kq2 * c1;
    let ratio = arg
        .ln()?
        .checked_div(c2)
        .ok_or_else(|| Error::Precondition("c2 must be bounded away from zero".into()))?;
    let floor = ratio.floor_upper();
    Ok(floor.to_u64().unwrap_or(if floor.sign() == num_bigint::Sign::Minus { 0 } else { u64::MAX }))
}

/// Scans the pairs in order and reduces with the first one satisfying
/// `‖qδ‖ > 1/κ`.
pub fn baker_davenport_reduce(problem: &ReductionProblem) -> Result<ReductionOutcome> {
    if problem.c1.lower_f64() <= 0.0 || problem.c2.lower_f64() <= 0.0 {
        return Err(Error::Precondition("c1 and c2 must be positive".into()));
    }
    for pair in &problem.pairs {
        if pair.delta_condition(&problem.delta, problem.precision) {
            let new_bound = reduced_bound(pair, &problem.c1, &problem.c2)?;
            return Ok(ReductionOutcome::Reduced {
                new_bound,
                pair: pair.clone(),
            });
        }
    }
    Ok(ReductionOutcome::NoUsablePair)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::Rational;
    use crate::reduction::precise::ln_pos_rational;

    fn q(n: u64, d: u64) -> PosRational {
        PosRational::new(n.into(), d.into()).unwrap()
    }

    fn paper_problem(delta: RealSource) -> ReductionProblem {
        let eps = RealSource::log_ratio(q(10, 1), q(2, 1)).unwrap();
        let x = BigUint::from(2_650_000_000_000_000u64);
        let pairs = precompute_reduction_pairs(&eps, &x, 50, 192).unwrap();
        let ln2 = ln_pos_rational(&q(2, 1), 192);
        let c1 = PreciseReal::from_integer(11 * 64, 192).checked_div(&(PreciseReal::from_integer(9, 192) * &ln2)).unwrap();
        ReductionProblem {
            epsilon: eps,
            delta,
            c1,
            c2: ln2,
            x,
            pairs,
            precision: 192,
        }
    }

    #[test]
    fn sixteen_pairs_for_the_decimal_binary_case() {
        let p = paper_problem(RealSource::Rational(Rational::from_decimal("0").unwrap()));
        assert_eq!(p.pairs.len(), 16);
        assert!(p.pairs.iter().all(|pr| pr.q > BigUint::from(10_600_000_000_000_000u64)));
        assert!((p.c1.upper_f64() - 112.86).abs() < 0.01);
    }

    #[test]
    fn zero_shift_has_no_usable_pair() {
        let p = paper_problem(RealSource::log_ratio(q(1, 1), q(2, 1)).unwrap());
        assert_eq!(baker_davenport_reduce(&p).unwrap(), ReductionOutcome::NoUsablePair);
    }

    #[test]
    fn independent_shift_reduces() {
        // a = 3: rev(3) = 3 = 11₂, rev(11₂) = 3, so α = 1 — use a = 13 instead:
        // rev(13)_10 = 31 = 11111₂, α = 13/31.
        let p = paper_problem(RealSource::log_ratio(q(13, 31), q(2, 1)).unwrap());
        match baker_davenport_reduce(&p).unwrap() {
            ReductionOutcome::Reduced { new_bound, .. } => assert!(new_bound <= 81),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn tiny_bound_admits_most_convergents() {
        let eps = RealSource::log_ratio(q(10, 1), q(2, 1)).unwrap();
        let pairs = precompute_reduction_pairs(&eps, &BigUint::from(10u32), 10, 192).unwrap();
        let cf = continued_fraction(&eps, 10, 192).unwrap();
        let expect = cf.convergents.iter().filter(|c| c.q > BigUint::from(40u32)).count();
        assert_eq!(pairs.len(), expect);
    }

    #[test]
    fn synthetic_chain() {
        // ε: a 50-digit truncation of √2 − 1 (quotients 0; 2, 2, 2, …), δ ≈ 1/3.
        let eps = RealSource::Rational(Rational::from_decimal("0.41421356237309504880168872420969807856967187537694").unwrap());
        let delta = RealSource::Rational(Rational::from_decimal("0.3333333333333333333333333333333333333333").unwrap());
        let x = BigUint::from(1000u32);
        let pairs = precompute_reduction_pairs(&eps, &x, 16, 192).unwrap();
        let one = PreciseReal::from_integer(1, 192);
        let problem = ReductionProblem {
            epsilon: eps,
            delta,
            c1: one.clone(),
            c2: one,
            x,
            pairs,
            precision: 192,
        };
        let ReductionOutcome::Reduced { new_bound, pair } = baker_davenport_reduce(&problem).unwrap() else {
            panic!("expected a reduction");
        };
        // new_bound = ⌊log(2κq)⌋, and for n₂ > new_bound: c₁q·e^{−n₂} < 1/(2κ).
        let kappa = pair.kappa.numer().to_f64().unwrap() / pair.kappa.denom().to_f64().unwrap();
        let qf = pair.q.to_f64().unwrap();
        assert_eq!(new_bound, libm::floor(libm::log(2.0 * kappa * qf)) as u64);
        for n2 in [new_bound + 1, new_bound + 2] {
            assert!(qf * libm::exp(-(n2 as f64)) < 1.0 / (2.0 * kappa));
        }
    }
}
