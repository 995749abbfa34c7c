//! Finding every `n` for which `N = a·gⁿ + rev(a)_g` is a base-`h`
//! palindrome.
//!
//! Let `n_a` be the number of base-`g` digits of `a` and `m = n − n_a`. Since
//! `h | g`, `N ≡ rev(a)_g (mod h^{m+n_a})`, so for `m > log(ga)/log h` and
//! `m ≥ 2` a base-`h` palindrome `N` starts with the digits of
//! `R = rev(rev(a)_g)_h`, which yields
//!
//! `|n·log g − k·log h + log α| < (11/9)·h^{n_a}·h^{−n}`, `α = a/R`.
//!
//! The pipeline:
//!
//! 1. `X`: the larger of [`theorem1_bound`] and [`family_n_bound`]
//!    (or a caller-supplied `X` that is at least as large);
//! 2. if `α`, `g`, `h` are multiplicatively independent, Baker–Davenport
//!    reduction with `ε = log g/log h`, `δ = log α/log h`,
//!    `c₁ = 11·h^{n_a}/(9 log h)`, `c₂ = log h`;
//! 3. otherwise the convergent test of [`dependent_case_check`];
//! 4. an exhaustive test of every `n` up to the resulting bound.
//!
//! [`theorem1_bound`]: crate::bounds::theorem1_bound
//! [`family_n_bound`]: crate::bounds::family_n_bound

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

use super::bd::{baker_davenport_reduce, ReductionOutcome, ReductionPair, ReductionProblem};
use super::cf::{continued_fraction, ContinuedFraction, RealSource};
use super::dependent::{dependent_case_check_with, DependentCaseParams, DependentCaseReport, Regime};
use super::precise::{ln_pos_rational, PreciseReal};
use super::DEFAULT_PRECISION;
use crate::bounds::{check_family_bases, family_n_bound, lemma21_threshold, theorem1_bound};
use crate::lindep::{dependence_witness, DependenceWitness};
use crate::radix::{digit_count, reverse_in_base, Radix};
use crate::ratio::PosRational;
use crate::simulcheck::is_palindrome_early_exit;
use crate::{Error, Result};

/// Tuning knobs of the verifier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyConfig {
    /// Convergents of `log g/log h` from which reduction pairs are drawn.
    pub convergent_count: usize,
    /// Floor for the dependent-case convergent test.
    pub n_floor: u64,
    /// Largest `n` tested exhaustively; beyond it the outcome is undecided.
    pub max_exhaustive_n: u64,
    pub precision_bits: u32,
    /// Use this `X` instead of the computed one; must not be smaller.
    pub x_override: Option<u64>,
    /// Use `h^{slack}` instead of `h^{n_a}` in the constants; must be `≥ n_a`.
    pub slack_override: Option<u32>,
}

impl Default for FamilyConfig {
    fn default() -> Self {
        FamilyConfig {
            convergent_count: 50,
            n_floor: 30,
            max_exhaustive_n: 10_000,
            precision_bits: DEFAULT_PRECISION,
            x_override: None,
            slack_override: None,
        }
    }
}

/// How the bound on `n` was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Branch {
    /// `h | rev(a)_g`, so `h | N` and `N` ends in the digit 0 in base `h`.
    ParityExclusion,
    /// `X` itself was small enough to test every `n ≤ X`.
    Exhaustive,
    /// `α`, `g`, `h` multiplicatively independent.
    Independent {
        pair: Option<ReductionPair>,
        new_bound: Option<u64>,
    },
    /// `α^r = g^s·h^t`.
    Dependent {
        witness: DependenceWitness,
        effective_floor: u64,
        small_q: usize,
        large_q: usize,
        unresolved: usize,
    },
}

/// Whether every admissible `n` was decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyOutcome {
    Complete,
    /// Every `n ≤ above` was tested; larger `n` could not be excluded.
    Undecided { above: u64 },
}

/// Result of [`FamilyVerifier::verify`], with its certification trail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyReport {
    pub a: BigUint,
    pub g: Radix,
    pub h: Radix,
    /// All `n` found with `a·gⁿ + rev(a)_g` a base-`h` palindrome, ascending.
    pub solutions: Vec<u64>,
    pub outcome: FamilyOutcome,
    pub x_bound: u64,
    pub n_a: u64,
    /// Smallest `n` for which the logarithmic inequality is available.
    pub n_lemma: u64,
    pub slack: u32,
    pub branch: Branch,
    /// Every `n` in `[n_a, tested_up_to]` was tested directly.
    pub tested_up_to: u64,
}

impl FamilyReport {
    /// The palindromes `a·gⁿ + rev(a)_g` for the solutions.
    pub fn values(&self) -> Vec<BigUint> {
        let rev = reverse_in_base(&self.a, self.g).expect("a is positive");
        self.solutions.iter().map(|&n| &self.a * self.g.pow(n) + &rev).collect()
    }
}

/// Verifier for one base pair, sharing the continued fraction of
/// `log g/log h` across prefixes.
#[derive(Clone, Debug)]
pub struct FamilyVerifier {
    g: Radix,
    h: Radix,
    config: FamilyConfig,
    epsilon: RealSource,
    cf: ContinuedFraction,
    /// Convergent indices whose `‖qε‖ < 2/q` is certified.
    certified: Vec<bool>,
    ln_h: PreciseReal,
}

impl FamilyVerifier {
    pub fn new(g: Radix, h: Radix, config: FamilyConfig) -> Result<Self> {
        check_family_bases(g, h)?;
        let epsilon = RealSource::log_ratio(PosRational::from_integer(g.get())?, PosRational::from_integer(h.get())?)?;
        let cf = continued_fraction(&epsilon, config.convergent_count, config.precision_bits)?;
        let certified = cf
            .convergents
            .iter()
            .map(|c| {
                // ‖qε‖ < 2/q is the ε-hypothesis for κ = q/(4X), whatever X is.
                let x = BigUint::from(1u32);
                let pair = ReductionPair::for_bound(c.p.clone(), c.q.clone(), &x);
                pair.is_ok_and(|p| {
                    let two_over_q = PosRational::new(BigUint::from(2u32), c.q.clone()).expect("q > 0");
                    let q = BigInt::from(p.q.clone());
                    super::decide(config.precision_bits, |prec| {
                        let d = epsilon.eval(prec).mul_int(&q).dist_to_nearest_int();
                        d.lt(&PreciseReal::from_pos_rational(&two_over_q, prec))
                    })
                    .unwrap_or(false)
                })
            })
            .collect();
        let ln_h = ln_pos_rational(&PosRational::from_integer(h.get())?, config.precision_bits);
        Ok(FamilyVerifier {
            g,
            h,
            config,
            epsilon,
            cf,
            certified,
            ln_h,
        })
    }

    pub fn config(&self) -> &FamilyConfig {
        &self.config
    }

    /// The continued fraction of `log g/log h` used for the pairs.
    pub fn continued_fraction(&self) -> &ContinuedFraction {
        &self.cf
    }

    /// Reduction pairs for the bound `X`: certified convergents with
    /// `q > 4X` and `κ = q/(4X)`.
    pub fn pairs_for(&self, x: u64) -> Vec<ReductionPair> {
        let x = BigUint::from(x);
        let four_x = &x * 4u32;
        self.cf
            .convergents
            .iter()
            .zip(&self.certified)
            .filter(|(c, &ok)| ok && c.q > four_x)
            .filter_map(|(c, _)| ReductionPair::for_bound(c.p.clone(), c.q.clone(), &x).ok())
            .filter(|p| p.kappa_hypotheses(&x))
            .collect()
    }

    /// `X` for prefix `a`.
    pub fn x_bound(&self, a: &BigUint) -> Result<u64> {
        let t1 = theorem1_bound(a, self.g, self.h)?.ceil_upper();
        let fam = libm::ceil(family_n_bound(a, self.g, self.h)?);
        let computed = t1
            .to_f64()
            .map(|t| t.max(fam))
            .filter(|v| *v < u64::MAX as f64)
            .ok_or_else(|| Error::BoundTooLarge("bound on n exceeds 64 bits".into()))? as u64;
        match self.config.x_override {
            Some(x) if x < computed => Err(Error::Precondition(alloc::format!(
                "X = {x} is below the proven bound {computed}"
            ))),
            Some(x) => Ok(x),
            None => Ok(computed),
        }
    }

    /// All `n ≥ n_a` with `a·gⁿ + rev(a)_g` a base-`h` palindrome.
    pub fn verify(&self, a: &BigUint) -> Result<FamilyReport> {
        let (g, h) = (self.g, self.h);
        if a.is_zero() {
            return Err(Error::NotPositive("a"));
        }
        if (a % g.get()).is_zero() {
            return Err(Error::DivisibleByBase {
                value: a.to_str_radix(10),
                base: g.get(),
            });
        }
        let n_a = digit_count(a, g);
        let slack = match self.config.slack_override {
            Some(s) if (s as u64) < n_a => {
                return Err(Error::Precondition(alloc::format!("slack {s} is below the digit count {n_a} of a")));
            }
            Some(s) => s,
            None => u32::try_from(n_a).map_err(|_| Error::BoundTooLarge("digit count of a".into()))?,
        };
        let threshold = lemma21_threshold(a, g, h)?.floor_upper();
        let m_min = (threshold.to_u64().unwrap_or(u64::MAX).saturating_add(1)).max(2);
        let n_lemma = n_a.saturating_add(m_min);
        let x = self.x_bound(a)?;
        let mut report = FamilyReport {
            a: a.clone(),
            g,
            h,
            solutions: Vec::new(),
            outcome: FamilyOutcome::Complete,
            x_bound: x,
            n_a,
            n_lemma,
            slack,
            branch: Branch::ParityExclusion,
            tested_up_to: n_a.saturating_sub(1),
        };
        let rev = reverse_in_base(a, g)?;
        if (&rev % h.get()).is_zero() {
            return Ok(report);
        }
        if x <= self.config.max_exhaustive_n {
            report.branch = Branch::Exhaustive;
            return Ok(self.finish(report, &rev, Some(x)));
        }
        let r = reverse_in_base(&rev, h)?;
        let alpha = PosRational::new(a.clone(), r)?;
        let (branch, bound) = match dependence_witness(&alpha, g, h)? {
            None => self.independent(&alpha, x, slack)?,
            Some(w) => self.dependent(w, x, slack, n_lemma)?,
        };
        report.branch = branch;
        Ok(self.finish(report, &rev, bound.map(|b| b.max(n_lemma - 1))))
    }

    fn independent(&self, alpha: &PosRational, x: u64, slack: u32) -> Result<(Branch, Option<u64>)> {
        let prec = self.config.precision_bits;
        let h = PosRational::from_integer(self.h.get())?;
        let c1_num = PosRational::new(self.h.pow(slack as u64) * 11u32, BigUint::from(9u32))?;
        let c1 = PreciseReal::from_pos_rational(&c1_num, prec)
            .checked_div(&self.ln_h)
            .expect("log h is positive");
        let problem = ReductionProblem {
            epsilon: self.epsilon.clone(),
            delta: RealSource::log_ratio(alpha.clone(), h)?,
            c1,
            c2: self.ln_h.clone(),
            x: BigUint::from(x),
            pairs: self.pairs_for(x),
            precision: prec,
        };
        Ok(match baker_davenport_reduce(&problem)? {
            ReductionOutcome::Reduced { new_bound, pair } => (
                Branch::Independent {
                    pair: Some(pair),
                    new_bound: Some(new_bound),
                },
                Some(new_bound.min(x)),
            ),
            ReductionOutcome::NoUsablePair => (
                Branch::Independent {
                    pair: None,
                    new_bound: None,
                },
                None,
            ),
        })
    }

    fn dependent(&self, w: DependenceWitness, x: u64, slack: u32, n_lemma: u64) -> Result<(Branch, Option<u64>)> {
        let params = DependentCaseParams {
            r: w.r.to_u64().ok_or(Error::NotPositive("r"))?,
            s_bound: w.s.unsigned_abs(),
            slack,
            x: BigUint::from(x),
            n_floor: self.config.n_floor.max(n_lemma),
        };
        let rep: DependentCaseReport = dependent_case_check_with(self.g, self.h, &params, self.config.precision_bits)?;
        let bound = if rep.all_eliminated() { rep.exhaustive_limit().to_u64() } else { None };
        Ok((
            Branch::Dependent {
                witness: w,
                effective_floor: rep.effective_floor,
                small_q: rep.eliminated_by(Regime::SmallQ),
                large_q: rep.eliminated_by(Regime::LargeQ),
                unresolved: rep.unresolved(),
            },
            bound,
        ))
    }

    /// Tests `n` from `n_a` to `bound` (capped at the exhaustive limit).
    fn finish(&self, mut report: FamilyReport, rev: &BigUint, bound: Option<u64>) -> FamilyReport {
        let limit = self.config.max_exhaustive_n;
        let (upto, outcome) = match bound {
            Some(b) if b <= limit => (b, FamilyOutcome::Complete),
            _ => (limit, FamilyOutcome::Undecided { above: limit }),
        };
        let (a, g, h) = (&report.a, self.g, self.h);
        let mut power = g.pow(report.n_a);
        let gb = g.as_biguint();
        for n in report.n_a..=upto {
            let value = a * &power + rev;
            if is_palindrome_early_exit(&value, h) {
                report.solutions.push(n);
            }
            power *= &gb;
        }
        report.tested_up_to = upto.max(report.tested_up_to);
        report.outcome = outcome;
        report
    }
}

/// [`FamilyVerifier::verify`] with the default configuration.
pub fn verify_family(a: &BigUint, g: Radix, h: Radix) -> Result<FamilyReport> {
    FamilyVerifier::new(g, h, FamilyConfig::default())?.verify(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(b: u64) -> Radix {
        Radix::new(b).unwrap()
    }

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn paper_examples() {
        let v = FamilyVerifier::new(r(10), r(2), FamilyConfig::default()).unwrap();
        let rep = v.verify(&big(9)).unwrap();
        assert!(rep.solutions.contains(&3), "{rep:?}");
        assert_eq!(rep.outcome, FamilyOutcome::Complete);
        let rep = v.verify(&big(74)).unwrap();
        assert!(rep.solutions.contains(&2));
        let rep = v.verify(&big(1)).unwrap();
        assert!(rep.solutions.is_empty());
        assert!(matches!(rep.branch, Branch::Dependent { unresolved: 0, .. }));
        assert!(matches!(v.verify(&big(20)), Err(Error::DivisibleByBase { .. })));
        let rep = v.verify(&big(21)).unwrap();
        assert_eq!(rep.branch, Branch::ParityExclusion);
        assert!(rep.solutions.is_empty());
    }

    #[test]
    fn x_override_must_not_undercut_the_bound() {
        let cfg = FamilyConfig {
            x_override: Some(1000),
            ..FamilyConfig::default()
        };
        let v = FamilyVerifier::new(r(10), r(2), cfg).unwrap();
        assert!(v.verify(&big(9)).is_err());
    }

    #[test]
    fn rejects_bad_bases() {
        assert!(FamilyVerifier::new(r(8), r(2), FamilyConfig::default()).is_err());
        assert!(FamilyVerifier::new(r(10), r(3), FamilyConfig::default()).is_err());
    }
}
