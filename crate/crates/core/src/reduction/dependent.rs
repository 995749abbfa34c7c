//! The multiplicatively dependent case.
//!
//! With `α^r = g^s·h^t` (`r > 0`), multiplying the basic inequality
//! `|log α − k log h + n log g| < (11/9)·h^{slack}·h^{−n}` by `r` gives, for
//! `Q = rn + s` and `P = rk − t`,
//!
//! `|ε − P/Q| < C / (hⁿ·Q·log h)`, `ε = log g/log h`, `C = 11·r·h^{slack}/9`.
//!
//! Once `2C·(rn + |s|) < hⁿ·log h` (the *effective floor*), the right side is
//! below `1/(2Q²)`, so `P/Q` reduces to a convergent `p/q` of `ε` with
//! `q | Q`. Every convergent with `q ≤ rX + |s|` is then tested in two
//! regimes:
//!
//! 1. *small q*: the exponent is replaced by the floor `n₀` and `Q` by
//!    `min(r·n₀, max(q, r·n₀ − |s|, 1))`, a lower bound for `Q` capped at
//!    the value `r·n₀` used in the substitution `n = n₀`;
//! 2. *large q*: since `Q ≥ q`, the exponent is replaced by
//!    `max(n₀, ⌈(q − |s|)/r⌉)` and `Q` by `max(q, r·n₀ − |s|)`.
//!
//! If `|ε − p/q|` is at least the substituted right side the convergent is
//! eliminated. When all are, every `n ≥ n₀` with `Q ≥ 1` is excluded.
//!
//! The argument needs `Q = rn + s ≥ 1`. When `s` may be negative, the
//! window `n ≤ |s|/r` (where `Q ≤ 0` is possible) is reported separately and
//! has to be tested directly.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use super::cf::{approximation_error, continued_fraction, ContinuedFraction, Convergent, RealSource};
use super::precise::{ln_pos_rational, PreciseReal};
use super::{decide, DEFAULT_PRECISION};
use crate::lindep::DependenceWitness;
use crate::radix::{digit_count, Radix};
use crate::ratio::PosRational;
use crate::{Error, Result};

/// Parameters of the convergent test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DependentCaseParams {
    /// `r > 0` in `α^r = g^s·h^t`.
    pub r: u64,
    /// Upper bound for `|s|`.
    pub s_bound: u64,
    /// Exponent in `C = 11·r·h^{slack}/9`.
    pub slack: u32,
    /// Upper bound for `n`.
    pub x: BigUint,
    /// Smallest `n` the test has to cover.
    pub n_floor: u64,
}

/// Which substitution eliminated a convergent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    SmallQ,
    LargeQ,
}

/// Outcome for one convergent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergentVerdict {
    pub index: usize,
    pub convergent: Convergent,
    pub eliminated_by: Option<Regime>,
}

/// Full account of [`dependent_case_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DependentCaseReport {
    /// Smallest `n ≥ n_floor` from which the convergent argument applies.
    pub effective_floor: u64,
    /// Verdicts for every convergent with `q ≤ rX + |s|`, in order.
    pub verdicts: Vec<ConvergentVerdict>,
    /// Largest `n` with `Q ≥ 1` that could not be excluded:
    /// `effective_floor − 1` when all convergents are eliminated, otherwise
    /// `X`.
    pub largest_unexcluded: BigUint,
    /// `n ≥ effective_floor` for which `Q = rn + s ≤ 0` is possible
    /// (`rn ≤ |s|`), as an inclusive range.
    pub nonpositive_q_window: Option<(u64, u64)>,
}

impl DependentCaseReport {
    pub fn eliminated_by(&self, regime: Regime) -> usize {
        self.verdicts.iter().filter(|v| v.eliminated_by == Some(regime)).count()
    }

    pub fn unresolved(&self) -> usize {
        self.verdicts.iter().filter(|v| v.eliminated_by.is_none()).count()
    }

    pub fn all_eliminated(&self) -> bool {
        self.unresolved() == 0
    }

    /// Largest `n` that must be tested directly: the larger of
    /// `largest_unexcluded` and the end of the `Q ≤ 0` window.
    pub fn exhaustive_limit(&self) -> BigUint {
        let w = self.nonpositive_q_window.map_or(0, |(_, hi)| hi);
        core::cmp::max(self.largest_unexcluded.clone(), BigUint::from(w))
    }
}

struct Ctx {
    ln_c: PreciseReal,
    ln_h: PreciseReal,
    ln_ln_h: PreciseReal,
    prec: u32,
}

impl Ctx {
    fn new(h: Radix, p: &DependentCaseParams, prec: u32) -> Result<Self> {
        let ln_h = ln_pos_rational(&PosRational::from_integer(h.get())?, prec);
        let c = PosRational::new(BigUint::from(11u32) * p.r, BigUint::from(9u32))?;
        let ln_c = ln_pos_rational(&c, prec) + ln_h.mul_int(&BigInt::from(p.slack));
        let ln_ln_h = ln_h.ln()?;
        Ok(Ctx { ln_c, ln_h, ln_ln_h, prec })
    }

    fn ln_int(&self, n: &BigUint) -> Result<PreciseReal> {
        Ok(ln_pos_rational(&PosRational::from_integer(n.clone())?, self.prec))
    }

    /// `log(C / (hⁿ·Q·log h))`.
    fn ln_rhs(&self, n: &BigUint, q: &BigUint) -> Result<PreciseReal> {
        Ok(&self.ln_c - self.ln_h.mul_int(&BigInt::from(n.clone())) - self.ln_int(q)? - &self.ln_ln_h)
    }
}

/// The smallest `n ≥ n_floor` with `2C(rn + |s|) < hⁿ·log h`; as
/// `|Q| ≤ rn + |s|`, from there on the bound is below `1/(2Q²)`.
fn effective_floor(ctx: &Ctx, p: &DependentCaseParams) -> Result<u64> {
    let ln2 = ctx.ln_int(&BigUint::from(2u32))?;
    let mut n = p.n_floor.max(1);
    loop {
        let rn = p.r as u128 * n as u128;
        let lhs = &ln2 + &ctx.ln_c + ctx.ln_int(&BigUint::from(rn + p.s_bound as u128))?;
        let rhs = ctx.ln_h.mul_int(&BigInt::from(n)) + &ctx.ln_ln_h;
        if lhs.lt(&rhs) == Some(true) {
            return Ok(n);
        }
        n = n
            .checked_add(1)
            .ok_or_else(|| Error::BoundTooLarge("effective floor overflow".into()))?;
        if n > p.n_floor.saturating_add(1 << 20) {
            return Err(Error::BoundTooLarge("effective floor not reached".into()));
        }
    }
}

fn verdict(ctx: &Ctx, eps: &PreciseReal, c: &Convergent, p: &DependentCaseParams, n0: u64) -> Result<Option<Option<Regime>>> {
    // log |ε − p/q| = log |εq − p| − log q
    let err = approximation_error(eps, c).abs();
    if err.contains_zero() {
        return Ok(None);
    }
    let ln_lhs = err.ln()? - ctx.ln_int(&c.q)?;
    let r = BigUint::from(p.r);
    let s = BigUint::from(p.s_bound);
    let n0b = BigUint::from(n0);
    let rn0 = &r * &n0b;
    let q_lower = core::cmp::max(c.q.clone(), if rn0 > s { &rn0 - &s } else { BigUint::one() });

    let q1 = core::cmp::min(rn0.clone(), q_lower.clone());
    match ln_lhs.lt(&ctx.ln_rhs(&n0b, &q1)?) {
        Some(false) => return Ok(Some(Some(Regime::SmallQ))),
        Some(true) => {}
        None => return Ok(None),
    }
    let n2 = if c.q > s { Integer::div_ceil(&(&c.q - &s), &r).max(n0b) } else { n0b };
    match ln_lhs.lt(&ctx.ln_rhs(&n2, &q_lower)?) {
        Some(false) => Ok(Some(Some(Regime::LargeQ))),
        Some(true) => Ok(Some(None)),
        None => Ok(None),
    }
}

/// Runs the convergent test with explicit parameters.
pub fn dependent_case_check_with(g: Radix, h: Radix, params: &DependentCaseParams, prec: u32) -> Result<DependentCaseReport> {
    if params.r == 0 {
        return Err(Error::NotPositive("r"));
    }
    let eps_src = RealSource::log_ratio(PosRational::from_integer(g.get())?, PosRational::from_integer(h.get())?)?;
    let limit = BigUint::from(params.r) * &params.x + params.s_bound;
    // Enough convergents to pass the limit.
    let mut count = 64;
    let cf: ContinuedFraction = loop {
        let cf = continued_fraction(&eps_src, count, prec)?;
        if cf.terminated || cf.convergents.last().is_some_and(|c| c.q > limit) {
            break cf;
        }
        count *= 2;
    };
    let res = decide(prec, |bits| {
        let bits = bits.max(cf.precision);
        let run = || -> Result<Option<DependentCaseReport>> {
            let ctx = Ctx::new(h, params, bits)?;
            let n0 = effective_floor(&ctx, params)?;
            let eps = eps_src.eval(bits);
            let mut verdicts = Vec::new();
            for (index, c) in cf.convergents.iter().enumerate() {
                if c.q > limit {
                    break;
                }
                let Some(v) = verdict(&ctx, &eps, c, params, n0)? else {
                    return Ok(None);
                };
                verdicts.push(ConvergentVerdict {
                    index,
                    convergent: c.clone(),
                    eliminated_by: v,
                });
            }
            let all = verdicts.iter().all(|v| v.eliminated_by.is_some());
            let window_end = params.s_bound / params.r;
            Ok(Some(DependentCaseReport {
                effective_floor: n0,
                largest_unexcluded: if all { BigUint::from(n0 - 1) } else { params.x.clone() },
                nonpositive_q_window: (window_end >= n0).then_some((n0, window_end)),
                verdicts,
            }))
        };
        Some(run().transpose()?)
    });
    match res {
        Some(r) => r,
        None => Err(Error::Precondition("dependent case undecidable within the precision cap".into())),
    }
}

/// The convergent test for the family member `a·gⁿ + rev(a)_g` with
/// dependence witness `w`, bound `X` and floor `n_floor`. The slack is the
/// base-`g` digit count of `a` and `|s|` is taken from the witness.
pub fn dependent_case_check(
    w: &DependenceWitness,
    a: &BigUint,
    g: Radix,
    h: Radix,
    x: &BigUint,
    n_floor: u64,
) -> Result<DependentCaseReport> {
    let slack = digit_count(a, g);
    let params = DependentCaseParams {
        r: w.r.to_u64().ok_or(Error::NotPositive("r"))?,
        s_bound: w.s.unsigned_abs(),
        slack: u32::try_from(slack).map_err(|_| Error::BoundTooLarge("slack".into()))?,
        x: x.clone(),
        n_floor,
    };
    dependent_case_check_with(g, h, &params, DEFAULT_PRECISION)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(b: u64) -> Radix {
        Radix::new(b).unwrap()
    }

    fn paper() -> DependentCaseParams {
        DependentCaseParams {
            r: 1,
            s_bound: 34,
            slack: 6,
            x: BigUint::from(2_650_000_000_000_000u64),
            n_floor: 30,
        }
    }

    #[test]
    fn decimal_binary_floor() {
        let rep = dependent_case_check_with(r(10), r(2), &paper(), 192).unwrap();
        assert_eq!(rep.effective_floor, 30);
        assert_eq!(rep.largest_unexcluded, BigUint::from(29u32));
        assert_eq!(rep.verdicts.len(), 32);
        assert_eq!(rep.eliminated_by(Regime::SmallQ), 8);
        assert_eq!(rep.eliminated_by(Regime::LargeQ), 24);
        assert!(rep.verdicts[..8].iter().all(|v| v.eliminated_by == Some(Regime::SmallQ)));
        assert!(rep.verdicts.iter().all(|v| v.convergent.q < BigUint::from(2_660_000_000_000_000u64)));
        // With only |s| ≤ 34 known, n + s ≤ 0 is possible up to n = 34.
        assert_eq!(rep.nonpositive_q_window, Some((30, 34)));
        assert_eq!(rep.exhaustive_limit(), BigUint::from(34u32));
    }

    #[test]
    fn witness_entry_point() {
        let w = DependenceWitness {
            r: 1,
            s: 0,
            t: 0,
            degenerate: true,
        };
        let rep = dependent_case_check(&w, &BigUint::from(1u32), r(10), r(2), &BigUint::from(1_000_000u32), 5).unwrap();
        assert!(rep.all_eliminated());
        assert!(rep.effective_floor >= 5);
    }

    #[test]
    fn tiny_floor_is_raised() {
        let mut p = paper();
        p.n_floor = 1;
        let rep = dependent_case_check_with(r(10), r(2), &p, 192).unwrap();
        assert!(rep.effective_floor > 1);
    }
}
