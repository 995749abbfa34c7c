//! Exactly specified reals and their certified continued fractions.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use super::precise::{ln_pos_rational, PreciseReal};
use super::{decide, MAX_PRECISION};
use crate::lindep::rational_log_ratio;
use crate::ratio::{PosRational, Rational};
use crate::{Error, Result};

/// Certified enclosure of `ln x` at `bits` bits.
pub fn hp_log(x: &PosRational, bits: u32) -> PreciseReal {
    ln_pos_rational(x, bits)
}

/// A real number given by an exact recipe, so that it can be re-evaluated
/// at any precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RealSource {
    Rational(Rational),
    /// `ln(num) / ln(den)`, with `den ≠ 1`.
    LogRatio { num: PosRational, den: PosRational },
}

impl RealSource {
    /// `ln(num)/ln(den)`; collapses to an exact rational when `num` and
    /// `den` are multiplicatively dependent (e.g. `ln 4/ln 2 = 2`).
    pub fn log_ratio(num: PosRational, den: PosRational) -> Result<Self> {
        if den.is_one() {
            return Err(Error::Precondition("logarithm ratio with denominator log 1".into()));
        }
        match rational_log_ratio(&num, &den) {
            Ok(Some(q)) => Ok(RealSource::Rational(q)),
            // Irrational, or too large to factor: keep the recipe.
            Ok(None) | Err(Error::FactorizationLimit(_)) => Ok(RealSource::LogRatio { num, den }),
            Err(e) => Err(e),
        }
    }

    /// Enclosure at (at least) `prec` bits.
    pub fn eval(&self, prec: u32) -> PreciseReal {
        match self {
            RealSource::Rational(q) => PreciseReal::from_rational(q, prec),
            RealSource::LogRatio { num, den } => {
                let mut guard = 16;
                loop {
                    let n = ln_pos_rational(num, prec + guard);
                    let d = ln_pos_rational(den, prec + guard);
                    if let Some(v) = n.checked_div(&d) {
                        return v;
                    }
                    guard *= 2;
                }
            }
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, RealSource::Rational(_))
    }
}

/// A convergent `p/q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Convergent {
    pub p: BigInt,
    pub q: BigUint,
}

/// Certified partial quotients and convergents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuedFraction {
    pub quotients: Vec<BigInt>,
    pub convergents: Vec<Convergent>,
    /// The expansion ended: the input is the rational number given by the
    /// last convergent.
    pub terminated: bool,
    /// Precision at which every listed quotient was certified.
    pub precision: u32,
}

impl ContinuedFraction {
    pub fn len(&self) -> usize {
        self.quotients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quotients.is_empty()
    }
}

/// Euclid's algorithm on `num/den`, at most `limit` quotients.
fn exact_expansion(num: &BigInt, den: &BigUint, limit: usize) -> Vec<BigInt> {
    let mut out = Vec::new();
    let (mut n, mut d) = (num.clone(), BigInt::from(den.clone()));
    while !d.is_zero() && out.len() < limit {
        let (a, r) = n.div_mod_floor(&d);
        out.push(a);
        n = d;
        d = r;
    }
    out
}

fn convergents(quotients: &[BigInt]) -> Vec<Convergent> {
    let (mut p0, mut p1) = (BigInt::zero(), BigInt::one());
    let (mut q0, mut q1) = (BigInt::one(), BigInt::zero());
    quotients
        .iter()
        .map(|a| {
            let p = a * &p1 + &p0;
            let q = a * &q1 + &q0;
            (p0, p1) = (core::mem::replace(&mut p1, p.clone()), p.clone());
            (q0, q1) = (core::mem::replace(&mut q1, q.clone()), q.clone());
            Convergent {
                p,
                q: q.to_biguint().expect("denominators are positive"),
            }
        })
        .collect()
}

/// The quotients certified by a single enclosure: the common prefix of the
/// expansions of both endpoints, keeping index `i` only if neither endpoint's
/// expansion stops at `i` (the reals whose expansion continues past a fixed
/// prefix form an interval, so the enclosed value shares the prefix).
pub fn certified_quotients(x: &PreciseReal, count: usize) -> (Vec<BigInt>, bool) {
    let (ln, ld) = x.lower_fraction();
    if x.is_exact() {
        let all = exact_expansion(&ln, &ld, count + 1);
        let terminated = all.len() <= count;
        return (all.into_iter().take(count).collect(), terminated);
    }
    let (hn, hd) = x.upper_fraction();
    let lo = exact_expansion(&ln, &ld, count + 1);
    let hi = exact_expansion(&hn, &hd, count + 1);
    let mut out = Vec::new();
    for i in 0..count {
        if i + 1 >= lo.len() || i + 1 >= hi.len() || lo[i] != hi[i] {
            break;
        }
        out.push(lo[i].clone());
    }
    (out, false)
}

/// The first `count` partial quotients and convergents of `x`, certified by
/// re-evaluating `x` at doubling precision (from `start_prec`) until enough
/// quotients agree. A rational input may terminate early.
pub fn continued_fraction(x: &RealSource, count: usize, start_prec: u32) -> Result<ContinuedFraction> {
    let res = decide(start_prec, |prec| {
        let (q, terminated) = certified_quotients(&x.eval(prec), count);
        (terminated || q.len() >= count).then_some((q, terminated, prec))
    });
    let Some((quotients, terminated, precision)) = res else {
        return Err(Error::Precondition(alloc::format!(
            "could not certify {count} partial quotients within {MAX_PRECISION} bits"
        )));
    };
    Ok(ContinuedFraction {
        convergents: convergents(&quotients),
        quotients,
        terminated,
        precision,
    })
}

/// Whether `|x·q − p| < 1/q` is certified at `prec` bits.
pub fn convergent_law_holds(x: &PreciseReal, c: &Convergent) -> Option<bool> {
    let q = BigInt::from(c.q.clone());
    let err = (x.mul_int(&q) - PreciseReal::from_integer(c.p.clone(), x.precision())).abs();
    let inv_q = PreciseReal::from_ratio(&BigInt::one(), &c.q, x.precision());
    err.lt(&inv_q)
}

/// Enclosure of `x·q − p`.
pub fn approximation_error(x: &PreciseReal, c: &Convergent) -> PreciseReal {
    let q = BigInt::from(c.q.clone());
    x.mul_int(&q) - PreciseReal::from_integer(c.p.clone(), x.precision())
}
