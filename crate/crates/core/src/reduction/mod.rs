//! Certified reduction of the huge bounds for `n` in the family
//! `a·gⁿ + rev(a)_g`.
//!
//! - [`precise`]: interval arithmetic with outward rounding.
//! - [`cf`]: reals given by exact recipes, and certified continued fractions.
//! - [`bd`]: the Baker–Davenport reduction for `|n₁ + n₂ε + δ| < c₁e^{−n₂c₂}`.
//! - [`dependent`]: the convergent test for multiplicatively dependent `α`.
//! - [`family`]: the end-to-end verifier for a prefix `a`.

pub mod bd;
pub mod cf;
pub mod dependent;
pub mod family;
pub mod precise;

pub use bd::{baker_davenport_reduce, precompute_reduction_pairs, ReductionOutcome, ReductionPair, ReductionProblem};
pub use cf::{continued_fraction, hp_log, ContinuedFraction, Convergent, RealSource};
pub use dependent::{dependent_case_check, dependent_case_check_with, DependentCaseParams, DependentCaseReport, Regime};
pub use family::{verify_family, Branch, FamilyConfig, FamilyOutcome, FamilyReport, FamilyVerifier};

/// Default working precision in bits.
pub const DEFAULT_PRECISION: u32 = 192;

/// Precision beyond which an undecided comparison is given up on.
pub const MAX_PRECISION: u32 = 1 << 16;

/// Evaluates `test` at `start`, `2·start`, … bits until it gives an answer;
/// `None` if even [`MAX_PRECISION`] does not decide it.
pub(crate) fn decide<T>(start: u32, mut test: impl FnMut(u32) -> Option<T>) -> Option<T> {
    let mut prec = start.max(64);
    loop {
        if let Some(v) = test(prec) {
            return Some(v);
        }
        if prec >= MAX_PRECISION {
            return None;
        }
        prec = (prec * 2).min(MAX_PRECISION);
    }
}
