//! Integers that are palindromes in two bases at once.
//!
//! This crate holds everything that does not need an operating system:
//!
//! - [`radix`]: digit expansions, digit reversal and palindrome predicates.
//! - [`palgen`]: mirrored-half construction and ascending enumeration of
//!   palindromes, plus the structured family `a·gⁿ + rev(a)`.
//! - [`simulcheck`]: the early-exit two-base test and the block/half-value
//!   search engine with resumable cursors.
//! - [`lindep`]: prime exponent vectors and multiplicative dependence.
//! - [`bounds`]: explicit lower bounds for linear forms in logarithms and the
//!   thresholds derived from them.
//! - [`reduction`]: certified interval arithmetic, continued fractions,
//!   Baker–Davenport reduction and the family verification pipeline.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bounds;
mod error;
pub mod lindep;
pub mod palgen;
pub mod radix;
pub mod ratio;
pub mod reduction;
pub mod simulcheck;
pub mod word;

pub use error::{Error, Result};
pub use radix::{DigitString, Radix};
pub use ratio::{PosRational, Rational};
pub use reduction::precise::PreciseReal;
