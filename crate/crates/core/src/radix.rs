//! Positional digit expansions, digit reversal and palindrome predicates.
//!
//! Digits are stored least-significant first. Rendering (`Display`) is
//! most-significant first. Digit counts are always computed by exact integer
//! comparison, never through floating-point logarithms.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::{Error, Result};

/// A validated base in `2..=u32::MAX`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(try_from = "u64", into = "u32"))]
pub struct Radix(u32);

impl Radix {
    pub fn new(base: u64) -> Result<Self> {
        match u32::try_from(base) {
            Ok(b) if b >= 2 => Ok(Radix(b)),
            _ => Err(Error::InvalidBase(base)),
        }
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    pub fn as_biguint(self) -> BigUint {
        BigUint::from(self.0)
    }

    /// `self^e` as an exact integer.
    pub fn pow(self, e: u64) -> BigUint {
        num_traits::pow(self.as_biguint(), e as usize)
    }

    /// Whether `self = other^k` for some `k ≥ 2`.
    pub fn is_perfect_power_of(self, other: Radix) -> bool {
        let (mut x, b) = (self.0 as u64, other.0 as u64);
        if x <= b {
            return false;
        }
        while x % b == 0 {
            x /= b;
        }
        x == 1
    }
}

impl TryFrom<u64> for Radix {
    type Error = Error;
    fn try_from(b: u64) -> Result<Self> {
        Radix::new(b)
    }
}

impl From<Radix> for u32 {
    fn from(r: Radix) -> u32 {
        r.0
    }
}

impl fmt::Display for Radix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Digits of a non-negative integer in a fixed base, least significant first.
///
/// Always nonempty; the last digit is nonzero unless the value is zero, in
/// which case the digits are exactly `[0]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DigitString {
    base: Radix,
    digits: Vec<u32>,
}

impl DigitString {
    /// Builds a digit string from least-significant-first digits, dropping
    /// leading (most significant) zeros.
    pub fn new(base: Radix, mut digits: Vec<u32>) -> Result<Self> {
        if digits.is_empty() {
            return Err(Error::EmptyDigits);
        }
        if let Some(&digit) = digits.iter().find(|&&d| d >= base.get()) {
            return Err(Error::InvalidDigit {
                digit,
                base: base.get(),
            });
        }
        while digits.len() > 1 && digits.last() == Some(&0) {
            digits.pop();
        }
        Ok(DigitString { base, digits })
    }

    /// Builds a digit string from most-significant-first digits.
    pub fn from_msd_first(base: Radix, mut digits: Vec<u32>) -> Result<Self> {
        digits.reverse();
        Self::new(base, digits)
    }

    pub fn base(&self) -> Radix {
        self.base
    }

    /// Least-significant-first digits.
    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_palindrome(&self) -> bool {
        let d = &self.digits;
        d.iter().eq(d.iter().rev())
    }

    /// The represented integer.
    pub fn value(&self) -> BigUint {
        let b = self.base.get();
        if b <= 256 {
            let bytes: Vec<u8> = self.digits.iter().map(|&d| d as u8).collect();
            return BigUint::from_radix_le(&bytes, b).expect("digits validated");
        }
        self.digits
            .iter()
            .rev()
            .fold(BigUint::zero(), |acc, &d| acc * b + d)
    }
}

impl fmt::Display for DigitString {
    /// Most-significant digit first. Bases up to 36 use `0-9a-z`; larger bases
    /// print decimal digit values separated by `:`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.base.get() <= 36 {
            let s: String = self
                .digits
                .iter()
                .rev()
                .map(|&d| char::from_digit(d, 36).expect("digit < 36"))
                .collect();
            f.write_str(&s)
        } else {
            for (i, d) in self.digits.iter().rev().enumerate() {
                if i > 0 {
                    f.write_str(":")?;
                }
                write!(f, "{d}")?;
            }
            Ok(())
        }
    }
}

/// The base-`g` expansion of `n`.
pub fn digits(n: &BigUint, g: Radix) -> DigitString {
    let b = g.get();
    let digits = if n.is_zero() {
        alloc::vec![0]
    } else if b <= 256 {
        n.to_radix_le(b).into_iter().map(u32::from).collect()
    } else {
        let mut out = Vec::new();
        let mut x = n.clone();
        let big_b = BigUint::from(b);
        while !x.is_zero() {
            let (q, r) = x.div_rem(&big_b);
            out.push(r.to_u32().expect("remainder < base"));
            x = q;
        }
        out
    };
    DigitString { base: g, digits }
}

/// Inverse of [`digits`].
pub fn value(d: &DigitString) -> BigUint {
    d.value()
}

/// The digit-reversed companion of `a ≥ 1` in base `g`.
///
/// Not an involution: trailing zeros of `a` are lost, so `rev(120) = 21`.
pub fn reverse_in_base(a: &BigUint, g: Radix) -> Result<BigUint> {
    if a.is_zero() {
        return Err(Error::NotPositive("a"));
    }
    let mut d = digits(a, g);
    d.digits.reverse();
    Ok(d.value())
}

/// Whether `n` reads the same in both directions in base `g`.
pub fn is_palindrome(n: &BigUint, g: Radix) -> bool {
    digits(n, g).is_palindrome()
}

/// Number of base-`g` digits of `n ≥ 1` (and `1` for zero).
pub fn digit_count(n: &BigUint, g: Radix) -> u64 {
    if n.is_zero() {
        return 1;
    }
    let b = g.as_biguint();
    // Lower estimate from the bit length, then exact correction upward.
    let bits = n.bits();
    let log2_b = 64 - (g.get() as u64).leading_zeros() as u64; // ceil-ish: b < 2^log2_b
    let mut count = (bits - 1) / log2_b;
    let mut p = num_traits::pow(b.clone(), count as usize);
    while p > *n {
        p /= &b;
        count -= 1;
    }
    while p <= *n {
        p *= &b;
        count += 1;
    }
    count
}

/// Digit count for a machine word, by repeated division.
pub fn digit_count_u128(mut n: u128, g: Radix) -> u32 {
    let b = g.get() as u128;
    let mut c = 1;
    while n >= b {
        n /= b;
        c += 1;
    }
    c
}
