//! Machine words used by the hot search paths.

use core::fmt::{Debug, Display};

use num_traits::{PrimInt, Unsigned};

/// An unsigned machine word wide enough to hold the values being searched.
pub trait Word: PrimInt + Unsigned + Debug + Display + Send + Sync + 'static {
    fn from_u32(x: u32) -> Self;
    fn from_u128(x: u128) -> Option<Self>;
    fn as_u128(self) -> u128;
}

impl Word for u64 {
    #[inline]
    fn from_u32(x: u32) -> Self {
        x as u64
    }
    #[inline]
    fn from_u128(x: u128) -> Option<Self> {
        u64::try_from(x).ok()
    }
    #[inline]
    fn as_u128(self) -> u128 {
        self as u128
    }
}

impl Word for u128 {
    #[inline]
    fn from_u32(x: u32) -> Self {
        x as u128
    }
    #[inline]
    fn from_u128(x: u128) -> Option<Self> {
        Some(x)
    }
    #[inline]
    fn as_u128(self) -> u128 {
        self
    }
}

/// All powers `base^0, base^1, …` that fit in `T`.
pub fn powers<T: Word>(base: T) -> alloc::vec::Vec<T> {
    let mut out = alloc::vec![T::one()];
    let mut p = T::one();
    while let Some(next) = p.checked_mul(&base) {
        out.push(next);
        p = next;
    }
    out
}

/// Number of base-`base` digits of `n ≥ 1`, by comparison against `powers`.
#[inline]
pub fn digit_count_with<T: Word>(powers: &[T], n: T) -> u32 {
    powers.partition_point(|&p| p <= n) as u32
}
