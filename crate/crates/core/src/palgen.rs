//! Construction and enumeration of base-`g` palindromes.
//!
//! Enumeration works block by block: a block is the set of palindromes with a
//! fixed digit count `d`, parametrised by its leading `⌈d/2⌉` digits (the
//! *half-value*). Mirroring a half-value gives the palindrome, and ascending
//! half-values give ascending palindromes, so no sorting is ever needed.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;

use crate::radix::{digit_count, digits, reverse_in_base, DigitString, Radix};
use crate::ratio::PosRational;
use crate::word::{self, Word};
use crate::{Error, Result};

/// Whether a palindrome has an even or odd number of digits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of_length(digits: u32) -> Parity {
        if digits % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

fn mirrored(a: &BigUint, g: Radix, pad_zeros: u64, parity: Parity) -> BigUint {
    let mut msd_first: Vec<u32> = digits(a, g).digits().iter().rev().copied().collect();
    msd_first.extend(core::iter::repeat(0).take(pad_zeros as usize));
    let skip = match parity {
        Parity::Even => 0,
        Parity::Odd => 1,
    };
    let tail: Vec<u32> = msd_first.iter().rev().skip(skip).copied().collect();
    msd_first.extend(tail);
    DigitString::from_msd_first(g, msd_first)
        .expect("digits come from a valid expansion")
        .value()
}

/// The `2·n_a`-digit palindrome whose first half is the digits of `a`.
pub fn make_even_palindrome(a: &BigUint, g: Radix) -> Result<BigUint> {
    if a.is_zero() {
        return Err(Error::NotPositive("a"));
    }
    Ok(mirrored(a, g, 0, Parity::Even))
}

/// The `(2·n_a − 1)`-digit palindrome whose first half is the digits of `a`,
/// sharing the last digit of `a` as the middle digit.
pub fn make_odd_palindrome(a: &BigUint, g: Radix) -> Result<BigUint> {
    if a.is_zero() {
        return Err(Error::NotPositive("a"));
    }
    Ok(mirrored(a, g, 0, Parity::Odd))
}

/// The palindrome `digits(a) ++ 0^m ++ mirror`. For odd parity the middle
/// digit of the string `digits(a) ++ 0^m` is shared.
pub fn zero_padded_palindrome(a: &BigUint, g: Radix, m: u64, parity: Parity) -> Result<BigUint> {
    if a.is_zero() {
        return Err(Error::NotPositive("a"));
    }
    if a.is_multiple_of(&g.as_biguint()) {
        return Err(Error::DivisibleByBase {
            value: a.to_str_radix(10),
            base: g.get(),
        });
    }
    Ok(mirrored(a, g, m, parity))
}

/// Number of base-`g` palindromes with exactly `d ≥ 1` digits:
/// `(g − 1)·g^(⌈d/2⌉ − 1)`.
pub fn palindromes_with_length(g: Radix, d: u64) -> BigUint {
    if d == 0 {
        return BigUint::zero();
    }
    (g.as_biguint() - 1u32) * g.pow(d.div_ceil(2) - 1)
}

/// Number of base-`g` palindromes in `[1, bound]`, computed exactly.
pub fn palindrome_count_upto(g: Radix, bound: &BigUint) -> BigUint {
    if bound.is_zero() {
        return BigUint::zero();
    }
    let len = digit_count(bound, g);
    let mut total: BigUint = (1..len).map(|d| palindromes_with_length(g, d)).sum();
    let half_len = len.div_ceil(2);
    let top_half = bound / g.pow(len - half_len);
    let first_half = g.pow(half_len - 1);
    total += &top_half - &first_half;
    let parity = Parity::of_length(len as u32);
    if mirrored(&top_half, g, 0, parity) <= *bound {
        total += 1u32;
    }
    total
}

/// All palindromes of one digit length that fit in `T`.
#[derive(Clone, Debug)]
pub struct PalindromeBlock<T: Word> {
    base: T,
    length: u32,
    half_len: u32,
    first_half: T,
    end_half: Option<T>,
    shift: T,
}

impl<T: Word> PalindromeBlock<T> {
    /// The block of `length`-digit palindromes; `None` if even the smallest
    /// one does not fit in `T`.
    pub fn new(base: Radix, length: u32) -> Option<Self> {
        if length == 0 {
            return None;
        }
        let b = T::from_u32(base.get());
        let half_len = length.div_ceil(2);
        let first_half = checked_pow(b, half_len - 1)?;
        let end_half = checked_pow(b, half_len);
        let shift = checked_pow(b, length - half_len)?;
        let block = PalindromeBlock {
            base: b,
            length,
            half_len,
            first_half,
            end_half,
            shift,
        };
        block.palindrome(first_half)?;
        Some(block)
    }

    pub fn length(&self) -> u32 {
        self.length
    }

    pub fn parity(&self) -> Parity {
        Parity::of_length(self.length)
    }

    pub fn half_len(&self) -> u32 {
        self.half_len
    }

    /// Smallest half-value (`g^(⌈d/2⌉−1)`).
    pub fn first_half(&self) -> T {
        self.first_half
    }

    /// One past the largest half-value, or `None` if `g^⌈d/2⌉` overflows `T`.
    pub fn end_half(&self) -> Option<T> {
        self.end_half
    }

    /// Mirrors a half-value into the full palindrome; `None` on overflow.
    #[inline]
    pub fn palindrome(&self, half: T) -> Option<T> {
        let mut tail = if self.length % 2 == 1 {
            half / self.base
        } else {
            half
        };
        let mut low = T::zero();
        for _ in 0..self.length - self.half_len {
            low = low * self.base + tail % self.base;
            tail = tail / self.base;
        }
        half.checked_mul(&self.shift)?.checked_add(&low)
    }

    /// The half-value whose palindrome is the smallest one `≥ n`, assuming
    /// `n` has exactly `length` digits.
    pub fn half_at_or_above(&self, n: T) -> T {
        let half = n / self.shift;
        match self.palindrome(half) {
            Some(p) if p >= n => half,
            _ => half + T::one(),
        }
    }

    /// The largest half-value whose palindrome is `≤ n`, assuming `n` has
    /// exactly `length` digits.
    pub fn half_at_or_below(&self, n: T) -> T {
        let half = n / self.shift;
        match self.palindrome(half) {
            Some(p) if p <= n => half,
            _ => half - T::one(),
        }
    }
}

fn checked_pow<T: Word>(b: T, e: u32) -> Option<T> {
    let mut acc = T::one();
    for _ in 0..e {
        acc = acc.checked_mul(&b)?;
    }
    Some(acc)
}

/// Ascending stream of base-`g` palindromes in `[lo, hi]`.
#[derive(Clone, Debug)]
pub struct Palindromes<T: Word> {
    base: Radix,
    hi: T,
    block: Option<PalindromeBlock<T>>,
    next_half: T,
}

impl<T: Word> Iterator for Palindromes<T> {
    type Item = T;

    fn next(&mut self) -> Option<T> {
        loop {
            let block = self.block.as_ref()?;
            if block.end_half().is_none_or(|end| self.next_half < end) {
                let p = block.palindrome(self.next_half);
                match p {
                    Some(p) if p <= self.hi => {
                        self.next_half = self.next_half + T::one();
                        return Some(p);
                    }
                    _ => {
                        self.block = None;
                        return None;
                    }
                }
            }
            let length = block.length() + 1;
            self.block = PalindromeBlock::new(self.base, length);
            if let Some(b) = &self.block {
                self.next_half = b.first_half();
            }
        }
    }
}

/// The base-`g` palindromes in `[lo, hi]` in ascending order, produced by
/// mirroring half-values rather than scanning all integers.
pub fn iter_palindromes<T: Word>(g: Radix, lo: T, hi: T) -> Palindromes<T> {
    let lo = lo.max(T::one());
    let pows = word::powers(T::from_u32(g.get()));
    let length = word::digit_count_with(&pows, lo);
    let block = PalindromeBlock::new(g, length);
    let next_half = block
        .as_ref()
        .map(|b| b.half_at_or_above(lo))
        .unwrap_or_else(T::zero);
    Palindromes {
        base: g,
        hi,
        block: if lo > hi { None } else { block },
        next_half,
    }
}

/// The structured palindrome `N = a·gⁿ + rev(a)_g` together with the
/// quantities the base-`h` analysis derives from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyInstance {
    pub a: BigUint,
    pub g: Radix,
    pub h: Radix,
    pub n: u64,
    /// `a·gⁿ + rev(a)_g`.
    pub value: BigUint,
    /// `rev(a)_g`.
    pub reversed: BigUint,
    /// `rev(rev(a)_g)_h`.
    pub double_reversed: BigUint,
    /// Base-`g` digit count of `a`.
    pub n_a: u64,
    /// Number of zeros between the two copies of `a`: `n − n_a`.
    pub m: u64,
    /// `m + n_a − (base-h digit count of rev(rev(a)_g)_h)`; may be negative
    /// when the base-h expansion is longer than `m + n_a`.
    pub m_tilde: i64,
    /// Largest `k` with `rev(rev(a)_g)_h · h^k ≤ N`.
    pub k: u64,
    /// `a / rev(rev(a)_g)_h` in lowest terms.
    pub alpha: PosRational,
}

/// Builds the family member for prefix `a` and shift `n`.
pub fn family_instance(a: &BigUint, g: Radix, h: Radix, n: u64) -> Result<FamilyInstance> {
    if a.is_zero() {
        return Err(Error::NotPositive("a"));
    }
    if a.is_multiple_of(&g.as_biguint()) {
        return Err(Error::DivisibleByBase {
            value: a.to_str_radix(10),
            base: g.get(),
        });
    }
    let n_a = digit_count(a, g);
    if n < n_a {
        return Err(Error::Overlap { n, digits: n_a });
    }
    let reversed = reverse_in_base(a, g)?;
    let value = a * g.pow(n) + &reversed;
    let double_reversed = reverse_in_base(&reversed, h)?;
    let tilde_len = digit_count(&double_reversed, h);
    let m = n - n_a;
    let k = digit_count(&(&value / &double_reversed), h) - 1;
    let alpha = PosRational::new(a.clone(), double_reversed.clone())?;
    Ok(FamilyInstance {
        a: a.clone(),
        g,
        h,
        n,
        value,
        reversed,
        double_reversed,
        n_a,
        m,
        m_tilde: (m + n_a) as i64 - tilde_len as i64,
        k,
        alpha,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radix;
    use alloc::vec;
    use alloc::vec::Vec;
    use rand::{Rng, SeedableRng};

    fn r(b: u64) -> Radix {
        Radix::new(b).unwrap()
    }

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn even_and_odd_examples() {
        assert_eq!(make_even_palindrome(&big(12), r(10)).unwrap(), big(1221));
        assert_eq!(make_even_palindrome(&big(1), r(10)).unwrap(), big(11));
        assert_eq!(make_even_palindrome(&big(585), r(10)).unwrap(), big(585585));
        assert_eq!(make_odd_palindrome(&big(12), r(10)).unwrap(), big(121));
        assert_eq!(make_odd_palindrome(&big(123), r(10)).unwrap(), big(12321));
        assert_eq!(make_odd_palindrome(&big(31), r(10)).unwrap(), big(313));
        assert!(make_even_palindrome(&big(0), r(10)).is_err());
        assert!(make_odd_palindrome(&big(0), r(10)).is_err());
        // Trailing zeros of `a` are fine: the leading digit closes the string.
        assert_eq!(make_even_palindrome(&big(120), r(10)).unwrap(), big(120021));
    }

    #[test]
    fn zero_padded_examples() {
        let oracle = |a: &[u32], m: usize, g: u64| {
            let mut s: Vec<u32> = a.to_vec();
            s.extend(core::iter::repeat(0).take(m));
            let mut t = s.clone();
            t.reverse();
            s.extend(t);
            let d = DigitString::from_msd_first(r(g), s).unwrap();
            assert!(d.is_palindrome());
            d.value()
        };
        assert_eq!(oracle(&[1, 2], 3, 10), big(1_200_000_021));
        assert_eq!(
            zero_padded_palindrome(&big(12), r(10), 3, Parity::Even).unwrap(),
            big(1_200_000_021)
        );
        assert_eq!(zero_padded_palindrome(&big(1), r(10), 0, Parity::Even).unwrap(), big(11));
        assert_eq!(zero_padded_palindrome(&big(1), r(2), 2, Parity::Even).unwrap(), big(33));
        assert_eq!(zero_padded_palindrome(&big(12), r(10), 2, Parity::Odd).unwrap(), big(1200021));
        assert!(matches!(
            zero_padded_palindrome(&big(20), r(10), 1, Parity::Even),
            Err(Error::DivisibleByBase { .. })
        ));
    }

    #[test]
    fn even_is_unpadded_zero_padding() {
        for g in [2u64, 3, 10] {
            for a in (1..3000u64).filter(|a| a % g != 0) {
                let e = make_even_palindrome(&big(a), r(g)).unwrap();
                assert_eq!(e, zero_padded_palindrome(&big(a), r(g), 0, Parity::Even).unwrap());
                assert_eq!(digit_count(&e, r(g)), 2 * digit_count(&big(a), r(g)));
                let o = make_odd_palindrome(&big(a), r(g)).unwrap();
                assert!(radix::is_palindrome(&o, r(g)));
            }
        }
    }

    #[test]
    fn iterator_examples() {
        assert_eq!(iter_palindromes::<u64>(r(10), 1, 1000).count(), 108);
        let bin: Vec<u64> = iter_palindromes(r(2), 1u64, 10).collect();
        assert_eq!(bin, vec![1, 3, 5, 7, 9]);
        assert_eq!(iter_palindromes::<u64>(r(10), 100, 100).count(), 0);
        assert_eq!(iter_palindromes::<u64>(r(10), 101, 101).collect::<Vec<_>>(), vec![101]);
        assert_eq!(iter_palindromes::<u64>(r(10), 50, 40).count(), 0);
    }

    #[test]
    fn iterator_matches_brute_force() {
        for g in [2u64, 3, 10] {
            let brute: Vec<u64> = (1..=100_000u64)
                .filter(|&n| radix::is_palindrome(&big(n), r(g)))
                .collect();
            let fast: Vec<u64> = iter_palindromes(r(g), 1u64, 100_000).collect();
            assert_eq!(fast, brute, "base {g}");
            let mid: Vec<u64> = iter_palindromes(r(g), 777u64, 54_321).collect();
            let expect: Vec<u64> = brute.iter().copied().filter(|&n| (777..=54_321).contains(&n)).collect();
            assert_eq!(mid, expect);
        }
    }

    #[test]
    fn iterator_stops_at_word_limit() {
        let top: Vec<u64> = iter_palindromes(r(10), 18_446_744_000_000_000_000u64, u64::MAX).collect();
        assert!(top.windows(2).all(|w| w[0] < w[1]));
        assert!(top.iter().all(|&n| radix::is_palindrome(&big(n), r(10))));
        assert!(!top.is_empty());
        let last = *top.last().unwrap();
        assert_eq!(last, 18_446_744_066_044_764_481);
    }

    #[test]
    fn counts_per_length_match_brute_force() {
        for g in [2u64, 3, 10] {
            let max_len = if g == 10 { 6 } else { 10 };
            let mut per_len = vec![0u64; max_len + 1];
            let limit = num_traits::pow(g, max_len);
            for n in 1..limit {
                if radix::is_palindrome(&big(n), r(g)) {
                    per_len[digit_count(&big(n), r(g)) as usize] += 1;
                }
            }
            for d in 1..=max_len {
                assert_eq!(palindromes_with_length(r(g), d as u64), big(per_len[d]), "g={g} d={d}");
            }
        }
        // Longer lengths for base 10 via the enumerator, which is itself
        // checked against brute force above.
        for d in 7..=10u32 {
            let block = PalindromeBlock::<u64>::new(r(10), d).unwrap();
            let n = block.end_half().unwrap() - block.first_half();
            assert_eq!(big(n), palindromes_with_length(r(10), d as u64));
        }
    }

    #[test]
    fn count_upto_matches_enumeration() {
        for g in [2u64, 3, 7, 10] {
            for bound in [1u64, 2, 9, 10, 11, 99, 100, 1000, 54_321, 1_000_000] {
                let n = iter_palindromes(r(g), 1u64, bound).count() as u64;
                assert_eq!(palindrome_count_upto(r(g), &big(bound)), big(n), "g={g} B={bound}");
            }
        }
        assert_eq!(palindrome_count_upto(r(10), &big(1_000_000)), big(1998));
        assert_eq!(palindrome_count_upto(r(2), &big(1_000_000)), big(1999));
    }

    #[test]
    fn family_examples() {
        let f = family_instance(&big(9), r(10), r(2), 3).unwrap();
        assert_eq!(f.value, big(9009));
        let f = family_instance(&big(74), r(10), r(2), 2).unwrap();
        assert_eq!(f.value, big(7447));
        let f = family_instance(&big(585), r(10), r(2), 3).unwrap();
        assert_eq!(f.value, big(585585));
        assert_eq!(f.m, 0);
        assert_eq!(f.n_a, 3);
        assert!(matches!(
            family_instance(&big(585), r(10), r(2), 2),
            Err(Error::Overlap { n: 2, digits: 3 })
        ));
        assert!(matches!(
            family_instance(&big(20), r(10), r(2), 4),
            Err(Error::DivisibleByBase { .. })
        ));
    }

    #[test]
    fn family_derived_quantities() {
        // a = 9: rev_10 = 9 = 1001b, rev_2(9) = 9, alpha = 1.
        let f = family_instance(&big(9), r(10), r(2), 3).unwrap();
        assert_eq!(f.double_reversed, big(9));
        assert!(f.alpha.is_one());
        // 9009 / 9 = 1001, 2^9 = 512 <= 1001 < 1024.
        assert_eq!(f.k, 9);
        assert_eq!(f.m_tilde, -1);
        // a = 74: rev_10 = 47 = 101111b, rev_2 = 111101b = 61.
        let f = family_instance(&big(74), r(10), r(2), 5).unwrap();
        assert_eq!(f.double_reversed, big(61));
        assert_eq!(f.alpha, PosRational::new(big(74), big(61)).unwrap());
        let k = f.k;
        assert!(big(61) * r(2).pow(k) <= f.value);
        assert!(big(61) * r(2).pow(k + 1) > f.value);
    }

    #[test]
    fn family_members_are_palindromes() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let mut checked = 0;
        while checked < 200 {
            let g = rng.gen_range(2..=16u64);
            let a = rng.gen_range(1..100_000u64);
            if a % g == 0 {
                continue;
            }
            let n_a = digit_count(&big(a), r(g));
            let n = n_a + rng.gen_range(0..12u64);
            let f = family_instance(&big(a), r(g), r(2), n).unwrap();
            assert!(radix::is_palindrome(&f.value, r(g)), "a={a} g={g} n={n}");
            assert!(f.alpha.numer() < &big(a * g * 2));
            assert!(f.alpha.denom() < &big(a * g * 2));
            checked += 1;
        }
    }
}
