//! Properties of the digit machinery and the search engine, checked against
//! naive reference implementations.

use num_bigint::BigUint;
use proptest::prelude::*;
use simpal_core::palgen::iter_palindromes;
use simpal_core::radix::{digits, is_palindrome, reverse_in_base};
use simpal_core::simulcheck::{is_palindrome_early_exit, run_sequential, search, PalindromeTester, SearchPlan, SearchState};
use simpal_core::Radix;

fn r(b: u64) -> Radix {
    Radix::new(b).unwrap()
}

/// Digits least significant first, by repeated division.
fn naive_digits(mut n: u64, b: u64) -> Vec<u64> {
    let mut out = Vec::new();
    while n > 0 {
        out.push(n % b);
        n /= b;
    }
    out
}

fn naive_palindrome(n: u64, b: u64) -> bool {
    let d = naive_digits(n, b);
    d.iter().eq(d.iter().rev())
}

proptest! {
    #[test]
    fn digit_expansion_round_trips(n in 1u64.., b in 2u64..=64) {
        let big = BigUint::from(n);
        let ds = digits(&big, r(b));
        let naive: Vec<u32> = naive_digits(n, b).into_iter().map(|d| d as u32).collect();
        prop_assert_eq!(ds.digits(), &naive[..]);
        prop_assert_eq!(ds.value(), big);
    }

    #[test]
    fn reversal_agrees_with_reversed_digits(n in 1u64..1 << 40, b in 2u64..=36) {
        let rev = reverse_in_base(&BigUint::from(n), r(b)).unwrap();
        let expect = naive_digits(n, b).iter().fold(0u128, |acc, &d| acc * b as u128 + d as u128);
        prop_assert_eq!(rev, BigUint::from(expect));
    }

    #[test]
    fn early_exit_agrees_with_naive(n in 1u64.., b in 2u64..=20) {
        let naive = naive_palindrome(n, b);
        prop_assert_eq!(is_palindrome_early_exit(&BigUint::from(n), r(b)), naive);
        prop_assert_eq!(is_palindrome(&BigUint::from(n), r(b)), naive);
        prop_assert_eq!(PalindromeTester::<u64>::new(r(b)).is_palindrome(n), naive);
    }

    #[test]
    fn mirrored_numbers_are_detected(half in 1u64..1 << 20, b in 2u64..=16, odd in any::<bool>()) {
        // Mirror the base-b digits of `half` and confirm all testers agree.
        let d = naive_digits(half, b);
        let mut msd: Vec<u64> = d.iter().rev().copied().collect();
        let tail: Vec<u64> = if odd { d[1..].to_vec() } else { d.clone() };
        msd.extend(tail);
        let n = msd.iter().fold(0u128, |acc, &x| acc * b as u128 + x as u128);
        prop_assert!(PalindromeTester::<u128>::new(r(b)).is_palindrome(n));
        prop_assert!(is_palindrome_early_exit(&BigUint::from(n), r(b)));
    }
}

#[test]
fn palindrome_enumeration_matches_filtering() {
    for b in [2u64, 3, 7, 10, 16] {
        let listed: Vec<u64> = iter_palindromes(r(b), 1u64, 200_000).collect();
        let naive: Vec<u64> = (1..=200_000).filter(|&n| naive_palindrome(n, b)).collect();
        assert_eq!(listed, naive, "base {b}");
    }
}

#[test]
fn search_is_the_complement_of_brute_force() {
    for (g, h) in [(10, 2), (2, 3), (3, 5), (7, 11), (16, 6)] {
        let found = search(r(g), r(h), 100_000u64).unwrap();
        let brute: Vec<u64> = (1..=100_000).filter(|&n| naive_palindrome(n, g) && naive_palindrome(n, h)).collect();
        assert_eq!(found, brute, "({g},{h})");
    }
}

#[test]
fn search_does_not_depend_on_the_enumerated_base() {
    for (g, h, bound) in [(10u64, 2u64, 10_000_000u64), (2, 3, 10_000_000), (6, 5, 3_000_000)] {
        let mut results = Vec::new();
        for driver in [g, h] {
            let plan = SearchPlan::with_driver(r(g), r(h), bound, r(driver)).unwrap();
            let mut state = plan.initial_state();
            run_sequential(&plan, &mut state);
            results.push(state.found);
        }
        assert_eq!(results[0], results[1], "({g},{h})");
    }
}

#[test]
fn resuming_at_any_segment_boundary_gives_the_same_list() {
    let plan = SearchPlan::new(r(10), r(2), 100_000_000u64).unwrap();
    let mut reference = plan.initial_state();
    run_sequential(&plan, &mut reference);
    assert_eq!(reference.found.len(), 27);

    let segments: Vec<_> = plan.segments(&plan.initial_state(), 97).collect();
    let mut state = plan.initial_state();
    for (i, seg) in segments.iter().enumerate() {
        let mut hits = Vec::new();
        plan.scan(seg, |p| hits.push(p));
        state.record(&plan, seg, &hits);
        if i % 7 == 0 {
            let mut resumed = plan.resume(&plan.checkpoint(&state)).unwrap();
            run_sequential(&plan, &mut resumed);
            assert_eq!(resumed.found, reference.found, "after segment {i}");
        }
    }

    let mut counting = SearchState::counting();
    run_sequential(&plan, &mut counting);
    assert_eq!(counting.found_count, 27);
    assert!(counting.found.is_empty());
}
