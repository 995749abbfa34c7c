//! Deciding and enumerating simultaneous palindromes.
//!
//! The engine walks the palindromes of one base (the *driver*) in ascending
//! order, block by block and half-value by half-value, and tests each one in
//! the other base with an early-exit digit comparison. Work is cut into
//! [`Segment`]s of consecutive half-values; a [`SearchState`] records the last
//! fully processed half-value so that a run can stop after any segment and be
//! resumed with identical output.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;

use crate::palgen::{palindrome_count_upto, PalindromeBlock, Parity};
use crate::radix::Radix;
use crate::word::{self, Word};
use crate::{Error, Result};

/// Checkpoint format tag written into every [`SearchCheckpoint`].
pub const CHECKPOINT_VERSION: u32 = 1;

/// Whether `n ≥ 1` is a base-`h` palindrome, comparing digits from both ends
/// and stopping at the first mismatch.
///
/// The high digit comes from dividing a running remainder by a single stored
/// power of `h`, which is itself divided by `h` after every step; the low digit
/// is the running quotient modulo `h`.
pub fn is_palindrome_early_exit(n: &BigUint, h: Radix) -> bool {
    if n.is_zero() {
        return true;
    }
    let hb = h.as_biguint();
    let k = crate::radix::digit_count(n, h);
    let mut power = h.pow(k - 1);
    let mut high = n.clone();
    let mut low = n.clone();
    for _ in 0..k / 2 {
        let (top, rest) = high.div_rem(&power);
        let (q, bottom) = low.div_rem(&hb);
        if top != bottom {
            return false;
        }
        high = rest;
        low = q;
        power /= &hb;
    }
    true
}

/// Early-exit palindrome test on machine words with a precomputed table of
/// powers of the base.
#[derive(Clone, Debug)]
pub struct PalindromeTester<T: Word> {
    base: T,
    powers: Vec<T>,
}

impl<T: Word> PalindromeTester<T> {
    pub fn new(h: Radix) -> Self {
        let base = T::from_u32(h.get());
        PalindromeTester {
            base,
            powers: word::powers(base),
        }
    }

    #[inline]
    pub fn is_palindrome(&self, n: T) -> bool {
        if n.is_zero() {
            return true;
        }
        let k = word::digit_count_with(&self.powers, n) as usize;
        let (mut high, mut low) = (n, n);
        for i in 0..k / 2 {
            let p = self.powers[k - 1 - i];
            let top = high / p;
            high = high - top * p;
            if top != low % self.base {
                return false;
            }
            low = low / self.base;
        }
        true
    }
}

/// The base to enumerate: the one with fewer palindromes up to `bound`,
/// ties going to the larger base.
pub fn plan_enumeration_base(g: Radix, h: Radix, bound: &BigUint) -> Radix {
    let cg = palindrome_count_upto(g, bound);
    let ch = palindrome_count_upto(h, bound);
    match cg.cmp(&ch) {
        core::cmp::Ordering::Less => g,
        core::cmp::Ordering::Greater => h,
        core::cmp::Ordering::Equal => {
            if g.get() > h.get() {
                g
            } else {
                h
            }
        }
    }
}

/// Position of the last fully processed palindrome.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Cursor {
    pub digit_length: u32,
    pub parity: Parity,
    pub half: u128,
}

/// A run of consecutive half-values `[lo, hi)` in one block.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Segment<T> {
    pub length: u32,
    pub lo: T,
    pub hi: T,
}

/// Everything fixed about a search: the bases, the bound and the driver.
#[derive(Clone, Debug)]
pub struct SearchPlan<T: Word> {
    g: Radix,
    h: Radix,
    bound: T,
    driver: Radix,
    tested: Radix,
    tester: PalindromeTester<T>,
    prune: bool,
    max_length: u32,
}

impl<T: Word> SearchPlan<T> {
    /// Plan with the driver chosen by [`plan_enumeration_base`].
    pub fn new(g: Radix, h: Radix, bound: T) -> Result<Self> {
        let driver = plan_enumeration_base(g, h, &BigUint::from(bound.as_u128()));
        Self::with_driver(g, h, bound, driver)
    }

    /// Plan enumerating the palindromes of `driver`, which must be `g` or `h`.
    pub fn with_driver(g: Radix, h: Radix, bound: T, driver: Radix) -> Result<Self> {
        if g == h {
            return Err(Error::EqualBases(g.get()));
        }
        let tested = if driver == g {
            h
        } else if driver == h {
            g
        } else {
            return Err(Error::Precondition(format!("driver base {driver} is neither {g} nor {h}")));
        };
        let max_length = if bound.is_zero() {
            0
        } else {
            word::digit_count_with(&word::powers(T::from_u32(driver.get())), bound)
        };
        Ok(SearchPlan {
            g,
            h,
            bound,
            driver,
            tested,
            tester: PalindromeTester::new(tested),
            prune: driver.get() % tested.get() == 0,
            max_length,
        })
    }

    pub fn g(&self) -> Radix {
        self.g
    }

    pub fn h(&self) -> Radix {
        self.h
    }

    pub fn bound(&self) -> T {
        self.bound
    }

    pub fn driver(&self) -> Radix {
        self.driver
    }

    /// Whether one base is a perfect power of the other, in which case there
    /// are infinitely many simultaneous palindromes (e.g. `gⁿ + 1`).
    pub fn infinitely_many(&self) -> bool {
        self.g.is_perfect_power_of(self.h) || self.h.is_perfect_power_of(self.g)
    }

    /// The block of `length`-digit driver palindromes and its half-value
    /// range `[lo, hi)` restricted to palindromes `≤ bound`.
    pub fn block_range(&self, length: u32) -> Option<(PalindromeBlock<T>, T, T)> {
        if length == 0 || length > self.max_length {
            return None;
        }
        let block = PalindromeBlock::new(self.driver, length)?;
        let lo = block.first_half();
        let hi = if length == self.max_length {
            block.half_at_or_below(self.bound) + T::one()
        } else {
            block.end_half()?
        };
        (lo < hi).then_some((block, lo, hi))
    }

    /// Tests every palindrome of the segment and reports the simultaneous
    /// ones, ascending.
    pub fn scan(&self, seg: &Segment<T>, mut found: impl FnMut(T)) {
        let Some(block) = PalindromeBlock::<T>::new(self.driver, seg.length) else {
            return;
        };
        let tested = T::from_u32(self.tested.get());
        let lead_div = block.first_half();
        let mut half = seg.lo;
        while half < seg.hi {
            if self.prune {
                // The last driver digit equals the leading one; if the tested
                // base divides it, it divides N and N ends in a zero digit.
                let lead = half / lead_div;
                if (lead % tested).is_zero() {
                    // Jump to the next leading digit.
                    half = (lead + T::one()) * lead_div;
                    continue;
                }
            }
            if let Some(p) = block.palindrome(half) {
                if self.tester.is_palindrome(p) {
                    found(p);
                }
            }
            half = half + T::one();
        }
    }

    /// Segments of at most `segment_len` half-values from `state`'s resume
    /// point to the end of the search.
    pub fn segments(&self, state: &SearchState, segment_len: u64) -> Segments<'_, T> {
        let (length, next) = match state.cursor {
            None => (1, None),
            Some(c) => (c.digit_length, T::from_u128(c.half).map(|h| h + T::one())),
        };
        Segments {
            plan: self,
            length,
            next,
            step: T::from_u128(segment_len.max(1) as u128).unwrap_or_else(T::max_value),
            done: state.complete,
        }
    }

    /// Fresh state for this plan.
    pub fn initial_state(&self) -> SearchState {
        SearchState::default()
    }

    pub fn cursor_after(&self, seg: &Segment<T>) -> Cursor {
        Cursor {
            digit_length: seg.length,
            parity: Parity::of_length(seg.length),
            half: (seg.hi - T::one()).as_u128(),
        }
    }

    /// Builds a checkpoint recording `state` under this plan.
    pub fn checkpoint(&self, state: &SearchState) -> SearchCheckpoint {
        SearchCheckpoint {
            version: CHECKPOINT_VERSION,
            g: self.g.get(),
            h: self.h.get(),
            bound: self.bound.as_u128(),
            enumeration_base: self.driver.get(),
            cursor: state.cursor,
            found: state.found.clone(),
            found_count: state.found_count,
            retain: state.retain,
            complete: state.complete,
        }
    }

    /// Recovers the state from a checkpoint written for the same search.
    pub fn resume(&self, cp: &SearchCheckpoint) -> Result<SearchState> {
        cp.validate()?;
        let mismatch = |what: &str, have: String, want: String| {
            Err(Error::CheckpointMismatch(format!("{what}: checkpoint has {have}, run has {want}")))
        };
        if cp.g != self.g.get() || cp.h != self.h.get() {
            return mismatch("bases", format!("({}, {})", cp.g, cp.h), format!("({}, {})", self.g, self.h));
        }
        if cp.bound != self.bound.as_u128() {
            return mismatch("bound", format!("{}", cp.bound), format!("{}", self.bound));
        }
        if cp.enumeration_base != self.driver.get() {
            return mismatch("enumeration base", format!("{}", cp.enumeration_base), format!("{}", self.driver));
        }
        if let Some(c) = cp.cursor {
            if c.digit_length > self.max_length {
                return Err(Error::CorruptCheckpoint("cursor beyond the bound".into()));
            }
        }
        Ok(SearchState {
            cursor: cp.cursor,
            found: cp.found.clone(),
            found_count: cp.found_count,
            retain: cp.retain,
            complete: cp.complete,
        })
    }
}

/// Iterator over the remaining [`Segment`]s of a search.
#[derive(Clone, Debug)]
pub struct Segments<'a, T: Word> {
    plan: &'a SearchPlan<T>,
    length: u32,
    next: Option<T>,
    step: T,
    done: bool,
}

impl<T: Word> Iterator for Segments<'_, T> {
    type Item = Segment<T>;

    fn next(&mut self) -> Option<Segment<T>> {
        while !self.done {
            let Some((_, lo, hi)) = self.plan.block_range(self.length) else {
                if self.length >= self.plan.max_length {
                    self.done = true;
                    return None;
                }
                self.length += 1;
                self.next = None;
                continue;
            };
            let start = self.next.unwrap_or(lo).max(lo);
            if start >= hi {
                self.length += 1;
                self.next = None;
                continue;
            }
            let end = match start.checked_add(&self.step) {
                Some(e) if e < hi => e,
                _ => hi,
            };
            self.next = Some(end);
            return Some(Segment {
                length: self.length,
                lo: start,
                hi: end,
            });
        }
        None
    }
}

/// Progress of a search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchState {
    pub cursor: Option<Cursor>,
    /// Simultaneous palindromes found so far, ascending (empty when only
    /// counting).
    pub found: Vec<u128>,
    pub found_count: u64,
    /// Whether `found` is kept, as opposed to counting only.
    pub retain: bool,
    pub complete: bool,
}

impl Default for SearchState {
    fn default() -> Self {
        SearchState {
            cursor: None,
            found: Vec::new(),
            found_count: 0,
            retain: true,
            complete: false,
        }
    }
}

impl SearchState {
    pub fn counting() -> Self {
        SearchState {
            retain: false,
            ..Self::default()
        }
    }

    /// Records a finished segment and the palindromes it produced.
    pub fn record<T: Word>(&mut self, plan: &SearchPlan<T>, seg: &Segment<T>, found: &[T]) {
        self.found_count += found.len() as u64;
        if self.retain {
            self.found.extend(found.iter().map(|x| x.as_u128()));
        }
        self.cursor = Some(plan.cursor_after(seg));
    }
}

/// The on-disk record of a search in progress.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SearchCheckpoint {
    pub version: u32,
    pub g: u32,
    pub h: u32,
    pub bound: u128,
    pub enumeration_base: u32,
    pub cursor: Option<Cursor>,
    pub found: Vec<u128>,
    pub found_count: u64,
    pub retain: bool,
    pub complete: bool,
}

impl SearchCheckpoint {
    /// Internal consistency: version, ascending `found`, matching count and
    /// a cursor parity that agrees with its length.
    pub fn validate(&self) -> Result<()> {
        if self.version != CHECKPOINT_VERSION {
            return Err(Error::CheckpointMismatch(format!(
                "checkpoint version {} (expected {CHECKPOINT_VERSION})",
                self.version
            )));
        }
        if self.enumeration_base != self.g && self.enumeration_base != self.h {
            return Err(Error::CorruptCheckpoint("enumeration base is neither g nor h".into()));
        }
        if !self.found.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::CorruptCheckpoint("found list not strictly ascending".into()));
        }
        if self.retain && self.found.len() as u64 != self.found_count {
            return Err(Error::CorruptCheckpoint("found_count disagrees with found".into()));
        }
        if let Some(c) = self.cursor {
            if c.parity != Parity::of_length(c.digit_length) {
                return Err(Error::CorruptCheckpoint("cursor parity disagrees with its length".into()));
            }
        }
        Ok(())
    }
}

/// Runs a plan to completion on the current thread.
pub fn run_sequential<T: Word>(plan: &SearchPlan<T>, state: &mut SearchState) {
    let mut buf = Vec::new();
    for seg in plan.segments(state, 1 << 16) {
        buf.clear();
        plan.scan(&seg, |p| buf.push(p));
        state.record(plan, &seg, &buf);
    }
    state.complete = true;
}

/// All simultaneous palindromes `≤ bound`, ascending.
pub fn search<T: Word>(g: Radix, h: Radix, bound: T) -> Result<Vec<T>> {
    let plan = SearchPlan::new(g, h, bound)?;
    let mut state = plan.initial_state();
    run_sequential(&plan, &mut state);
    Ok(state.found.into_iter().filter_map(T::from_u128).collect())
}

/// Number of simultaneous palindromes `≤ bound`.
pub fn count<T: Word>(g: Radix, h: Radix, bound: T) -> Result<u64> {
    let plan = SearchPlan::new(g, h, bound)?;
    let mut state = SearchState::counting();
    run_sequential(&plan, &mut state);
    Ok(state.found_count)
}

/// Whether `n` is a palindrome in every listed base.
pub fn is_simultaneous_palindrome(n: &BigUint, bases: &[Radix]) -> bool {
    bases.iter().all(|&b| is_palindrome_early_exit(n, b))
}
