//! Certified real arithmetic on fixed-point intervals.
//!
//! A [`PreciseReal`] is a closed interval `[lo, hi]·2^-prec` with big-integer
//! endpoints. Every operation rounds its endpoints outward, so the exact
//! mathematical result always lies inside the returned interval. Comparisons
//! that the interval cannot decide return `None`; callers escalate precision
//! instead of guessing.

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::ratio::{PosRational, Rational};
use crate::{Error, Result};

/// Closed interval with fixed-point endpoints `lo/2^prec ≤ x ≤ hi/2^prec`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreciseReal {
    lo: BigInt,
    hi: BigInt,
    prec: u32,
}

fn pow2(k: u32) -> BigInt {
    BigInt::one() << k as usize
}

fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

fn bits_of(x: &BigInt) -> u64 {
    x.magnitude().bits()
}

impl PreciseReal {
    fn from_parts(lo: BigInt, hi: BigInt, prec: u32) -> Self {
        debug_assert!(lo <= hi, "inverted interval");
        PreciseReal { lo, hi, prec }
    }

    /// The exact integer `n`.
    pub fn from_integer(n: impl Into<BigInt>, prec: u32) -> Self {
        let v = n.into() << prec as usize;
        PreciseReal::from_parts(v.clone(), v, prec)
    }

    /// Tightest enclosure of `num/den` at this precision.
    pub fn from_ratio(num: &BigInt, den: &BigUint, prec: u32) -> Self {
        let den = BigInt::from(den.clone());
        let scaled = num << prec as usize;
        PreciseReal::from_parts(floor_div(&scaled, &den), ceil_div(&scaled, &den), prec)
    }

    pub fn from_rational(x: &Rational, prec: u32) -> Self {
        Self::from_ratio(x.numer(), x.denom(), prec)
    }

    pub fn from_pos_rational(x: &PosRational, prec: u32) -> Self {
        Self::from_ratio(&BigInt::from(x.numer().clone()), x.denom(), prec)
    }

    /// Exact enclosure of a decimal literal such as `2.022e10`.
    pub fn from_decimal(s: &str, prec: u32) -> Result<Self> {
        Ok(Self::from_rational(&Rational::from_decimal(s)?, prec))
    }

    /// Interval spanning two other intervals' lower and upper ends.
    pub fn hull(&self, other: &Self) -> Self {
        let (a, b) = align(self, other);
        PreciseReal::from_parts(a.lo.clone().min(b.lo.clone()), a.hi.clone().max(b.hi.clone()), a.prec)
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.sign() != Sign::Plus && self.hi.sign() != Sign::Minus
    }

    /// Lower endpoint as the exact fraction `(numerator, 2^prec)`.
    pub fn lower_fraction(&self) -> (BigInt, BigUint) {
        (self.lo.clone(), BigUint::one() << self.prec as usize)
    }

    /// Upper endpoint as the exact fraction `(numerator, 2^prec)`.
    pub fn upper_fraction(&self) -> (BigInt, BigUint) {
        (self.hi.clone(), BigUint::one() << self.prec as usize)
    }

    /// The lower endpoint as a degenerate interval.
    pub fn lower(&self) -> Self {
        PreciseReal::from_parts(self.lo.clone(), self.lo.clone(), self.prec)
    }

    /// The upper endpoint as a degenerate interval.
    pub fn upper(&self) -> Self {
        PreciseReal::from_parts(self.hi.clone(), self.hi.clone(), self.prec)
    }

    /// Changes the precision, rounding outward when it decreases.
    pub fn with_precision(&self, prec: u32) -> Self {
        match prec.cmp(&self.prec) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => {
                let s = (prec - self.prec) as usize;
                PreciseReal::from_parts(&self.lo << s, &self.hi << s, prec)
            }
            Ordering::Less => {
                let d = pow2(self.prec - prec);
                PreciseReal::from_parts(floor_div(&self.lo, &d), ceil_div(&self.hi, &d), prec)
            }
        }
    }

    /// Largest `f64` not above the lower endpoint.
    pub fn lower_f64(&self) -> f64 {
        fixed_to_f64(&self.lo, self.prec, false)
    }

    /// Smallest `f64` not below the upper endpoint.
    pub fn upper_f64(&self) -> f64 {
        fixed_to_f64(&self.hi, self.prec, true)
    }

    pub fn midpoint_f64(&self) -> f64 {
        let mid = (&self.lo + &self.hi) >> 1usize;
        fixed_to_f64(&mid, self.prec, false)
    }

    /// Upper bound on the half-width as an `f64`.
    pub fn radius_f64(&self) -> f64 {
        let w = &self.hi - &self.lo;
        fixed_to_f64(&w, self.prec + 1, true)
    }

    pub fn neg(&self) -> Self {
        PreciseReal::from_parts(-&self.hi, -&self.lo, self.prec)
    }

    pub fn abs(&self) -> Self {
        if self.lo.sign() != Sign::Minus {
            self.clone()
        } else if self.hi.sign() != Sign::Plus {
            self.neg()
        } else {
            let m = (-&self.lo).max(self.hi.clone());
            PreciseReal::from_parts(BigInt::zero(), m, self.prec)
        }
    }

    /// Exact multiplication by an integer.
    pub fn mul_int(&self, n: &BigInt) -> Self {
        let (a, b) = (&self.lo * n, &self.hi * n);
        if n.sign() == Sign::Minus {
            PreciseReal::from_parts(b, a, self.prec)
        } else {
            PreciseReal::from_parts(a, b, self.prec)
        }
    }

    /// Division by a nonzero integer, rounded outward.
    pub fn div_int(&self, n: &BigInt) -> Self {
        assert!(!n.is_zero(), "division by zero");
        let cands = [&self.lo, &self.hi];
        let lo = cands.iter().map(|x| floor_div(x, n)).min().expect("two candidates");
        let hi = cands.iter().map(|x| ceil_div(x, n)).max().expect("two candidates");
        PreciseReal::from_parts(lo, hi, self.prec)
    }

    /// Division, or `None` if the divisor interval contains zero.
    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        let (a, b) = align(self, rhs);
        if b.contains_zero() {
            return None;
        }
        let p = a.prec as usize;
        let mut lo: Option<BigInt> = None;
        let mut hi: Option<BigInt> = None;
        for x in [&a.lo, &a.hi] {
            for y in [&b.lo, &b.hi] {
                let num = x << p;
                let f = floor_div(&num, y);
                let c = ceil_div(&num, y);
                lo = Some(lo.map_or(f.clone(), |l| l.min(f)));
                hi = Some(hi.map_or(c.clone(), |h| h.max(c)));
            }
        }
        Some(PreciseReal::from_parts(lo?, hi?, a.prec))
    }

    pub fn powi(&self, e: u32) -> Self {
        let mut acc = PreciseReal::from_integer(1, self.prec);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn max(&self, other: &Self) -> Self {
        let (a, b) = align(self, other);
        PreciseReal::from_parts(a.lo.clone().max(b.lo.clone()), a.hi.clone().max(b.hi.clone()), a.prec)
    }

    pub fn min(&self, other: &Self) -> Self {
        let (a, b) = align(self, other);
        PreciseReal::from_parts(a.lo.clone().min(b.lo.clone()), a.hi.clone().min(b.hi.clone()), a.prec)
    }

    /// Ordering of the two intervals if it is certain.
    pub fn certified_cmp(&self, other: &Self) -> Option<Ordering> {
        let (a, b) = align(self, other);
        if a.hi < b.lo {
            Some(Ordering::Less)
        } else if a.lo > b.hi {
            Some(Ordering::Greater)
        } else if a.is_exact() && b.is_exact() && a.lo == b.lo {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// `Some(true)` if certainly `self < other`, `Some(false)` if certainly
    /// `self ≥ other`, `None` if undecided.
    pub fn lt(&self, other: &Self) -> Option<bool> {
        let (a, b) = align(self, other);
        if a.hi < b.lo {
            Some(true)
        } else if a.lo >= b.hi {
            Some(false)
        } else {
            None
        }
    }

    pub fn gt(&self, other: &Self) -> Option<bool> {
        other.lt(self)
    }

    /// `⌊x⌋` if the whole interval has the same floor.
    pub fn floor(&self) -> Option<BigInt> {
        let d = pow2(self.prec);
        let (a, b) = (floor_div(&self.lo, &d), floor_div(&self.hi, &d));
        (a == b).then_some(a)
    }

    /// Floor of the upper endpoint: an integer that is `≥ ⌊x⌋` for every `x`
    /// in the interval.
    pub fn floor_upper(&self) -> BigInt {
        floor_div(&self.hi, &pow2(self.prec))
    }

    /// Ceiling of the upper endpoint.
    pub fn ceil_upper(&self) -> BigInt {
        ceil_div(&self.hi, &pow2(self.prec))
    }

    /// Floor of the lower endpoint.
    pub fn floor_lower(&self) -> BigInt {
        floor_div(&self.lo, &pow2(self.prec))
    }

    /// Enclosure of the distance to the nearest integer, `‖x‖`.
    pub fn dist_to_nearest_int(&self) -> Self {
        let one = pow2(self.prec);
        let dist = |x: &BigInt| -> BigInt {
            let r = x.mod_floor(&one);
            let s = &one - &r;
            r.min(s)
        };
        let (dl, dh) = (dist(&self.lo), dist(&self.hi));
        let contains_int = ceil_div(&self.lo, &one) * &one <= self.hi;
        let lo = if contains_int { BigInt::zero() } else { dl.clone().min(dh.clone()) };
        let hi = if self.prec == 0 {
            dl.max(dh)
        } else {
            let half = pow2(self.prec - 1);
            let contains_half = ceil_div(&(&self.lo - &half), &one) * &one + &half <= self.hi;
            if contains_half {
                half
            } else {
                dl.max(dh)
            }
        };
        PreciseReal::from_parts(lo, hi, self.prec)
    }

    /// Natural logarithm of a positive interval.
    pub fn ln(&self) -> Result<Self> {
        if self.lo.sign() != Sign::Plus {
            return Err(Error::NotPositive("logarithm argument"));
        }
        let den = BigUint::one() << self.prec as usize;
        let lo_mag = self.lo.magnitude();
        let l = ln_ratio(lo_mag, &den, self.prec);
        if self.is_exact() {
            return Ok(l);
        }
        let h = ln_ratio(self.hi.magnitude(), &den, self.prec);
        Ok(PreciseReal::from_parts(l.lo, h.hi, self.prec))
    }

    /// Exponential function.
    pub fn exp(&self) -> Self {
        let l = exp_fixed(&self.lo, self.prec, self.prec);
        if self.is_exact() {
            return l;
        }
        let h = exp_fixed(&self.hi, self.prec, self.prec);
        PreciseReal::from_parts(l.lo, h.hi, self.prec)
    }
}

fn align<'a>(a: &'a PreciseReal, b: &'a PreciseReal) -> (alloc::borrow::Cow<'a, PreciseReal>, alloc::borrow::Cow<'a, PreciseReal>) {
    use alloc::borrow::Cow;
    match a.prec.cmp(&b.prec) {
        Ordering::Equal => (Cow::Borrowed(a), Cow::Borrowed(b)),
        Ordering::Less => (Cow::Owned(a.with_precision(b.prec)), Cow::Borrowed(b)),
        Ordering::Greater => (Cow::Borrowed(a), Cow::Owned(b.with_precision(a.prec))),
    }
}

impl Add for &PreciseReal {
    type Output = PreciseReal;
    fn add(self, rhs: &PreciseReal) -> PreciseReal {
        let (a, b) = align(self, rhs);
        PreciseReal::from_parts(&a.lo + &b.lo, &a.hi + &b.hi, a.prec)
    }
}

impl Sub for &PreciseReal {
    type Output = PreciseReal;
    fn sub(self, rhs: &PreciseReal) -> PreciseReal {
        let (a, b) = align(self, rhs);
        PreciseReal::from_parts(&a.lo - &b.hi, &a.hi - &b.lo, a.prec)
    }
}

impl Mul for &PreciseReal {
    type Output = PreciseReal;
    fn mul(self, rhs: &PreciseReal) -> PreciseReal {
        let (a, b) = align(self, rhs);
        let d = pow2(a.prec);
        let prods = [&a.lo * &b.lo, &a.lo * &b.hi, &a.hi * &b.lo, &a.hi * &b.hi];
        let lo = prods.iter().min().expect("four products");
        let hi = prods.iter().max().expect("four products");
        PreciseReal::from_parts(floor_div(lo, &d), ceil_div(hi, &d), a.prec)
    }
}

impl Div for &PreciseReal {
    type Output = PreciseReal;
    fn div(self, rhs: &PreciseReal) -> PreciseReal {
        self.checked_div(rhs).expect("divisor interval contains zero")
    }
}

impl Neg for &PreciseReal {
    type Output = PreciseReal;
    fn neg(self) -> PreciseReal {
        PreciseReal::neg(self)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for PreciseReal {
            type Output = PreciseReal;
            fn $m(self, rhs: PreciseReal) -> PreciseReal { (&self).$m(&rhs) }
        }
        impl $tr<&PreciseReal> for PreciseReal {
            type Output = PreciseReal;
            fn $m(self, rhs: &PreciseReal) -> PreciseReal { (&self).$m(rhs) }
        }
        impl $tr<PreciseReal> for &PreciseReal {
            type Output = PreciseReal;
            fn $m(self, rhs: PreciseReal) -> PreciseReal { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for PreciseReal {
    type Output = PreciseReal;
    fn neg(self) -> PreciseReal {
        PreciseReal::neg(&self)
    }
}

impl fmt::Display for PreciseReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e} ± {:.1e}", self.midpoint_f64(), self.radius_f64())
    }
}

/// `Σ z^(2i+1)/(2i+1)` for `z = num/den ∈ [0, 1/3]`, scaled by `2^w`.
/// The computed sum never exceeds the true one and falls short by at most
/// the returned number of units.
fn atanh_scaled(num: &BigUint, den: &BigUint, w: u32) -> (BigUint, u64) {
    debug_assert!(num * 3u32 <= *den);
    let mut t = (num << w as usize) / den;
    let num2 = num * num;
    let den2 = den * den;
    let mut sum = t.clone();
    let mut terms = 0u64;
    let mut i = 1u64;
    while !t.is_zero() {
        t = &t * &num2 / &den2;
        sum += &t / (2 * i + 1);
        i += 1;
        terms += 1;
    }
    (sum, 3 * terms + 10)
}

/// Enclosure of `ln(u/v)` at precision `prec`.
pub(crate) fn ln_ratio(u: &BigUint, v: &BigUint, prec: u32) -> PreciseReal {
    assert!(!u.is_zero() && !v.is_zero(), "logarithm of zero");
    if u == v {
        return PreciseReal::from_integer(0, prec);
    }
    // y = u / (v·2^k) ∈ [1, 2)
    let mut k = u.bits() as i64 - v.bits() as i64;
    let scaled = |k: i64| -> (BigUint, BigUint) {
        if k >= 0 {
            (u.clone(), v << k as usize)
        } else {
            (u << (-k) as usize, v.clone())
        }
    };
    let (mut big_u, mut big_v) = scaled(k);
    if big_u < big_v {
        k -= 1;
        (big_u, big_v) = scaled(k);
    }
    let guard = 64 - (k.unsigned_abs() + 1).leading_zeros();
    let w = prec + 32 + guard;
    let (sy, ey) = atanh_scaled(&(&big_u - &big_v), &(&big_u + &big_v), w);
    let (s2, e2) = atanh_scaled(&BigUint::one(), &BigUint::from(3u32), w);
    let total = BigInt::from(k) * BigInt::from(s2) * 2 + BigInt::from(sy) * 2;
    let err = BigInt::from(k.unsigned_abs()) * 2 * e2 + BigInt::from(2 * ey);
    let d = pow2(w - prec);
    PreciseReal::from_parts(floor_div(&(&total - &err), &d), ceil_div(&(&total + &err), &d), prec)
}

/// Enclosure of `exp(x/2^q)` at precision `prec`.
fn exp_fixed(x: &BigInt, q: u32, prec: u32) -> PreciseReal {
    if x.is_zero() {
        return PreciseReal::from_integer(1, prec);
    }
    // Halve the argument s times so that |r| ≤ 1/2, then square back.
    let s = (bits_of(x) as i64 - q as i64 + 1).max(0) as u32;
    let magnitude_bits = if x.sign() == Sign::Plus {
        // e^x < 2^(1.45·x)
        let int_part = (x >> q as usize).to_u64().unwrap_or(u64::MAX / 4);
        (int_part.saturating_mul(3) / 2 + 2) as u32
    } else {
        0
    };
    let w = prec + 40 + 2 * s + magnitude_bits;
    let rq = (q + s) as usize;
    let den = BigInt::one() << rq;
    let mut t = pow2(w);
    let mut sum = t.clone();
    let mut i = 1u64;
    while !t.is_zero() {
        t = (&t * x) / (&den * BigInt::from(i));
        sum += &t;
        i += 1;
    }
    let err = BigInt::from(2 * i + 6);
    let mut acc = PreciseReal::from_parts(&sum - &err, &sum + &err, w);
    for _ in 0..s {
        acc = &acc * &acc;
    }
    acc.with_precision(prec)
}

/// Exact value of a finite `f64` as `mantissa·2^exp`.
fn f64_parts(f: f64) -> (BigInt, i32) {
    let bits = f.to_bits();
    let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
    let exp_bits = ((bits >> 52) & 0x7ff) as i32;
    let frac = bits & ((1u64 << 52) - 1);
    let (mant, exp) = if exp_bits == 0 {
        (frac, -1074)
    } else {
        (frac | (1u64 << 52), exp_bits - 1075)
    };
    (BigInt::from(sign) * BigInt::from(mant), exp)
}

/// Compares the exact value of `f` with `x/2^p`.
fn cmp_f64_fixed(f: f64, x: &BigInt, p: u32) -> Ordering {
    if f.is_infinite() {
        return if f > 0.0 { Ordering::Greater } else { Ordering::Less };
    }
    let (m, e) = f64_parts(f);
    let shift = e as i64 + p as i64;
    if shift >= 0 {
        (m << shift as usize).cmp(x)
    } else {
        m.cmp(&(x << (-shift) as usize))
    }
}

fn fixed_to_f64(x: &BigInt, p: u32, round_up: bool) -> f64 {
    let approx = {
        let b = bits_of(x) as i64;
        let drop = (b - 64).max(0);
        let top = (x >> drop as usize).to_f64().unwrap_or(0.0);
        let e = drop - p as i64;
        if e > 2000 {
            top * f64::INFINITY
        } else if e < -2000 {
            0.0
        } else {
            libm::ldexp(top, e as i32)
        }
    };
    let mut f = approx;
    if round_up {
        while cmp_f64_fixed(f, x, p) == Ordering::Less {
            f = f.next_up();
        }
    } else {
        while cmp_f64_fixed(f, x, p) == Ordering::Greater {
            f = f.next_down();
        }
    }
    f
}

/// Enclosure of `ln x` for a positive rational.
pub fn ln_pos_rational(x: &PosRational, prec: u32) -> PreciseReal {
    ln_ratio(x.numer(), x.denom(), prec)
}

/// `e` itself.
pub fn euler(prec: u32) -> PreciseReal {
    PreciseReal::from_integer(1, prec).exp()
}
