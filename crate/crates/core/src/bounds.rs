//! Explicit bounds: linear forms in logarithms and the thresholds built on
//! them.
//!
//! The lower bounds for linear forms (three logarithms in general, two in
//! the dependent case) are evaluated in `f64`; they are only ever used for
//! display and consistency checks. The thresholds that feed the verifier,
//! [`lemma_main_c`] and [`theorem1_bound`], are evaluated in interval
//! arithmetic so that the reported value is a certified upper bound.
//!
//! All logarithms are natural.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive, Zero};

use crate::lindep::{logs_independent, multiplicatively_independent};
use crate::radix::Radix;
use crate::ratio::PosRational;
use crate::reduction::precise::{ln_pos_rational, PreciseReal};
use crate::{Error, Result};

/// Working precision (bits) for the certified thresholds.
const PREC: u32 = 160;

fn ln_f64(x: f64) -> f64 {
    libm::log(x)
}

fn ln_biguint(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        ln_f64(n.to_f64().unwrap_or(f64::MAX))
    } else {
        let shift = bits - 64;
        ln_f64((n >> shift as usize).to_f64().unwrap_or(1.0)) + shift as f64 * core::f64::consts::LN_2
    }
}

/// Absolute logarithmic Weil height of `p/q` in lowest terms: `log max(p, q)`.
pub fn weil_height(x: &PosRational) -> f64 {
    ln_biguint(x.numer().max(x.denom()))
}

/// `|log x|` for a positive rational.
fn abs_log(x: &PosRational) -> f64 {
    (ln_biguint(x.numer()) - ln_biguint(x.denom())).abs()
}

/// A linear form `b_1 log α_1 + … + b_n log α_n` with rational `α_i`,
/// together with the data of a lower bound of Matveev type.
#[derive(Clone, Debug)]
pub struct MatveevInstance {
    pub alphas: Vec<PosRational>,
    pub b_coeffs: Vec<BigInt>,
    /// Degree of the number field; always 1 for rational `α_i`.
    pub d: u32,
    /// 1 for real fields, 2 otherwise.
    pub kappa: u32,
    /// Height bounds `A_i ≥ max(D·h(α_i), |log α_i|)`.
    pub a_bounds: Vec<f64>,
}

impl MatveevInstance {
    /// Instance over `ℚ` with the smallest admissible `A_i`.
    pub fn rational(alphas: Vec<PosRational>, b_coeffs: Vec<BigInt>) -> Self {
        let a_bounds = alphas.iter().map(|a| weil_height(a).max(abs_log(a))).collect();
        MatveevInstance {
            alphas,
            b_coeffs,
            d: 1,
            kappa: 1,
            a_bounds,
        }
    }
}

/// The constants of a Matveev lower bound and the bound itself.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MatveevBound {
    pub b_bound: f64,
    pub omega: f64,
    pub c_n: f64,
    pub c0: f64,
    pub w0: f64,
    /// `−C(n)·C0·W0·D²·Ω`, a lower bound for `log |Λ|`.
    pub log_lower_bound: f64,
}

/// `C(n, κ) = 16/(n!·κ)·eⁿ·(2n+1+2κ)(n+2)(4(n+1))^{n+1}(en/2)^κ`.
pub fn matveev_c(n: u32, kappa: u32) -> f64 {
    let (nf, k) = (n as f64, kappa as f64);
    let fact: f64 = (1..=n).map(|i| i as f64).product();
    let e = core::f64::consts::E;
    16.0 / (fact * k)
        * libm::pow(e, nf)
        * (2.0 * nf + 1.0 + 2.0 * k)
        * (nf + 2.0)
        * libm::pow(4.0 * (nf + 1.0), nf + 1.0)
        * libm::pow(e * nf / 2.0, k)
}

/// `C0 = log(e^{4.4n+7}·n^{5.5}·D²·log(eD))`.
pub fn matveev_c0(n: u32, d: u32) -> f64 {
    let (nf, df) = (n as f64, d as f64);
    4.4 * nf + 7.0 + 5.5 * ln_f64(nf) + 2.0 * ln_f64(df) + ln_f64(1.0 + ln_f64(df))
}

/// `W0 = log(1.5·e·B·D·log(eD))`.
pub fn matveev_w0(b: f64, d: u32) -> f64 {
    let df = d as f64;
    ln_f64(1.5) + 1.0 + ln_f64(b) + ln_f64(df) + ln_f64(1.0 + ln_f64(df))
}

/// Matveev's lower bound for `log |Λ|`.
///
/// Checks the height bounds and `b_n ≠ 0`; for rational `α_i` also checks that
/// the logarithms are linearly independent.
pub fn matveev_lower_bound(inst: &MatveevInstance) -> Result<MatveevBound> {
    let n = inst.alphas.len();
    if n == 0 || inst.b_coeffs.len() != n || inst.a_bounds.len() != n {
        return Err(Error::Precondition("mismatched linear form lengths".into()));
    }
    if inst.b_coeffs[n - 1].is_zero() {
        return Err(Error::Precondition("last coefficient b_n is zero".into()));
    }
    if inst.d == 0 || !(inst.kappa == 1 || inst.kappa == 2) {
        return Err(Error::Precondition("degree must be positive and kappa 1 or 2".into()));
    }
    for (a, &big_a) in inst.alphas.iter().zip(&inst.a_bounds) {
        if a.is_one() {
            return Err(Error::Precondition("alpha equal to 1".into()));
        }
        let need = (inst.d as f64 * weil_height(a)).max(abs_log(a));
        if !(big_a >= need * (1.0 - 1e-12)) {
            return Err(Error::Precondition(format!("A = {big_a} below max(D h(alpha), |log alpha|) = {need} for {a}")));
        }
    }
    if !logs_independent(&inst.alphas)? {
        return Err(Error::Precondition("logarithms are linearly dependent".into()));
    }
    let a_n = inst.a_bounds[n - 1];
    let b_bound = inst
        .b_coeffs
        .iter()
        .zip(&inst.a_bounds)
        .map(|(b, a)| b.abs().to_f64().unwrap_or(f64::INFINITY) * a / a_n)
        .fold(1.0f64, f64::max);
    let omega: f64 = inst.a_bounds.iter().product();
    let c_n = matveev_c(n as u32, inst.kappa);
    let c0 = matveev_c0(n as u32, inst.d);
    let w0 = matveev_w0(b_bound, inst.d);
    let d2 = (inst.d as f64) * (inst.d as f64);
    Ok(MatveevBound {
        b_bound,
        omega,
        c_n,
        c0,
        w0,
        log_lower_bound: -c_n * c0 * w0 * d2 * omega,
    })
}

/// The two-logarithm form `b_2 log α_2 − b_1 log α_1`.
#[derive(Clone, Debug)]
pub struct LaurentInstance {
    pub alpha1: PosRational,
    pub alpha2: PosRational,
    pub b1: BigUint,
    pub b2: BigUint,
    pub d: u32,
    pub log_a1: f64,
    pub log_a2: f64,
}

impl LaurentInstance {
    /// Instance over `ℚ` with the smallest admissible `log A_i`.
    pub fn rational(alpha1: PosRational, alpha2: PosRational, b1: BigUint, b2: BigUint) -> Self {
        let least = |a: &PosRational| weil_height(a).max(abs_log(a)).max(1.0);
        LaurentInstance {
            log_a1: least(&alpha1),
            log_a2: least(&alpha2),
            alpha1,
            alpha2,
            b1,
            b2,
            d: 1,
        }
    }
}

/// The quantities of the two-logarithm bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LaurentBound {
    pub b_prime: f64,
    pub log_b: f64,
    /// `−24.34·D⁴·(log b)²·log A_1·log A_2`. The bound itself is the
    /// exponential of this, which underflows `f64` in realistic regimes.
    pub log_lower_bound: f64,
}

impl LaurentBound {
    pub fn lower_bound(&self) -> f64 {
        libm::exp(self.log_lower_bound)
    }
}

/// The numerical constant of the two-logarithm bound.
pub const LAURENT_CONSTANT: f64 = 24.34;

/// Coefficient `c` in `c·(log n)²·log g·log h` obtained from the
/// two-logarithm bound with `α_1 = g`, `α_2 = h`, `D = 1`,
/// `log A_1 = log g`, `log A_2 = log h/log 2` and `log b = 2 log n`:
/// `24.34·2²/log 2 ≈ 140.47`. The threshold derivation needs it below 141.
pub fn two_log_coefficient() -> f64 {
    LAURENT_CONSTANT * 4.0 / core::f64::consts::LN_2
}

/// `log b = max(log b' + 0.14, 21/D, 1/2)`.
pub fn laurent_log_b(b_prime: f64, d: u32) -> f64 {
    (ln_f64(b_prime) + 0.14).max(21.0 / d as f64).max(0.5)
}

/// The lower bound for `|b_2 log α_2 − b_1 log α_1|` due to Laurent,
/// Mignotte and Nesterenko.
pub fn laurent_lower_bound(inst: &LaurentInstance) -> Result<LaurentBound> {
    if inst.d == 0 || inst.b1.is_zero() || inst.b2.is_zero() {
        return Err(Error::Precondition("b1, b2 and D must be positive".into()));
    }
    let df = inst.d as f64;
    for (a, la) in [(&inst.alpha1, inst.log_a1), (&inst.alpha2, inst.log_a2)] {
        let need = weil_height(a).max(abs_log(a) / df).max(1.0 / df);
        if !(la > 0.0 && la >= need * (1.0 - 1e-12)) {
            return Err(Error::Precondition(format!("log A = {la} below {need} for {a}")));
        }
    }
    if !logs_independent(&[inst.alpha1.clone(), inst.alpha2.clone()])? {
        return Err(Error::Precondition("alpha1 and alpha2 are multiplicatively dependent".into()));
    }
    let b1 = inst.b1.to_f64().unwrap_or(f64::INFINITY);
    let b2 = inst.b2.to_f64().unwrap_or(f64::INFINITY);
    let b_prime = b1 / (df * inst.log_a2) + b2 / (df * inst.log_a1);
    let log_b = laurent_log_b(b_prime, inst.d);
    Ok(LaurentBound {
        b_prime,
        log_b,
        log_lower_bound: -LAURENT_CONSTANT * df.powi(4) * log_b * log_b * inst.log_a1 * inst.log_a2,
    })
}

/// Checks `2 ≤ h < g`, `h | g` and multiplicative independence.
pub fn check_family_bases(g: Radix, h: Radix) -> Result<()> {
    if h.get() >= g.get() {
        return Err(Error::Precondition(format!("need h < g, got g = {g}, h = {h}")));
    }
    if g.get() % h.get() != 0 {
        return Err(Error::Precondition(format!("need h | g, got g = {g}, h = {h}")));
    }
    if !multiplicatively_independent(g, h) {
        return Err(Error::DependentBases { g: g.get(), h: h.get() });
    }
    Ok(())
}

struct Logs {
    g: PreciseReal,
    h: PreciseReal,
    a: PreciseReal,
    agh: PreciseReal,
    ln2_cubed: PreciseReal,
}

fn logs(a: &BigUint, g: Radix, h: Radix) -> Result<Logs> {
    if a.is_zero() {
        return Err(Error::NotPositive("a"));
    }
    let ln = |n: BigUint| ln_pos_rational(&PosRational::from_integer(n).expect("positive"), PREC);
    let agh = a * g.as_biguint() * h.as_biguint();
    Ok(Logs {
        g: ln(g.as_biguint()),
        h: ln(h.as_biguint()),
        a: ln(a.clone()),
        agh: ln(agh),
        ln2_cubed: ln(BigUint::from(2u32)).powi(3),
    })
}

fn constant(s: &str) -> PreciseReal {
    PreciseReal::from_decimal(s, PREC).expect("valid literal")
}

fn max_all(terms: &[PreciseReal]) -> PreciseReal {
    let mut it = terms.iter();
    let first = it.next().expect("nonempty").clone();
    it.fold(first, |m, t| m.max(t))
}

/// `log(g·a)/log h`: for `m` above this, `rev(rev(a)_g)_h < h^{m+n_a}`.
pub fn lemma21_threshold(a: &BigUint, g: Radix, h: Radix) -> Result<PreciseReal> {
    let l = logs(a, g, h)?;
    Ok((&l.g + &l.a) / &l.h)
}

/// The four terms of the threshold `C(a, g, h, n)`:
/// `log(ga)/log h`, `log g·(log agh)²/(log 2)³`, `142·(log n)²·log g` and
/// `2.022·10¹⁰·log g·log(agh)·log n`.
///
/// The third term carries the factor `log g` that the derivation of the
/// two-logarithm case produces; it is never smaller than the bare
/// `142·(log n)²`, so the threshold stays on the safe side.
///
/// Internally assumes the coefficient bound `B < 2n` for the three-logarithm
/// form, which holds once `m ≥ 2`; smaller `m` are below the first term.
pub fn lemma_main_terms(a: &BigUint, g: Radix, h: Radix, n: &BigUint) -> Result<[PreciseReal; 4]> {
    check_family_bases(g, h)?;
    if n.is_zero() {
        return Err(Error::NotPositive("n"));
    }
    let l = logs(a, g, h)?;
    let ln_n = ln_pos_rational(&PosRational::from_integer(n.clone())?, PREC);
    Ok([
        (&l.g + &l.a) / &l.h,
        &l.g * &l.agh.powi(2) / &l.ln2_cubed,
        constant("142") * ln_n.powi(2) * &l.g,
        constant("2.022e10") * &l.g * &l.agh * ln_n,
    ])
}

/// `C(a, g, h, n)`: if `N = a·gⁿ + …` has `m > C` zeros after the leading
/// block `a`, it is not a palindrome in base `h`.
pub fn lemma_main_c(a: &BigUint, g: Radix, h: Radix, n: &BigUint) -> Result<PreciseReal> {
    Ok(max_all(&lemma_main_terms(a, g, h, n)?))
}

/// The terms of the final bound for `N = a·gⁿ + rev(a)_g`:
/// `log(ga)/log h`, `log g·(log agh)²/(log 2)³`,
/// `1.91·10⁷·log a·(log log a)³` (only for `a ≥ 3`; `None` otherwise) and
/// `5.11·10¹²·log g·log(agh)·(log(log g·log agh))²`.
pub fn theorem1_terms(a: &BigUint, g: Radix, h: Radix) -> Result<[Option<PreciseReal>; 4]> {
    check_family_bases(g, h)?;
    let l = logs(a, g, h)?;
    let third = if *a >= BigUint::from(3u32) {
        let lla = l.a.ln()?;
        Some(constant("1.91e7") * &l.a * lla.powi(3))
    } else {
        None
    };
    let x = &l.g * &l.agh;
    let lx = x.ln()?;
    Ok([
        Some((&l.g + &l.a) / &l.h),
        Some(&l.g * &l.agh.powi(2) / &l.ln2_cubed),
        third,
        Some(constant("5.11e12") * x * lx.powi(2)),
    ])
}

/// Upper bound for `n` such that `a·gⁿ + rev(a)_g` can be a palindrome in
/// base `h` (the maximum of [`theorem1_terms`]).
pub fn theorem1_bound(a: &BigUint, g: Radix, h: Radix) -> Result<PreciseReal> {
    let terms: Vec<PreciseReal> = theorem1_terms(a, g, h)?.into_iter().flatten().collect();
    Ok(max_all(&terms))
}

/// An upper bound for `n` derived directly from [`lemma_main_c`]: with
/// `m > n − log a/log g − 1`, any `n > C(a,g,h,n) + log a/log g + 1` is
/// excluded. Each term is solved with [`solve_log_majorant`].
///
/// This is the bound the verifier relies on alongside [`theorem1_bound`]:
/// the closed-form coefficients `5.11·10¹²` and `1.91·10⁷` are only claimed
/// for the parameter ranges of the original derivation.
pub fn family_n_bound(a: &BigUint, g: Radix, h: Radix) -> Result<f64> {
    check_family_bases(g, h)?;
    let l = logs(a, g, h)?;
    let shift = (&l.a / &l.g).upper_f64() + 1.0;
    let t1 = ((&l.g + &l.a) / &l.h).upper_f64() + shift;
    let t2 = (&l.g * &l.agh.powi(2) / &l.ln2_cubed).upper_f64() + shift;
    let a3 = (constant("142") * &l.g).upper_f64();
    let a4 = (constant("2.022e10") * &l.g * &l.agh).upper_f64();
    let t3 = solve_log_majorant(a3, shift, LogPower::Square)?;
    let t4 = solve_log_majorant(a4, shift, LogPower::Single)?;
    Ok(t1.max(t2).max(t3).max(t4))
}

/// Which equation [`solve_log_majorant`] bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LogPower {
    /// `n = A·log n + B`.
    Single,
    /// `n = A·(log n)² + B`.
    Square,
}

impl LogPower {
    fn exponent(self) -> i32 {
        match self {
            LogPower::Single => 1,
            LogPower::Square => 2,
        }
    }
}

/// An upper bound for every real solution `n > 1` of `n = A·(log n)^p + B`.
///
/// For `p = 1` this is `C·(log C)²` with `C = A + B/log A`, valid when
/// `C > e²`; for `p = 2` it is `C·(log C)³` with `C = A + B/(log A)²`, valid
/// when `C > 62`. Outside those ranges (or when `A ≤ 1`) the bound is found
/// by bisection on `f(x) = x − A(log x)^p − B`: as `f` is convex on `x > e`,
/// any `x > e` with `f(x) > 0` and `f'(x) > 0` lies beyond the largest root.
pub fn solve_log_majorant(a: f64, b: f64, power: LogPower) -> Result<f64> {
    if !(a > 0.0 && a.is_finite()) || !(b >= 0.0 && b.is_finite()) {
        return Err(Error::Precondition(format!("need A > 0 and B ≥ 0, got A = {a}, B = {b}")));
    }
    let p = power.exponent();
    if a > 1.0 {
        let la = ln_f64(a);
        let c = a + b / la.powi(p);
        let closed = match power {
            LogPower::Single if c > core::f64::consts::E.powi(2) => Some(c * ln_f64(c).powi(2)),
            LogPower::Square if c > 62.0 => Some(c * ln_f64(c).powi(3)),
            _ => None,
        };
        if let Some(x) = closed {
            // Nudge upward past the rounding of the evaluation.
            return Ok(x * (1.0 + 1e-12));
        }
    }
    Ok(majorant_by_bisection(a, b, p))
}

fn majorant_by_bisection(a: f64, b: f64, p: i32) -> f64 {
    let f = |x: f64| x - a * ln_f64(x).powi(p) - b;
    let df = |x: f64| 1.0 - a * p as f64 * ln_f64(x).powi(p - 1) / x;
    // Margins absorb the rounding of `f` and `f'` themselves.
    let safe = |x: f64| x > core::f64::consts::E && f(x) > 1e-9 * x && df(x) > 1e-12;
    let mut lo = core::f64::consts::E;
    let mut hi = 4.0f64.max(2.0 * (a + b));
    while !safe(hi) {
        lo = hi;
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if safe(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}
