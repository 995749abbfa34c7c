//! Prime exponent vectors and multiplicative (in)dependence.
//!
//! Everything here works on the exact prime factorisations of small
//! integers: bases fit in `u32`, and the rationals that arise from the
//! palindrome construction have numerator and denominator below `a·g·h`.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::radix::Radix;
use crate::ratio::{PosRational, Rational};
use crate::{Error, Result};

const TRIAL_LIMIT: u64 = 1 << 20;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent's variant of Pollard's rho; `n` must be composite and odd.
fn rho(n: u64) -> u64 {
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
    }
    unreachable!()
}

fn push_factor(out: &mut Vec<(u64, u32)>, p: u64, e: u32) {
    match out.iter_mut().find(|(q, _)| *q == p) {
        Some((_, k)) => *k += e,
        None => out.push((p, e)),
    }
}

fn factor_large(n: u64, out: &mut Vec<(u64, u32)>) {
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        push_factor(out, n, 1);
        return;
    }
    let d = rho(n);
    factor_large(d, out);
    factor_large(n / d, out);
}

/// Prime factorisation of `n ≥ 1`, primes ascending.
pub fn factorize_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p < TRIAL_LIMIT && p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        if n < TRIAL_LIMIT * TRIAL_LIMIT {
            push_factor(&mut out, n, 1);
        } else {
            factor_large(n, &mut out);
        }
    }
    out.sort_unstable();
    out
}

/// Prime factorisation of `n ≥ 1`. Supports every `n < 2^64` and larger `n`
/// whose cofactor after trial division fits in 64 bits.
pub fn factorize(n: &BigUint) -> Result<Vec<(u64, u32)>> {
    if n.is_zero() {
        return Err(Error::NotPositive("factorised integer"));
    }
    if let Some(small) = n.to_u64() {
        return Ok(factorize_u64(small));
    }
    let mut rest = n.clone();
    let mut out = Vec::new();
    let mut p = 2u64;
    while p < TRIAL_LIMIT {
        let (e, q) = valuation(&rest, p);
        if e > 0 {
            out.push((p, e));
            rest = q;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    match rest.to_u64() {
        Some(small) => {
            factor_large(small, &mut out);
            out.sort_unstable();
            Ok(out)
        }
        None => Err(Error::FactorizationLimit(n.to_str_radix(10))),
    }
}

/// `v_p(n)` and `n / p^v_p(n)`.
pub fn valuation(n: &BigUint, p: u64) -> (u32, BigUint) {
    let p = BigUint::from(p);
    let mut rest = n.clone();
    let mut e = 0;
    if rest.is_zero() {
        return (0, rest);
    }
    loop {
        let (q, r) = rest.div_rem(&p);
        if !r.is_zero() {
            return (e, rest);
        }
        rest = q;
        e += 1;
    }
}

/// How [`prime_exponent_vector`] treats primes missing from the list.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Support {
    /// Ignore prime factors outside the list.
    Projection,
    /// Fail if the value has a prime factor outside the list.
    Full,
}

/// The `p`-adic valuations of `x` at each listed prime (negative for the
/// denominator).
pub fn prime_exponent_vector(x: &PosRational, primes: &[u64], support: Support) -> Result<Vec<i64>> {
    let mut num = x.numer().clone();
    let mut den = x.denom().clone();
    let mut out = Vec::with_capacity(primes.len());
    for &p in primes {
        let (en, rn) = valuation(&num, p);
        let (ed, rd) = valuation(&den, p);
        num = rn;
        den = rd;
        out.push(en as i64 - ed as i64);
    }
    if support == Support::Full && !(num.is_one() && den.is_one()) {
        return Err(Error::Precondition(format!(
            "{x} has prime factors outside {primes:?}"
        )));
    }
    Ok(out)
}

fn primes_of(values: &[u64]) -> Vec<u64> {
    let mut ps: Vec<u64> = values
        .iter()
        .flat_map(|&v| factorize_u64(v).into_iter().map(|(p, _)| p))
        .collect();
    ps.sort_unstable();
    ps.dedup();
    ps
}

fn exponents_u64(v: u64, primes: &[u64]) -> Vec<i64> {
    let f = factorize_u64(v);
    primes
        .iter()
        .map(|p| f.iter().find(|(q, _)| q == p).map_or(0, |&(_, e)| e as i64))
        .collect()
}

fn proportional(u: &[i64], v: &[i64]) -> bool {
    (0..u.len()).all(|i| (i + 1..u.len()).all(|j| u[i] * v[j] == u[j] * v[i]))
}

/// Whether `g^x = h^y` has no solution in positive integers.
pub fn multiplicatively_independent(g: Radix, h: Radix) -> bool {
    let (g, h) = (g.get() as u64, h.get() as u64);
    let primes = primes_of(&[g, h]);
    !proportional(&exponents_u64(g, &primes), &exponents_u64(h, &primes))
}

/// Whether two positive rationals are multiplicatively independent, i.e.
/// `x^u = y^v` forces `u = v = 0`.
pub fn rationals_independent(x: &PosRational, y: &PosRational) -> Result<bool> {
    logs_independent(&[x.clone(), y.clone()])
}

/// Whether `log x_1, …, log x_k` are linearly independent over `ℤ`, i.e. the
/// prime exponent vectors of the `x_i` have full rank.
pub fn logs_independent(xs: &[PosRational]) -> Result<bool> {
    let mut primes: Vec<u64> = Vec::new();
    for x in xs {
        for n in [x.numer(), x.denom()] {
            primes.extend(factorize(n)?.into_iter().map(|(p, _)| p));
        }
    }
    primes.sort_unstable();
    primes.dedup();
    let mut rows = xs
        .iter()
        .map(|x| prime_exponent_vector(x, &primes, Support::Full).map(|v| v.into_iter().map(i128::from).collect()))
        .collect::<Result<Vec<Vec<i128>>>>()?;
    Ok(rank(&mut rows) == xs.len())
}

/// `log x / log y` when it is rational, i.e. when `x^q = y^p` for some
/// integers; `None` when the ratio is irrational. Needs `y ≠ 1`.
pub fn rational_log_ratio(x: &PosRational, y: &PosRational) -> Result<Option<Rational>> {
    if y.is_one() {
        return Err(Error::Precondition("log 1 in a denominator".into()));
    }
    let mut primes: Vec<u64> = Vec::new();
    for n in [x.numer(), x.denom(), y.numer(), y.denom()] {
        primes.extend(factorize(n)?.into_iter().map(|(p, _)| p));
    }
    primes.sort_unstable();
    primes.dedup();
    let u = prime_exponent_vector(x, &primes, Support::Full)?;
    let v = prime_exponent_vector(y, &primes, Support::Full)?;
    if !proportional(&u, &v) {
        return Ok(None);
    }
    let i = v.iter().position(|&e| e != 0).expect("y is not 1");
    let sign = if (u[i] < 0) != (v[i] < 0) && u[i] != 0 { Sign::Minus } else { Sign::Plus };
    let num = BigInt::from_biguint(sign, BigUint::from(u[i].unsigned_abs()));
    Rational::new(num, BigUint::from(v[i].unsigned_abs())).map(Some)
}

/// Rank of an integer matrix by fraction-free elimination (rows are
/// reduced by their gcd after every step to keep entries small).
fn rank(rows: &mut [Vec<i128>]) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            let f = row[c];
            if f == 0 {
                continue;
            }
            for (x, &y) in row.iter_mut().zip(&pivot) {
                *x = *x * pivot[c] - f * y;
            }
            let g = row.iter().fold(0i128, |g, &x| g.gcd(&x));
            if g > 1 {
                row.iter_mut().for_each(|x| *x /= g);
            }
        }
        rank += 1;
    }
    rank
}

/// Integers with `α^r = g^s·h^t`, `r > 0` and `gcd(r, s, t) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DependenceWitness {
    pub r: i64,
    pub s: i64,
    pub t: i64,
    /// Set when `α = 1`, so that `log α = 0` and the relation is `(1, 0, 0)`.
    pub degenerate: bool,
}

impl DependenceWitness {
    /// Checks `α^r = g^s·h^t` in exact integer arithmetic.
    pub fn verify(&self, alpha: &PosRational, g: Radix, h: Radix) -> bool {
        if self.r <= 0 {
            return false;
        }
        let pow = |b: Radix, e: i64| g_pow(b, e.unsigned_abs());
        let mut lhs = num_traits::pow(alpha.numer().clone(), self.r as usize);
        let mut rhs = num_traits::pow(alpha.denom().clone(), self.r as usize);
        for (b, e) in [(g, self.s), (h, self.t)] {
            if e >= 0 {
                rhs *= pow(b, e);
            } else {
                lhs *= pow(b, e);
            }
        }
        lhs == rhs
    }

    /// The magnitude bounds for `(r, s, t)` when `α = a / rev(rev(a)_g)_h`:
    /// `|r| ≤ log g·log h·log(agh)/(log 2)³`, `|s| ≤ log h·(log agh)²/(log 2)³`,
    /// `|t| ≤ log g·(log agh)²/(log 2)³`.
    pub fn palindrome_bounds(a: &BigUint, g: Radix, h: Radix) -> [f64; 3] {
        let lg = libm::log(g.get() as f64);
        let lh = libm::log(h.get() as f64);
        let lagh = log_biguint(a) + lg + lh;
        let l2c = libm::pow(core::f64::consts::LN_2, 3.0);
        [lg * lh * lagh / l2c, lh * lagh * lagh / l2c, lg * lagh * lagh / l2c]
    }

    pub fn within_palindrome_bounds(&self, a: &BigUint, g: Radix, h: Radix) -> bool {
        let [br, bs, bt] = Self::palindrome_bounds(a, g, h);
        (self.r.unsigned_abs() as f64) <= br
            && (self.s.unsigned_abs() as f64) <= bs
            && (self.t.unsigned_abs() as f64) <= bt
    }
}

fn g_pow(b: Radix, e: u64) -> BigUint {
    b.pow(e)
}

fn log_biguint(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        libm::log(n.to_f64().unwrap_or(f64::MAX))
    } else {
        let shift = bits - 64;
        libm::log((n >> shift as usize).to_f64().unwrap_or(1.0)) + shift as f64 * core::f64::consts::LN_2
    }
}

/// The relation `α^r = g^s·h^t` with minimal `r > 0`, or `None` when `α`,
/// `g`, `h` are multiplicatively independent.
///
/// Picks two primes of `gh` on which the exponent vectors of `g` and `h` are
/// independent, solves the 2×2 system by Cramer's rule, checks the identity
/// on every prime and divides out the common factor.
pub fn dependence_witness(alpha: &PosRational, g: Radix, h: Radix) -> Result<Option<DependenceWitness>> {
    if !multiplicatively_independent(g, h) {
        return Err(Error::DependentBases { g: g.get(), h: h.get() });
    }
    if alpha.is_one() {
        return Ok(Some(DependenceWitness {
            r: 1,
            s: 0,
            t: 0,
            degenerate: true,
        }));
    }
    let primes = primes_of(&[g.get() as u64, h.get() as u64]);
    let eg = exponents_u64(g.get() as u64, &primes);
    let eh = exponents_u64(h.get() as u64, &primes);
    let ea = match prime_exponent_vector(alpha, &primes, Support::Full) {
        Ok(v) => v,
        Err(_) => return Ok(None),
    };
    let (i, j) = (0..primes.len())
        .flat_map(|i| (i + 1..primes.len()).map(move |j| (i, j)))
        .find(|&(i, j)| eg[i] * eh[j] - eg[j] * eh[i] != 0)
        .expect("independent bases have a nonzero 2x2 minor");
    let mut r = eg[i] * eh[j] - eg[j] * eh[i];
    let mut s = ea[i] * eh[j] - ea[j] * eh[i];
    let mut t = eg[i] * ea[j] - eg[j] * ea[i];
    if (0..primes.len()).any(|k| r * ea[k] != s * eg[k] + t * eh[k]) {
        return Ok(None);
    }
    let d = r.gcd(&s).gcd(&t);
    r /= d;
    s /= d;
    t /= d;
    if r < 0 {
        (r, s, t) = (-r, -s, -t);
    }
    let w = DependenceWitness {
        r,
        s,
        t,
        degenerate: false,
    };
    debug_assert!(w.verify(alpha, g, h));
    Ok(Some(w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radix::reverse_in_base;
    use alloc::vec;
    use rand::{Rng, SeedableRng};

    fn r(b: u64) -> Radix {
        Radix::new(b).unwrap()
    }

    fn q(n: u64, d: u64) -> PosRational {
        PosRational::new(n.into(), d.into()).unwrap()
    }

    #[test]
    fn factorisation() {
        assert_eq!(factorize_u64(1), vec![]);
        assert_eq!(factorize_u64(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize_u64(1_000_000_007), vec![(1_000_000_007, 1)]);
        let p1 = 4_294_967_291u64;
        let p2 = 4_294_967_279u64;
        assert_eq!(factorize_u64(p1 * p2), vec![(p2, 1), (p1, 1)]);
        let big = BigUint::from(u64::MAX) * 6u32;
        let f = factorize(&big).unwrap();
        let back: BigUint = f.iter().map(|&(p, e)| num_traits::pow(BigUint::from(p), e as usize)).product();
        assert_eq!(back, big);
    }

    #[test]
    fn exponent_vectors() {
        assert_eq!(prime_exponent_vector(&q(12, 1), &[2, 3], Support::Projection).unwrap(), vec![2, 1]);
        assert_eq!(prime_exponent_vector(&q(4, 7), &[2, 7], Support::Projection).unwrap(), vec![2, -1]);
        assert_eq!(prime_exponent_vector(&q(5, 1), &[2, 5], Support::Projection).unwrap(), vec![0, 1]);
        assert_eq!(prime_exponent_vector(&q(4, 7), &[2], Support::Projection).unwrap(), vec![2]);
        assert!(prime_exponent_vector(&q(4, 7), &[2], Support::Full).is_err());
    }

    #[test]
    fn base_independence() {
        assert!(multiplicatively_independent(r(10), r(2)));
        assert!(!multiplicatively_independent(r(8), r(2)));
        assert!(multiplicatively_independent(r(6), r(12)));
        assert!(multiplicatively_independent(r(2), r(3)));
        assert!(!multiplicatively_independent(r(4), r(8)));
        for g in [2u64, 3, 5, 10] {
            for k in 2..=4u32 {
                assert!(!multiplicatively_independent(r(g), r(g.pow(k))));
            }
        }
    }

    #[test]
    fn rational_independence() {
        assert!(rationals_independent(&q(3, 1), &q(2, 1)).unwrap());
        assert!(!rationals_independent(&q(4, 1), &q(8, 1)).unwrap());
        assert!(!rationals_independent(&q(4, 9), &q(3, 2)).unwrap());
        assert!(!rationals_independent(&q(1, 1), &q(3, 2)).unwrap());
        assert!(logs_independent(&[q(5, 1), q(2, 1), q(10, 1).recip()]).unwrap() == false);
        assert!(logs_independent(&[q(4, 7), q(2, 1), q(10, 1)]).unwrap());
        assert!(!logs_independent(&[q(1, 1), q(2, 1), q(10, 1)]).unwrap());
    }

    #[test]
    fn witness_examples() {
        let w = dependence_witness(&q(5, 1), r(10), r(2)).unwrap().unwrap();
        assert_eq!((w.r, w.s, w.t, w.degenerate), (1, 1, -1, false));
        assert_eq!(dependence_witness(&q(4, 7), r(10), r(2)).unwrap(), None);
        let w = dependence_witness(&q(1, 1), r(10), r(2)).unwrap().unwrap();
        assert_eq!((w.r, w.s, w.t, w.degenerate), (1, 0, 0, true));
        assert!(matches!(
            dependence_witness(&q(5, 1), r(8), r(2)),
            Err(Error::DependentBases { .. })
        ));
    }

    #[test]
    fn witness_needs_r_above_one() {
        // g = 12 = 2²·3, h = 18 = 2·3²: alpha = 2 gives 2³ = 12²·18⁻¹, so r = 3.
        let w = dependence_witness(&q(2, 1), r(12), r(18)).unwrap().unwrap();
        assert_eq!((w.r, w.s, w.t), (3, 2, -1));
        assert!(w.verify(&q(2, 1), r(12), r(18)));
        let w = dependence_witness(&q(3, 4), r(12), r(18)).unwrap().unwrap();
        assert!(w.verify(&q(3, 4), r(12), r(18)));
        assert!(w.r > 0);
    }

    fn support_in(n: &BigUint, primes: &[u64]) -> bool {
        // Independent oracle: naive trial division over all d.
        let mut x = n.to_u64().unwrap();
        let mut d = 2u64;
        while d * d <= x {
            while x % d == 0 {
                if !primes.contains(&d) {
                    return false;
                }
                x /= d;
            }
            d += 1;
        }
        x == 1 || primes.contains(&x)
    }

    #[test]
    fn random_palindrome_alphas() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(2024);
        let (g, h) = (r(10), r(2));
        let mut done = 0;
        while done < 500 {
            let a: u64 = rng.gen_range(1..1_000_000);
            if a % 10 == 0 {
                continue;
            }
            let a_big = BigUint::from(a);
            let rev = reverse_in_base(&reverse_in_base(&a_big, g).unwrap(), h).unwrap();
            let alpha = PosRational::new(a_big.clone(), rev).unwrap();
            let expect = support_in(alpha.numer(), &[2, 5]) && support_in(alpha.denom(), &[2, 5]);
            let w = dependence_witness(&alpha, g, h).unwrap();
            assert_eq!(w.is_some(), expect, "a = {a}");
            if let Some(w) = w {
                assert!(w.verify(&alpha, g, h));
                assert!(w.within_palindrome_bounds(&a_big, g, h));
            }
            done += 1;
        }
    }
}
