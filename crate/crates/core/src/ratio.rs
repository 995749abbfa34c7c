//! Exact rationals in lowest terms.

use core::cmp::Ordering;
use core::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// A strictly positive rational `num/den` with `gcd(num, den) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PosRational {
    num: BigUint,
    den: BigUint,
}

impl PosRational {
    pub fn new(num: BigUint, den: BigUint) -> Result<Self> {
        if num.is_zero() {
            return Err(Error::NotPositive("numerator"));
        }
        if den.is_zero() {
            return Err(Error::NotPositive("denominator"));
        }
        let g = num.gcd(&den);
        Ok(PosRational {
            num: num / &g,
            den: den / g,
        })
    }

    pub fn from_integer(n: impl Into<BigUint>) -> Result<Self> {
        Self::new(n.into(), BigUint::one())
    }

    pub fn one() -> Self {
        PosRational {
            num: BigUint::one(),
            den: BigUint::one(),
        }
    }

    pub fn numer(&self) -> &BigUint {
        &self.num
    }

    pub fn denom(&self) -> &BigUint {
        &self.den
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn recip(&self) -> Self {
        PosRational {
            num: self.den.clone(),
            den: self.num.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.num * &other.num, &self.den * &other.den).expect("product of positives")
    }

    pub fn pow(&self, e: u32) -> Self {
        PosRational {
            num: num_traits::pow(self.num.clone(), e as usize),
            den: num_traits::pow(self.den.clone(), e as usize),
        }
    }
}

impl PartialOrd for PosRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PosRational {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl fmt::Display for PosRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// A signed rational in lowest terms with positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rational {
    num: BigInt,
    den: BigUint,
}

impl Rational {
    pub fn new(num: BigInt, den: BigUint) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::NotPositive("denominator"));
        }
        let g = num.magnitude().gcd(&den);
        if g.is_zero() {
            return Ok(Rational {
                num,
                den: BigUint::one(),
            });
        }
        let mag = num.magnitude() / &g;
        Ok(Rational {
            num: BigInt::from_biguint(num.sign(), mag),
            den: den / g,
        })
    }

    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    pub fn denom(&self) -> &BigUint {
        &self.den
    }

    /// Parses `123`, `-4.5`, `2.022e10` or `1.06E+16` exactly.
    pub fn from_decimal(s: &str) -> Result<Self> {
        let bad = || Error::Precondition(alloc::format!("not a decimal number: {s:?}"));
        let s = s.trim();
        let (mant, exp) = match s.find(['e', 'E']) {
            Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
            None => (s, 0),
        };
        let (neg, mant) = match mant.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, mant.strip_prefix('+').unwrap_or(mant)),
        };
        let (int_part, frac_part) = match mant.find('.') {
            Some(i) => (&mant[..i], &mant[i + 1..]),
            None => (mant, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        let mut digits = BigUint::zero();
        for c in int_part.chars().chain(frac_part.chars()) {
            let d = c.to_digit(10).ok_or_else(bad)?;
            digits = digits * 10u32 + d;
        }
        let scale = exp - frac_part.len() as i32;
        let ten = BigUint::from(10u32);
        let (num, den) = if scale >= 0 {
            (digits * num_traits::pow(ten, scale as usize), BigUint::one())
        } else {
            (digits, num_traits::pow(ten, (-scale) as usize))
        };
        let sign = if neg { Sign::Minus } else { Sign::Plus };
        Rational::new(BigInt::from_biguint(sign, num), den)
    }
}

impl From<PosRational> for Rational {
    fn from(x: PosRational) -> Self {
        Rational {
            num: BigInt::from(x.num),
            den: x.den,
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_to_lowest_terms() {
        let x = PosRational::new(12u32.into(), 8u32.into()).unwrap();
        assert_eq!(x.numer(), &BigUint::from(3u32));
        assert_eq!(x.denom(), &BigUint::from(2u32));
        assert!(PosRational::new(0u32.into(), 1u32.into()).is_err());
    }

    #[test]
    fn parses_decimal_literals() {
        let x = Rational::from_decimal("2.022e10").unwrap();
        assert_eq!(x.numer(), &BigInt::from(20_220_000_000u64));
        let y = Rational::from_decimal("-1.152").unwrap();
        assert_eq!(y.numer(), &BigInt::from(-144));
        assert_eq!(y.denom(), &BigUint::from(125u32));
        assert!(Rational::from_decimal("1.2.3").is_err());
        assert!(Rational::from_decimal("e5").is_err());
    }
}
