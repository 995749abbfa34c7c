//! Exact parsing of the integer arguments accepted on the command line.

use num_bigint::BigUint;
use num_traits::{One, Pow};
use simpal_core::Rational;

/// Why a literal was rejected.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("not a number: {0:?}")]
    Syntax(String),
    #[error("{0:?} is not a non-negative integer")]
    NotInteger(String),
}

/// Parses a non-negative integer written as `123`, `1e18`, `3.09e31`
/// (if exact), `1_000_000` or a power `b^e` such as `6^20`.
pub fn parse_integer(s: &str) -> Result<BigUint, ParseError> {
    let text = s.trim().replace('_', "");
    if let Some((base, exp)) = text.split_once('^') {
        let base = parse_integer(base)?;
        let exp: u32 = exp.trim().parse().map_err(|_| ParseError::Syntax(s.to_string()))?;
        return Ok(Pow::pow(base, exp));
    }
    let r = Rational::from_decimal(&text).map_err(|_| ParseError::Syntax(s.to_string()))?;
    if !r.denom().is_one() {
        return Err(ParseError::NotInteger(s.to_string()));
    }
    r.numer()
        .to_biguint()
        .ok_or_else(|| ParseError::NotInteger(s.to_string()))
}

/// Parses a comma-separated list of bases, e.g. `10,2`.
pub fn parse_base_list(s: &str) -> Result<Vec<u64>, ParseError> {
    s.split(',')
        .map(|t| t.trim().parse::<u64>().map_err(|_| ParseError::Syntax(t.to_string())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(s: &str) -> BigUint {
        s.parse().unwrap()
    }

    #[test]
    fn accepts_the_usual_spellings() {
        assert_eq!(parse_integer("1000").unwrap(), big("1000"));
        assert_eq!(parse_integer("1e18").unwrap(), big("1000000000000000000"));
        assert_eq!(parse_integer("1E5").unwrap(), big("100000"));
        assert_eq!(parse_integer("2.5e1").unwrap(), big("25"));
        assert_eq!(parse_integer("6^20").unwrap(), big("3656158440062976"));
        assert_eq!(parse_integer("3^66").unwrap(), big("30903154382632612361920641803529"));
        assert_eq!(parse_integer("1_000_000").unwrap(), big("1000000"));
    }

    #[test]
    fn rejects_fractions_and_garbage() {
        assert!(matches!(parse_integer("2.5"), Err(ParseError::NotInteger(_))));
        assert!(matches!(parse_integer("-3"), Err(ParseError::NotInteger(_))));
        assert!(matches!(parse_integer("ten"), Err(ParseError::Syntax(_))));
        assert!(matches!(parse_integer("2^x"), Err(ParseError::Syntax(_))));
    }

    #[test]
    fn base_lists() {
        assert_eq!(parse_base_list("10,2").unwrap(), vec![10, 2]);
        assert_eq!(parse_base_list(" 2 , 3 ").unwrap(), vec![2, 3]);
        assert!(parse_base_list("2,,3").is_err());
    }
}
