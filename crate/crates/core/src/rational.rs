use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

use crate::{Error, Result};

/// An exact positive rational `p/q` in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PositiveRational {
    num: BigUint,
    den: BigUint,
}

impl PositiveRational {
    pub fn new(num: BigUint, den: BigUint) -> Result<PositiveRational> {
        if num.is_zero() || den.is_zero() {
            return Err(Error::Invalid("numerator and denominator must be positive"));
        }
        let g = num.gcd(&den);
        if g.is_one() {
            Ok(PositiveRational { num, den })
        } else {
            Ok(PositiveRational { num: num / &g, den: den / g })
        }
    }

    pub fn from_integer(n: impl Into<BigUint>) -> Result<PositiveRational> {
        PositiveRational::new(n.into(), BigUint::one())
    }

    pub fn from_u64(num: u64, den: u64) -> Result<PositiveRational> {
        PositiveRational::new(BigUint::from(num), BigUint::from(den))
    }

    pub fn one() -> PositiveRational {
        PositiveRational { num: BigUint::one(), den: BigUint::one() }
    }

    #[inline]
    pub fn numer(&self) -> &BigUint {
        &self.num
    }

    #[inline]
    pub fn denom(&self) -> &BigUint {
        &self.den
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    /// `self * factor^exp` for any sign of `exp`.
    pub fn mul_pow(&self, factor: u64, exp: i64) -> PositiveRational {
        let p = Pow::pow(BigUint::from(factor), exp.unsigned_abs());
        if exp >= 0 {
            PositiveRational::new(&self.num * p, self.den.clone())
        } else {
            PositiveRational::new(self.num.clone(), &self.den * p)
        }
        .expect("product of positive values is positive")
    }

    pub fn mul(&self, other: &PositiveRational) -> PositiveRational {
        PositiveRational::new(&self.num * &other.num, &self.den * &other.den)
            .expect("product of positive values is positive")
    }
}

impl Ord for PositiveRational {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl PartialOrd for PositiveRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<u64> for PositiveRational {
    /// # Panics
    /// If `n` is zero.
    fn from(n: u64) -> Self {
        PositiveRational::from_integer(n).expect("zero is not a positive rational")
    }
}

impl fmt::Display for PositiveRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Failure to parse a `p` or `p/q` decimal literal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError(&'static str);

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

impl core::error::Error for ParseRationalError {}

fn parse_decimal(s: &str) -> core::result::Result<BigUint, ParseRationalError> {
    if s.is_empty() || !s.bytes().all(|c| c.is_ascii_digit()) {
        return Err(ParseRationalError("expected a decimal integer or p/q"));
    }
    BigUint::parse_bytes(s.as_bytes(), 10).ok_or(ParseRationalError("invalid integer"))
}

impl FromStr for PositiveRational {
    type Err = ParseRationalError;

    /// Accepts `p` or `p/q` with plain decimal digits; signs, decimal points
    /// and exponents are rejected.
    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((p, q)) => (parse_decimal(p.trim())?, parse_decimal(q.trim())?),
            None => (parse_decimal(s)?, BigUint::one()),
        };
        PositiveRational::new(num, den).map_err(|_| ParseRationalError("value must be positive"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn reduces_to_lowest_terms() {
        let r = PositiveRational::from_u64(6, 4).unwrap();
        assert_eq!(r.numer(), &BigUint::from(3u32));
        assert_eq!(r.denom(), &BigUint::from(2u32));
        assert_eq!(r.to_string(), "3/2");
    }

    #[test]
    fn rejects_zero() {
        assert!(PositiveRational::from_u64(0, 3).is_err());
        assert!(PositiveRational::from_u64(3, 0).is_err());
    }

    #[test]
    fn parsing() {
        assert_eq!("56".parse::<PositiveRational>().unwrap(), PositiveRational::from(56));
        assert_eq!("2/6".parse::<PositiveRational>().unwrap(), PositiveRational::from_u64(1, 3).unwrap());
        for bad in ["1e3", "1.5", "-3", "0", "3/0", "", "/2", "0x10", "+4"] {
            assert!(bad.parse::<PositiveRational>().is_err(), "{bad}");
        }
    }

    #[test]
    fn ordering_cross_multiplies() {
        let a = PositiveRational::from_u64(1, 3).unwrap();
        let b = PositiveRational::from_u64(3, 10).unwrap();
        assert!(a > b);
        assert_eq!(a.mul_pow(10, 1), PositiveRational::from_u64(10, 3).unwrap());
        assert_eq!(a.mul_pow(3, -1), PositiveRational::from_u64(1, 9).unwrap());
    }
}
