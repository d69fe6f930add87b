use core::fmt;

use crate::{Error, Result};

/// A positional-notation base, at least 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Base(u64);

impl Base {
    pub fn new(value: u64) -> Result<Base> {
        if value < 3 {
            return Err(Error::BaseTooSmall(value));
        }
        Ok(Base(value))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// `self^e` as a base, if it fits in 64 bits.
    pub fn pow(self, e: u32) -> Result<Base> {
        if e == 0 {
            return Err(Error::Invalid("exponent must be at least 1"));
        }
        self.0.checked_pow(e).map(Base).ok_or(Error::Overflow)
    }

    /// Number of nonzero digits, `b - 1`.
    #[inline]
    pub fn digit_count(self) -> u64 {
        self.0 - 1
    }

    /// Parses a list of distinct bases.
    pub fn distinct(values: &[u64]) -> Result<alloc::vec::Vec<Base>> {
        let mut out: alloc::vec::Vec<Base> = alloc::vec::Vec::with_capacity(values.len());
        for &v in values {
            let b = Base::new(v)?;
            if out.contains(&b) {
                return Err(Error::DuplicateBase(v));
            }
            out.push(b);
        }
        Ok(out)
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// A leading digit `1..=b-1` tied to its base.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Digit {
    value: u64,
    base: Base,
}

impl Digit {
    pub fn new(value: u64, base: Base) -> Result<Digit> {
        if value == 0 || value >= base.get() {
            return Err(Error::DigitOutOfRange { digit: value, base: base.get() });
        }
        Ok(Digit { value, base })
    }

    pub(crate) fn new_unchecked(value: u64, base: Base) -> Digit {
        debug_assert!(value >= 1 && value < base.get());
        Digit { value, base }
    }

    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    #[inline]
    pub fn base(self) -> Base {
        self.base
    }

    /// Pairs each value with the base at the same position.
    pub fn tuple(values: &[u64], bases: &[Base]) -> Result<alloc::vec::Vec<Digit>> {
        if values.len() != bases.len() {
            return Err(Error::LengthMismatch { bases: bases.len(), digits: values.len() });
        }
        values.iter().zip(bases).map(|(&v, &b)| Digit::new(v, b)).collect()
    }
}

impl fmt::Display for Digit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.value, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_bases() {
        assert_eq!(Base::new(2), Err(Error::BaseTooSmall(2)));
        assert_eq!(Base::new(0), Err(Error::BaseTooSmall(0)));
        assert_eq!(Base::new(3).unwrap().get(), 3);
    }

    #[test]
    fn digit_range() {
        let b = Base::new(4).unwrap();
        assert!(Digit::new(0, b).is_err());
        assert!(Digit::new(4, b).is_err());
        assert_eq!(Digit::new(3, b).unwrap().value(), 3);
    }

    #[test]
    fn duplicates_rejected() {
        assert_eq!(Base::distinct(&[4, 8, 4]), Err(Error::DuplicateBase(4)));
        assert_eq!(Base::distinct(&[4, 2]), Err(Error::BaseTooSmall(2)));
    }

    #[test]
    fn pow_overflow() {
        let b = Base::new(10).unwrap();
        assert_eq!(b.pow(19).unwrap().get(), 10_000_000_000_000_000_000);
        assert_eq!(b.pow(20), Err(Error::Overflow));
    }
}
