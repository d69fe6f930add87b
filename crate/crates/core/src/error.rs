use core::fmt;

/// Errors raised by the library. Negative answers (an unattainable tuple, an
/// exhausted search) are outcomes, not errors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Bases must be at least 3.
    BaseTooSmall(u64),
    /// A digit outside `1..=base-1`.
    DigitOutOfRange { digit: u64, base: u64 },
    /// The same base was given twice.
    DuplicateBase(u64),
    /// Fewer bases than the operation requires.
    TooFewBases { needed: usize, got: usize },
    /// Number of digits does not match the number of bases.
    LengthMismatch { bases: usize, digits: usize },
    /// The pair of bases is multiplicatively independent.
    IndependentBases(u64, u64),
    /// A configured enumeration cap would be exceeded.
    ResourceLimit { what: &'static str, requested: u128, cap: u64 },
    /// Exponent or power does not fit in 64 bits.
    Overflow,
    /// Invalid argument with a short description.
    Invalid(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::BaseTooSmall(b) => write!(f, "base {b} is smaller than 3"),
            Error::DigitOutOfRange { digit, base } => {
                write!(f, "digit {digit} is not in 1..={} for base {base}", base - 1)
            }
            Error::DuplicateBase(b) => write!(f, "base {b} appears more than once"),
            Error::TooFewBases { needed, got } => {
                write!(f, "need at least {needed} bases, got {got}")
            }
            Error::LengthMismatch { bases, digits } => {
                write!(f, "{digits} digits given for {bases} bases")
            }
            Error::IndependentBases(a, b) => {
                write!(f, "bases {a} and {b} are multiplicatively independent")
            }
            Error::ResourceLimit { what, requested, cap } => {
                write!(f, "{what}: {requested} exceeds the configured cap {cap}")
            }
            Error::Overflow => f.write_str("integer overflow"),
            Error::Invalid(msg) => f.write_str(msg),
        }
    }
}

impl core::error::Error for Error {}
