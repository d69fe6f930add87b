use crate::{Error, Result};

/// Resource caps for the enumerating operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest `b^e` for which a digit set or joint table is materialized.
    pub enumeration: u64,
    /// Largest `x_max` accepted by the brute-force image scan.
    pub scan: u64,
    /// Largest sample count accepted by orbit sampling.
    pub samples: u64,
    /// Largest number of digit tuples for which rectangle measures are built.
    pub tuples: u64,
}

impl Limits {
    pub const DEFAULT: Limits = Limits {
        enumeration: 1 << 24,
        scan: 100_000_000,
        samples: 100_000_000,
        tuples: 1 << 20,
    };

    /// Fails with [`Error::ResourceLimit`] when `requested > cap`.
    pub fn check(what: &'static str, requested: u128, cap: u64) -> Result<()> {
        if requested > cap as u128 {
            Err(Error::ResourceLimit { what, requested, cap })
        } else {
            Ok(())
        }
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits::DEFAULT
    }
}
