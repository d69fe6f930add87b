//! Multiplicative dependence between bases.
//!
//! `ln b1 / ln b2` is rational iff `b1 = a^e1` and `b2 = a^e2` for some integer
//! `a >= 2` with `gcd(e1, e2) = 1`. Both bases are reduced to their perfect-power
//! canonical form `root^g` with `root` not itself a perfect power; the pair is
//! dependent iff the roots coincide.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_integer::{Integer, Roots};
use num_traits::Pow;

use crate::{Base, Error, Result};

/// `base = root^exponent` with `root` not a perfect power.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimitiveRoot {
    pub root: u64,
    pub exponent: u32,
}

/// Canonical perfect-power form of a base. Tries exact `k`-th roots from the
/// largest feasible `k` downwards; the first hit has a root that cannot be a
/// perfect power, since otherwise a larger `k` would have matched.
pub fn primitive_root(b: Base) -> PrimitiveRoot {
    let n = b.get();
    let max_k = 63 - n.leading_zeros();
    for k in (2..=max_k).rev() {
        let r = n.nth_root(k);
        if r >= 2 && r.checked_pow(k) == Some(n) {
            return PrimitiveRoot { root: r, exponent: k };
        }
    }
    PrimitiveRoot { root: n, exponent: 1 }
}

/// Certificate `b1 = a^e1`, `b2 = a^e2`, `gcd(e1, e2) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DependencePair {
    b1: Base,
    b2: Base,
    a: u64,
    e1: u32,
    e2: u32,
}

impl DependencePair {
    /// Builds a certificate from `(a, e1, e2)`, checking every invariant.
    pub fn new(a: u64, e1: u32, e2: u32) -> Result<DependencePair> {
        if a < 2 || e1 == 0 || e2 == 0 {
            return Err(Error::Invalid("need a >= 2 and positive exponents"));
        }
        if e1.gcd(&e2) != 1 {
            return Err(Error::Invalid("exponents must be coprime"));
        }
        let b1 = Base::new(a.checked_pow(e1).ok_or(Error::Overflow)?)?;
        let b2 = Base::new(a.checked_pow(e2).ok_or(Error::Overflow)?)?;
        if b1 == b2 {
            return Err(Error::DuplicateBase(b1.get()));
        }
        Ok(DependencePair { b1, b2, a, e1, e2 })
    }

    pub fn bases(&self) -> (Base, Base) {
        (self.b1, self.b2)
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn exponents(&self) -> (u32, u32) {
        (self.e1, self.e2)
    }

    /// `b = b1^e2 = b2^e1 = a^(e1 e2)`.
    pub fn combined_base(&self) -> BigUint {
        Pow::pow(BigUint::from(self.a), (self.e1 as u64) * (self.e2 as u64))
    }

    /// [`combined_base`](Self::combined_base) when it fits in 64 bits.
    pub fn combined_base_u64(&self) -> Option<u64> {
        self.a.checked_pow(self.e1.checked_mul(self.e2)?)
    }

    /// The same certificate with the bases swapped.
    pub fn swapped(&self) -> DependencePair {
        DependencePair { b1: self.b2, b2: self.b1, a: self.a, e1: self.e2, e2: self.e1 }
    }
}

/// Decides dependence of two distinct bases; `None` certifies that `ln b1`
/// and `ln b2` are rationally independent.
pub fn pair_dependence(b1: Base, b2: Base) -> Result<Option<DependencePair>> {
    if b1 == b2 {
        return Err(Error::DuplicateBase(b1.get()));
    }
    let r1 = primitive_root(b1);
    let r2 = primitive_root(b2);
    if r1.root != r2.root {
        return Ok(None);
    }
    let g = r1.exponent.gcd(&r2.exponent);
    let a = r1.root.pow(g);
    Ok(Some(DependencePair { b1, b2, a, e1: r1.exponent / g, e2: r2.exponent / g }))
}

/// All dependent pairs `(i, j, certificate)` with `i < j` among a base list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DependenceReport {
    pub bases: Vec<Base>,
    pub dependent_pairs: Vec<(usize, usize, DependencePair)>,
}

impl DependenceReport {
    /// True iff no pair of `ln b_i` is rationally dependent, the hypothesis
    /// under which surjectivity for three or more bases is conjectured.
    pub fn pairwise_independent(&self) -> bool {
        self.dependent_pairs.is_empty()
    }
}

pub fn pairwise_report(bases: &[Base]) -> Result<DependenceReport> {
    if bases.len() < 2 {
        return Err(Error::TooFewBases { needed: 2, got: bases.len() });
    }
    let roots: Vec<PrimitiveRoot> = bases.iter().map(|&b| primitive_root(b)).collect();
    let mut dependent_pairs = Vec::new();
    for i in 0..bases.len() {
        for j in i + 1..bases.len() {
            if bases[i] == bases[j] {
                return Err(Error::DuplicateBase(bases[i].get()));
            }
            if roots[i].root == roots[j].root {
                if let Some(dep) = pair_dependence(bases[i], bases[j])? {
                    dependent_pairs.push((i, j, dep));
                }
            }
        }
    }
    Ok(DependenceReport { bases: bases.to_vec(), dependent_pairs })
}
