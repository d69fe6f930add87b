//! The image of the joint digit map `x -> (d_b1(x), d_b2(x))` for a dependent
//! pair `b1 = a^e1`, `b2 = a^e2`.
//!
//! Two independent routes:
//!
//! * power-interval criterion: `(j1, j2)` is attained iff some integer `c`
//!   has `j1 / (j2 + 1) < a^c < (j1 + 1) / j2`;
//! * combined-base table: tabulate every digit `D` of the base
//!   `b = b1^e2 = b2^e1` and refine it to both bases.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::Pow;

use crate::dependence::{pair_dependence, DependencePair};
use crate::digits::{refine_raw, runs_of};
use crate::{Base, Digit, Error, Limits, Result};

/// A pair of digit values `(j1, j2)`.
pub type DigitPair = (u64, u64);

/// Outcome of the power-interval test for one pair of digits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttainabilityVerdict {
    pub pair: (Digit, Digit),
    pub attainable: bool,
    /// Smallest `c` in the window satisfying the criterion.
    pub certificate: Option<i64>,
    /// Inclusive window `(c_min, c_max)`; no admissible `c` lies outside it.
    pub scan_range: (i64, i64),
}

/// Exact test of `j1 / (j2 + 1) < a^c < (j1 + 1) / j2`.
pub fn power_criterion_holds(a: u64, c: i64, j1: u64, j2: u64) -> bool {
    let p = Pow::pow(BigUint::from(a), c.unsigned_abs());
    let (j1, j2) = (BigUint::from(j1), BigUint::from(j2));
    if c >= 0 {
        // j1 < a^c (j2 + 1)  and  a^c j2 < j1 + 1
        j1 < &p * (&j2 + 1u32) && &p * &j2 < j1 + 1u32
    } else {
        // j1 a^|c| < j2 + 1  and  j2 < (j1 + 1) a^|c|
        &j1 * &p < &j2 + 1u32 && j2 < (j1 + 1u32) * p
    }
}

/// Scan window for `c`. Since `j1 / (j2 + 1) >= 1 / b2 = a^-e2` and
/// `(j1 + 1) / j2 <= b1 = a^e1`, any admissible `c` satisfies `-e2 < c < e1`.
pub fn scan_window(dep: &DependencePair) -> (i64, i64) {
    let (e1, e2) = dep.exponents();
    (-(e2 as i64) - 1, e1 as i64 + 1)
}

/// Decides whether `(j1, j2)` is attained for a dependent pair.
pub fn attainable_by_power_criterion(
    dep: &DependencePair,
    j1: Digit,
    j2: Digit,
) -> Result<AttainabilityVerdict> {
    let (b1, b2) = dep.bases();
    if j1.base() != b1 || j2.base() != b2 {
        return Err(Error::Invalid("digits do not match the certificate's bases"));
    }
    let scan_range = scan_window(dep);
    let certificate = (scan_range.0..=scan_range.1)
        .find(|&c| power_criterion_holds(dep.a(), c, j1.value(), j2.value()));
    Ok(AttainabilityVerdict {
        pair: (j1, j2),
        attainable: certificate.is_some(),
        certificate,
        scan_range,
    })
}

/// Every digit of the combined base mapped to its pair of refined digits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointTable {
    dep: DependencePair,
    combined_base: u64,
    cells: Vec<DigitPair>,
}

impl JointTable {
    pub fn dependence(&self) -> &DependencePair {
        &self.dep
    }

    pub fn combined_base(&self) -> u64 {
        self.combined_base
    }

    /// Pair of digits for the combined-base digit `d` in `1..b`.
    pub fn cell(&self, d: u64) -> Option<DigitPair> {
        d.checked_sub(1).and_then(|i| self.cells.get(i as usize)).copied()
    }

    /// `(D, (j1, j2))` for `D = 1, 2, ..., b - 1`.
    pub fn iter(&self) -> impl Iterator<Item = (u64, DigitPair)> + '_ {
        self.cells.iter().enumerate().map(|(i, &p)| (i as u64 + 1, p))
    }

    /// Rebuilds a table from [`cell_runs`](Self::cell_runs) output, checking
    /// that the runs cover `1..b` exactly once and agree with refinement.
    pub fn from_runs(dep: &DependencePair, runs: &BTreeMap<DigitPair, Vec<(u64, u64)>>) -> Result<JointTable> {
        let combined = dep.combined_base_u64().ok_or(Error::Overflow)?;
        let mut cells: Vec<Option<DigitPair>> = alloc::vec![None; combined.saturating_sub(1) as usize];
        for (&pair, list) in runs {
            for &(first, last) in list {
                if first == 0 || first > last || last >= combined {
                    return Err(Error::Invalid("run outside 1..b"));
                }
                for d in first..=last {
                    let slot = &mut cells[(d - 1) as usize];
                    if slot.is_some() {
                        return Err(Error::Invalid("digit listed in two cells"));
                    }
                    *slot = Some(pair);
                }
            }
        }
        let cells: Vec<DigitPair> =
            cells.into_iter().collect::<Option<_>>().ok_or(Error::Invalid("runs do not cover 1..b"))?;
        let (b1, b2) = dep.bases();
        for (i, &(j1, j2)) in cells.iter().enumerate() {
            let d = i as u64 + 1;
            if refine_raw(d, b1).value() != j1 || refine_raw(d, b2).value() != j2 {
                return Err(Error::Invalid("cell disagrees with digit refinement"));
            }
        }
        Ok(JointTable { dep: *dep, combined_base: combined, cells })
    }

    /// For each attained pair, the maximal runs of combined-base digits
    /// mapping to it. Pairs absent from the map are not attained.
    pub fn cell_runs(&self) -> BTreeMap<DigitPair, Vec<(u64, u64)>> {
        let mut members: BTreeMap<DigitPair, Vec<u64>> = BTreeMap::new();
        for (d, pair) in self.iter() {
            members.entry(pair).or_default().push(d);
        }
        members.into_iter().map(|(k, v)| (k, runs_of(&v))).collect()
    }
}

/// Tabulates the combined base `b = b1^e2 = b2^e1`.
pub fn joint_table(dep: &DependencePair, limits: &Limits) -> Result<JointTable> {
    let combined = dep.combined_base();
    let combined = match dep.combined_base_u64() {
        Some(b) => b,
        None => {
            let requested = u128::try_from(combined).unwrap_or(u128::MAX);
            return Err(Error::ResourceLimit {
                what: "combined base",
                requested,
                cap: limits.enumeration,
            });
        }
    };
    Limits::check("combined base", combined as u128, limits.enumeration)?;
    let (b1, b2) = dep.bases();
    let cells = (1..combined)
        .map(|d| (refine_raw(d, b1).value(), refine_raw(d, b2).value()))
        .collect();
    Ok(JointTable { dep: *dep, combined_base: combined, cells })
}

/// The image read off the combined-base table.
pub fn image_via_table(dep: &DependencePair, limits: &Limits) -> Result<BTreeSet<DigitPair>> {
    Ok(joint_table(dep, limits)?.cells.into_iter().collect())
}

/// Why a pair is attained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Certificate {
    /// An integer `c` satisfying the power-interval criterion.
    Power(i64),
    /// The bases are independent, so every pair is attained.
    Density,
}

/// Attained and excluded digit pairs for two bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageReport {
    pub bases: (Base, Base),
    pub dependence: Option<DependencePair>,
    pub attainable: BTreeMap<DigitPair, Certificate>,
    pub excluded: BTreeSet<DigitPair>,
}

impl ImageReport {
    pub fn counts(&self) -> (usize, usize) {
        (self.attainable.len(), self.excluded.len())
    }

    pub fn is_surjective(&self) -> bool {
        self.excluded.is_empty()
    }

    pub fn attainable_set(&self) -> BTreeSet<DigitPair> {
        self.attainable.keys().copied().collect()
    }
}

fn pair_count(b1: Base, b2: Base, limits: &Limits) -> Result<()> {
    let n = (b1.digit_count() as u128) * (b2.digit_count() as u128);
    Limits::check("digit pairs", n, limits.tuples)
}

/// Exact image for a dependent pair by the power-interval criterion. Fails
/// with [`Error::IndependentBases`] when the pair is independent.
pub fn image_exact(b1: Base, b2: Base, limits: &Limits) -> Result<ImageReport> {
    let dep = pair_dependence(b1, b2)?.ok_or(Error::IndependentBases(b1.get(), b2.get()))?;
    pair_count(b1, b2, limits)?;
    let mut attainable = BTreeMap::new();
    let mut excluded = BTreeSet::new();
    for j1 in 1..b1.get() {
        for j2 in 1..b2.get() {
            let v = attainable_by_power_criterion(
                &dep,
                Digit::new_unchecked(j1, b1),
                Digit::new_unchecked(j2, b2),
            )?;
            match v.certificate {
                Some(c) => {
                    attainable.insert((j1, j2), Certificate::Power(c));
                }
                None => {
                    excluded.insert((j1, j2));
                }
            }
        }
    }
    Ok(ImageReport { bases: (b1, b2), dependence: Some(dep), attainable, excluded })
}

/// Like [`image_exact`], but an independent pair yields the full codomain
/// with [`Certificate::Density`] on every pair.
pub fn image_report(b1: Base, b2: Base, limits: &Limits) -> Result<ImageReport> {
    match image_exact(b1, b2, limits) {
        Err(Error::IndependentBases(..)) => {
            pair_count(b1, b2, limits)?;
            let attainable = (1..b1.get())
                .flat_map(|j1| (1..b2.get()).map(move |j2| ((j1, j2), Certificate::Density)))
                .collect();
            Ok(ImageReport { bases: (b1, b2), dependence: None, attainable, excluded: BTreeSet::new() })
        }
        other => other,
    }
}
