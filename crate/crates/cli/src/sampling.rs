use std::collections::BTreeMap;
use std::ops::Range;

use joint_digits_core::torus::{count_hits, CoverageReport, Sampler};
use joint_digits_core::{Base, Error, Limits};
use rayon::prelude::*;

const MIN_CHUNK: u64 = 50_000;

/// [`joint_digits_core::torus::orbit_sample`] split over disjoint index
/// ranges on the rayon pool. Counts are summed, so the report does not
/// depend on scheduling.
pub fn orbit_sample_parallel(
    bases: &[Base],
    n: u64,
    sampler: &Sampler,
    precision: u32,
    limits: &Limits,
) -> Result<CoverageReport, Error> {
    if n == 0 {
        return Err(Error::Invalid("sample count must be at least 1"));
    }
    Limits::check("samples", n as u128, limits.samples)?;
    let pieces = (rayon::current_num_threads() as u64 * 4).max(1);
    let chunk = (n / pieces).max(MIN_CHUNK);
    let ranges: Vec<Range<u64>> = (0..n).step_by(chunk as usize).map(|s| s..(s + chunk).min(n)).collect();
    let parts = ranges
        .into_par_iter()
        .map(|r| count_hits(bases, sampler, r))
        .collect::<Result<Vec<_>, Error>>()?;
    let mut hits: BTreeMap<Vec<u64>, u64> = BTreeMap::new();
    for part in parts {
        for (k, v) in part {
            *hits.entry(k).or_default() += v;
        }
    }
    CoverageReport::from_counts(bases, sampler.clone(), hits, precision, limits)
}
