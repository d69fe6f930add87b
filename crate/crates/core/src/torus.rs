//! Torus diagnostics for the joint digit map.
//!
//! With `h(x) = (log_b1 x, ..., log_bn x) mod 1`, `d_B(x) = (j_1, ..., j_n)` iff
//! `h(x)` lies in the box `R(j) = prod_i [log_bi j_i, log_bi (j_i + 1))`. The
//! boxes partition the torus and `R(j)` has measure
//! `prod_i log_bi (1 + 1/j_i)`. Everything here is a diagnostic: reals are
//! certified intervals, and a point too close to a box boundary is reported
//! as ambiguous instead of being classified.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::ops::Range;

use num_bigint::BigUint;
use num_traits::{One, Pow};

use crate::digits::{leading_digit, leading_digit_u64};
use crate::real::Interval;
use crate::{Base, Digit, Error, Limits, PositiveRational, Result};

pub const DEFAULT_PRECISION: u32 = 128;

/// `omega_i = 1 / ln b_i`, so that `t * omega_i = log_bi e^t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencyVector {
    pub omega: Vec<Interval>,
    pub precision: u32,
}

impl FrequencyVector {
    pub fn new(bases: &[Base], precision: u32) -> FrequencyVector {
        let omega = bases
            .iter()
            .map(|&b| {
                Interval::ln(&PositiveRational::from(b.get()), precision)
                    .recip()
                    .expect("ln b > 0")
            })
            .collect();
        FrequencyVector { omega, precision }
    }

    /// Torus point `h(x)`, or `None` if some coordinate straddles an integer.
    pub fn point(&self, x: &PositiveRational) -> Option<Vec<Interval>> {
        let ln_x = Interval::ln(x, self.precision);
        self.omega.iter().map(|w| ln_x.mul(w).fract()).collect()
    }
}

/// The box of the torus that corresponds to one digit tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rectangle {
    pub bases: Vec<Base>,
    pub target: Vec<Digit>,
    /// `(log_b j, log_b (j + 1))` per coordinate.
    pub sides: Vec<(Interval, Interval)>,
    /// `log_b (1 + 1/j)` per coordinate.
    pub side_measures: Vec<Interval>,
}

fn log_digit(j: u64, b: Base, precision: u32) -> Interval {
    Interval::log(&PositiveRational::from(j), b.get(), precision)
}

fn side_measure(j: u64, b: Base, precision: u32) -> Interval {
    let ratio = PositiveRational::from_u64(j + 1, j).expect("positive");
    Interval::log(&ratio, b.get(), precision)
}

impl Rectangle {
    pub fn measure(&self) -> Interval {
        let bits = self.side_measures[0].bits();
        self.side_measures.iter().fold(Interval::from_integer(1, bits), |acc, m| acc.mul(m))
    }

    /// Certified membership of a torus point.
    pub fn classify(&self, point: &[Interval]) -> Membership {
        let mut ambiguous = false;
        for (theta, (lo, hi)) in point.iter().zip(&self.sides) {
            let ge_lo = theta.certainly_lt(lo).map(|lt| !lt);
            let lt_hi = theta.certainly_lt(hi);
            match (ge_lo, lt_hi) {
                (Some(false), _) | (_, Some(false)) => return Membership::Outside,
                (Some(true), Some(true)) => {}
                _ => ambiguous = true,
            }
        }
        if ambiguous {
            Membership::BoundaryAmbiguous
        } else {
            Membership::Inside
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    Inside,
    Outside,
    BoundaryAmbiguous,
}

fn check_target(bases: &[Base], target: &[Digit]) -> Result<()> {
    if bases.is_empty() {
        return Err(Error::TooFewBases { needed: 1, got: 0 });
    }
    if bases.len() != target.len() {
        return Err(Error::LengthMismatch { bases: bases.len(), digits: target.len() });
    }
    if bases.iter().zip(target).any(|(&b, d)| d.base() != b) {
        return Err(Error::Invalid("digit does not belong to the base at its position"));
    }
    Ok(())
}

pub fn rectangle_of(bases: &[Base], target: &[Digit], precision: u32) -> Result<Rectangle> {
    check_target(bases, target)?;
    let sides = bases
        .iter()
        .zip(target)
        .map(|(&b, d)| (log_digit(d.value(), b, precision), log_digit(d.value() + 1, b, precision)))
        .collect();
    let side_measures = bases.iter().zip(target).map(|(&b, d)| side_measure(d.value(), b, precision)).collect();
    Ok(Rectangle { bases: bases.to_vec(), target: target.to_vec(), sides, side_measures })
}

/// Result of locating `h(x)` among the boxes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PointClass {
    /// `h(x)` lies in the box of this tuple.
    Unambiguous(Vec<u64>),
    /// `h(x)` is within the error radius of a boundary.
    BoundaryAmbiguous,
}

/// Locates `h(x)` by binary search over the box boundaries of each
/// coordinate, using only certified logarithms.
pub fn classify_point(x: &PositiveRational, bases: &[Base], precision: u32) -> PointClass {
    let fv = FrequencyVector::new(bases, precision);
    let Some(point) = fv.point(x) else { return PointClass::BoundaryAmbiguous };
    let mut tuple = Vec::with_capacity(bases.len());
    for (theta, &b) in point.iter().zip(bases) {
        // invariant: log_b lo <= theta < log_b hi
        let (mut lo, mut hi) = (1u64, b.get());
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            let edge = log_digit(mid, b, precision);
            match theta.certainly_lt(&edge) {
                Some(true) => hi = mid,
                Some(false) => lo = mid,
                None => return PointClass::BoundaryAmbiguous,
            }
        }
        tuple.push(lo);
    }
    PointClass::Unambiguous(tuple)
}

/// Certified measures of every box, keyed by digit tuple.
pub fn rectangle_measures(
    bases: &[Base],
    precision: u32,
    limits: &Limits,
) -> Result<BTreeMap<Vec<u64>, Interval>> {
    if bases.is_empty() {
        return Err(Error::TooFewBases { needed: 1, got: 0 });
    }
    let count = bases.iter().try_fold(1u128, |acc, b| acc.checked_mul(b.digit_count() as u128));
    Limits::check("digit tuples", count.unwrap_or(u128::MAX), limits.tuples)?;
    let per_base: Vec<Vec<Interval>> = bases
        .iter()
        .map(|&b| (1..b.get()).map(|j| side_measure(j, b, precision)).collect())
        .collect();
    let mut out = BTreeMap::new();
    let mut idx = alloc::vec![0usize; bases.len()];
    loop {
        let tuple: Vec<u64> = idx.iter().map(|&i| i as u64 + 1).collect();
        let m = idx
            .iter()
            .zip(&per_base)
            .fold(Interval::from_integer(1, precision), |acc, (&i, ms)| acc.mul(&ms[i]));
        out.insert(tuple, m);
        // odometer increment, last coordinate fastest
        let mut pos = bases.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < per_base[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Sum of all box measures; encloses 1.
pub fn measure_sum(bases: &[Base], precision: u32, limits: &Limits) -> Result<Interval> {
    let measures = rectangle_measures(bases, precision, limits)?;
    Ok(measures.values().fold(Interval::from_integer(0, precision), |acc, m| acc.add(m)))
}

/// How sample points are generated. Sample `m` counts from 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sampler {
    /// `x = m + 1`.
    IntegerScan,
    /// `x = start * ratio^m`.
    Geometric { start: PositiveRational, ratio: PositiveRational },
    /// `x = 1 + u_m (L - 1)` with `u_m` the base-2 van der Corput sequence
    /// (`u_0 = 0`) and `L` the product of the bases.
    LowDiscrepancy,
}

impl Sampler {
    pub fn geometric_default() -> Sampler {
        Sampler::Geometric { start: PositiveRational::one(), ratio: PositiveRational::from(2) }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Sampler::IntegerScan => "integer-scan",
            Sampler::Geometric { .. } => "geometric",
            Sampler::LowDiscrepancy => "low-discrepancy",
        }
    }
}

fn van_der_corput(m: u64) -> PositiveRational {
    // u_m = reversed binary digits of m; rescaled below so that x >= 1
    if m == 0 {
        return PositiveRational::from_u64(1, 1).expect("positive");
    }
    let bits = 64 - m.leading_zeros();
    let rev = m.reverse_bits() >> (64 - bits);
    PositiveRational::new(BigUint::from(rev), BigUint::one() << bits).expect("rev > 0")
}

fn low_discrepancy_point(m: u64, span: &BigUint) -> PositiveRational {
    if m == 0 {
        return PositiveRational::one();
    }
    let u = van_der_corput(m);
    // 1 + u (L - 1) = (den + num (L - 1)) / den
    let num = u.denom() + u.numer() * (span - 1u32);
    PositiveRational::new(num, u.denom().clone()).expect("positive")
}

/// Hit counts per digit tuple for sample indices in `range`. Splitting the
/// index range and adding the maps gives the same result as one call.
pub fn count_hits(bases: &[Base], sampler: &Sampler, range: Range<u64>) -> Result<BTreeMap<Vec<u64>, u64>> {
    Base::distinct(&bases.iter().map(|b| b.get()).collect::<Vec<_>>())?;
    let mut hits: BTreeMap<Vec<u64>, u64> = BTreeMap::new();
    let mut buf = alloc::vec![0u64; bases.len()];
    let mut record = |buf: &[u64]| match hits.get_mut(buf) {
        Some(c) => *c += 1,
        None => {
            hits.insert(buf.to_vec(), 1);
        }
    };
    match sampler {
        Sampler::IntegerScan => {
            for m in range {
                let x = m.checked_add(1).ok_or(Error::Overflow)?;
                for (slot, &b) in buf.iter_mut().zip(bases) {
                    *slot = leading_digit_u64(x, b).value();
                }
                record(&buf);
            }
        }
        Sampler::Geometric { start, ratio } => {
            let mut x = PositiveRational::new(
                start.numer() * Pow::pow(ratio.numer(), range.start),
                start.denom() * Pow::pow(ratio.denom(), range.start),
            )?;
            for _ in range {
                for (slot, &b) in buf.iter_mut().zip(bases) {
                    *slot = leading_digit(&x, b).value();
                }
                record(&buf);
                x = x.mul(ratio);
            }
        }
        Sampler::LowDiscrepancy => {
            let span: BigUint = bases.iter().map(|b| BigUint::from(b.get())).product();
            for m in range {
                let x = low_discrepancy_point(m, &span);
                for (slot, &b) in buf.iter_mut().zip(bases) {
                    *slot = leading_digit(&x, b).value();
                }
                record(&buf);
            }
        }
    }
    Ok(hits)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageReport {
    pub bases: Vec<Base>,
    pub sampler: Sampler,
    pub samples: u64,
    pub hit_counts: BTreeMap<Vec<u64>, u64>,
    pub measures: BTreeMap<Vec<u64>, Interval>,
}

impl CoverageReport {
    /// Assembles a report from precomputed hit counts.
    pub fn from_counts(
        bases: &[Base],
        sampler: Sampler,
        hit_counts: BTreeMap<Vec<u64>, u64>,
        precision: u32,
        limits: &Limits,
    ) -> Result<CoverageReport> {
        let measures = rectangle_measures(bases, precision, limits)?;
        let samples = hit_counts.values().sum();
        Ok(CoverageReport { bases: bases.to_vec(), sampler, samples, hit_counts, measures })
    }

    pub fn rectangles_hit(&self) -> usize {
        self.hit_counts.len()
    }

    pub fn rectangles_total(&self) -> usize {
        self.measures.len()
    }

    /// Tuples never hit by any sample.
    pub fn missed(&self) -> impl Iterator<Item = &Vec<u64>> + '_ {
        self.measures.keys().filter(|t| !self.hit_counts.contains_key(*t))
    }

    /// `(tuple, empirical frequency, measure)` for every box.
    pub fn frequencies(&self) -> impl Iterator<Item = (&Vec<u64>, f64, f64)> + '_ {
        self.measures.iter().map(|(t, m)| {
            let hits = self.hit_counts.get(t).copied().unwrap_or(0);
            (t, hits as f64 / self.samples as f64, m.to_f64())
        })
    }

    /// Largest `|frequency - measure|` over all boxes.
    pub fn max_deviation(&self) -> f64 {
        self.frequencies().map(|(_, f, m)| (f - m).abs()).fold(0.0, f64::max)
    }
}

/// Samples `n` points, counts the digit tuple of each with exact arithmetic,
/// and attaches the certified box measures.
pub fn orbit_sample(
    bases: &[Base],
    n: u64,
    sampler: &Sampler,
    precision: u32,
    limits: &Limits,
) -> Result<CoverageReport> {
    if n == 0 {
        return Err(Error::Invalid("sample count must be at least 1"));
    }
    Limits::check("samples", n as u128, limits.samples)?;
    let hits = count_hits(bases, sampler, 0..n)?;
    CoverageReport::from_counts(bases, sampler.clone(), hits, precision, limits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digits::leading_digit_tuple;
    use alloc::vec;
    use proptest::prelude::*;

    fn bases(v: &[u64]) -> Vec<Base> {
        Base::distinct(v).unwrap()
    }

    fn digits(v: &[u64], b: &[Base]) -> Vec<Digit> {
        Digit::tuple(v, b).unwrap()
    }

    #[test]
    fn rectangle_examples() {
        let b = bases(&[4, 8]);
        let r = rectangle_of(&b, &digits(&[1, 1], &b), 128).unwrap();
        assert_eq!(r.sides[0].0, Interval::from_integer(0, 128));
        assert!(r.sides[0].1.mul_int(2).within(1, 120));
        assert!(r.sides[1].1.mul_int(3).within(1, 120));
        assert!(r.measure().mul_int(6).within(1, 120));

        let b = bases(&[5]);
        let r = rectangle_of(&b, &digits(&[1], &b), 128).unwrap();
        assert_eq!(r.sides[0].0, Interval::from_integer(0, 128));
        assert!(r.sides[0].1.sub(&Interval::log(&2.into(), 5, 128)).within(0, 126));

        let b = bases(&[3, 10]);
        let r = rectangle_of(&b, &digits(&[2, 9], &b), 128).unwrap();
        let m = r.measure();
        let expected = (1.5f64.ln() / 3f64.ln()) * ((10.0f64 / 9.0).ln() / 10f64.ln());
        assert!((m.to_f64() - expected).abs() < 1e-15);
        assert!(m.endpoints().0 > &0.into());
        // last box ends exactly at 1
        let r = rectangle_of(&b, &digits(&[2, 9], &b), 128).unwrap();
        assert_eq!(r.sides[1].1, Interval::from_integer(1, 128));
    }

    #[test]
    fn measures_sum_to_one() {
        for bs in [&[4u64, 8][..], &[3, 10], &[5, 7, 11]] {
            let s = measure_sum(&bases(bs), 128, &Limits::default()).unwrap();
            assert!(s.within(1, 64), "{bs:?}: {s}");
        }
    }

    #[test]
    fn sample_examples() {
        let l = Limits::default();
        let r = orbit_sample(&bases(&[4, 8]), 63, &Sampler::IntegerScan, 128, &l).unwrap();
        assert_eq!((r.rectangles_hit(), r.rectangles_total()), (15, 21));
        let missed: Vec<_> = r.missed().cloned().collect();
        assert_eq!(
            missed,
            vec![vec![2, 3], vec![2, 6], vec![2, 7], vec![3, 2], vec![3, 4], vec![3, 5]]
        );
        assert_eq!(r.samples, 63);

        for sampler in [Sampler::IntegerScan, Sampler::geometric_default(), Sampler::LowDiscrepancy] {
            let r = orbit_sample(&bases(&[3, 10, 7]), 1, &sampler, 128, &l).unwrap();
            assert_eq!(r.hit_counts, [(vec![1, 1, 1], 1)].into());
        }
        assert!(orbit_sample(&bases(&[3, 10]), 0, &Sampler::IntegerScan, 128, &l).is_err());
        let tight = Limits { samples: 5, ..l };
        assert!(matches!(
            orbit_sample(&bases(&[3, 10]), 6, &Sampler::IntegerScan, 128, &tight),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn dependent_pair_never_hits_excluded_boxes() {
        let l = Limits::default();
        let b = bases(&[4, 8]);
        let samplers = [
            Sampler::IntegerScan,
            Sampler::geometric_default(),
            Sampler::Geometric { start: PositiveRational::from_u64(7, 3).unwrap(), ratio: PositiveRational::from_u64(5, 3).unwrap() },
            Sampler::LowDiscrepancy,
        ];
        for s in samplers {
            let r = orbit_sample(&b, 2000, &s, 64, &l).unwrap();
            for t in [[2, 3], [2, 6], [2, 7], [3, 2], [3, 4], [3, 5]] {
                assert!(!r.hit_counts.contains_key(&t[..]), "{} hit {t:?}", s.name());
            }
        }
    }

    #[test]
    fn split_ranges_add_up() {
        let b = bases(&[3, 10]);
        for s in [Sampler::IntegerScan, Sampler::geometric_default(), Sampler::LowDiscrepancy] {
            let whole = count_hits(&b, &s, 0..500).unwrap();
            let mut parts = count_hits(&b, &s, 0..123).unwrap();
            for (k, v) in count_hits(&b, &s, 123..500).unwrap() {
                *parts.entry(k).or_default() += v;
            }
            assert_eq!(whole, parts, "{}", s.name());
        }
    }

    #[test]
    fn low_discrepancy_points() {
        let span = BigUint::from(30u8);
        assert_eq!(low_discrepancy_point(0, &span), PositiveRational::one());
        // u_1 = 1/2, u_2 = 1/4, u_3 = 3/4
        assert_eq!(low_discrepancy_point(1, &span), PositiveRational::from_u64(31, 2).unwrap());
        assert_eq!(low_discrepancy_point(2, &span), PositiveRational::from_u64(33, 4).unwrap());
        assert_eq!(low_discrepancy_point(3, &span), PositiveRational::from_u64(91, 4).unwrap());
    }

    #[test]
    fn exact_boundaries_are_ambiguous() {
        let b = bases(&[3, 10]);
        assert_eq!(classify_point(&PositiveRational::from(2), &b, 128), PointClass::BoundaryAmbiguous);
        assert_eq!(classify_point(&PositiveRational::from(100), &b, 128), PointClass::BoundaryAmbiguous);
        // 2 * 3^14 sits on the lower edge of its base-3 side
        assert_eq!(classify_point(&PositiveRational::from(9_565_938), &b, 128), PointClass::BoundaryAmbiguous);
        assert_eq!(
            classify_point(&PositiveRational::from(9_565_939), &b, 128),
            PointClass::Unambiguous(vec![2, 9])
        );
    }

    #[test]
    fn rectangle_membership() {
        let b = bases(&[3, 10]);
        let x = PositiveRational::from(9_565_939);
        let fv = FrequencyVector::new(&b, 128);
        let p = fv.point(&x).unwrap();
        let inside = rectangle_of(&b, &digits(&[2, 9], &b), 128).unwrap();
        let outside = rectangle_of(&b, &digits(&[2, 8], &b), 128).unwrap();
        assert_eq!(inside.classify(&p), Membership::Inside);
        assert_eq!(outside.classify(&p), Membership::Outside);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn certified_point_matches_exact_digits(p in 1u64.., q in 1u64.., pick in 0usize..4) {
            let sets: [&[u64]; 4] = [&[3, 10], &[4, 8], &[5, 7, 11], &[6, 20]];
            let b = bases(sets[pick]);
            let x = PositiveRational::from_u64(p, q).unwrap();
            let exact: Vec<u64> = leading_digit_tuple(&x, &b).unwrap().iter().map(|d| d.value()).collect();
            match classify_point(&x, &b, 128) {
                PointClass::Unambiguous(t) => prop_assert_eq!(t, exact.clone()),
                PointClass::BoundaryAmbiguous => {}
            }
            let r = rectangle_of(&b, &Digit::tuple(&exact, &b).unwrap(), 128).unwrap();
            if let Some(pt) = FrequencyVector::new(&b, 128).point(&x) {
                prop_assert_ne!(r.classify(&pt), Membership::Outside);
            }
        }
    }
}
