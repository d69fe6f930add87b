//! Explicit witnesses `x` with prescribed leading digits in several bases.
//!
//! A query is answered in stages:
//!
//! 1. every dependent pair among the bases is checked with the power-interval
//!    criterion; a failing projection is a proof of non-attainability;
//! 2. for exactly two dependent bases the certificate `c` is turned directly
//!    into a witness (the problem is decidable there);
//! 3. otherwise an anchored scan walks `x_k = j_i * b_i^k`, whose base-`b_i`
//!    leading digit is `j_i` for every `k`, and checks the other digits.
//!
//! Every returned witness is re-verified from scratch before it is reported.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Pow, ToPrimitive};

use crate::dependence::{pairwise_report, DependencePair};
use crate::digits::{leading_digit, leading_digit_u64};
use crate::image::{attainable_by_power_criterion, AttainabilityVerdict};
use crate::{Base, Digit, Error, Limits, PositiveRational, Result};

/// Default number of scan steps per anchor.
pub const DEFAULT_BUDGET: u64 = 5000;

/// Note attached to an exhausted search over two independent bases.
pub const NOTE_INDEPENDENT_PAIR: &str =
    "budget exhausted; a witness exists because the two bases are multiplicatively independent, raise the budget";

/// Note attached to an exhausted search over three or more bases.
pub const NOTE_CONDITIONAL: &str = "budget exhausted; for three or more bases existence is conditional on the \
     rational independence of 1/ln b_i (a consequence of Schanuel's conjecture), so no negative answer is implied";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessQuery {
    bases: Vec<Base>,
    target: Vec<Digit>,
    budget: u64,
    anchor: Option<usize>,
    retry_other_anchors: bool,
}

impl WitnessQuery {
    pub fn new(bases: &[u64], target: &[u64]) -> Result<WitnessQuery> {
        let bases = Base::distinct(bases)?;
        if bases.len() < 2 {
            return Err(Error::TooFewBases { needed: 2, got: bases.len() });
        }
        let target = Digit::tuple(target, &bases)?;
        Ok(WitnessQuery { bases, target, budget: DEFAULT_BUDGET, anchor: None, retry_other_anchors: true })
    }

    pub fn with_budget(mut self, budget: u64) -> Result<WitnessQuery> {
        if budget == 0 {
            return Err(Error::Invalid("budget must be at least 1"));
        }
        self.budget = budget;
        Ok(self)
    }

    /// Starts the scan at `anchor` instead of index 0.
    pub fn with_anchor(mut self, anchor: usize) -> Result<WitnessQuery> {
        if anchor >= self.bases.len() {
            return Err(Error::Invalid("anchor index out of range"));
        }
        self.anchor = Some(anchor);
        Ok(self)
    }

    /// Whether the other anchors are tried after the first one is exhausted.
    pub fn retry_other_anchors(mut self, retry: bool) -> WitnessQuery {
        self.retry_other_anchors = retry;
        self
    }

    pub fn bases(&self) -> &[Base] {
        &self.bases
    }

    pub fn target(&self) -> &[Digit] {
        &self.target
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessOutcome {
    /// `x = target[anchor] * bases[anchor]^k`, verified exactly.
    Found { x: BigUint, anchor: usize, k: u64 },
    /// The projection onto bases `(i, j)` fails the power-interval criterion.
    NotAttainable { i: usize, j: usize, verdict: AttainabilityVerdict },
    /// No witness within the budget; `note` states what that does and does
    /// not imply.
    Exhausted { k_reached: u64, note: &'static str },
}

/// Tracks `power = b^e <= x < b^(e+1)` while `x` only grows.
struct DigitTracker {
    base: Base,
    power: BigUint,
}

impl DigitTracker {
    fn new(base: Base) -> DigitTracker {
        DigitTracker { base, power: BigUint::one() }
    }

    fn digit(&mut self, x: &BigUint) -> u64 {
        loop {
            let next = &self.power * self.base.get();
            if &next > x {
                break;
            }
            self.power = next;
        }
        (x / &self.power).to_u64().expect("quotient is below the base")
    }
}

fn anchored_scan(bases: &[Base], target: &[Digit], anchor: usize, budget: u64) -> Option<(BigUint, u64)> {
    let step = bases[anchor].get();
    let mut trackers: Vec<(usize, DigitTracker)> = bases
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != anchor)
        .map(|(i, &b)| (i, DigitTracker::new(b)))
        .collect();
    let mut x = BigUint::from(target[anchor].value());
    for k in 0..=budget {
        if trackers.iter_mut().all(|(i, t)| t.digit(&x) == target[*i].value()) {
            return Some((x, k));
        }
        x *= step;
    }
    None
}

/// Turns a power-interval certificate `c` into an integer witness: pick
/// `d1, d2 >= 0` with `e2 d2 - e1 d1 = c`; the intervals
/// `b1^d1 [j1, j1 + 1)` and `b2^d2 [j2, j2 + 1)` then overlap and the larger
/// lower endpoint lies in both.
fn witness_from_certificate(dep: &DependencePair, j1: u64, j2: u64, c: i64) -> (BigUint, usize, u64) {
    let (e1, e2) = dep.exponents();
    let (e1, e2) = (e1 as i128, e2 as i128);
    let g = e2.extended_gcd(&e1);
    debug_assert_eq!(g.gcd, 1);
    // e2 * g.x + e1 * g.y = 1, so (d1, d2) = (-c g.y, c g.x) is one solution,
    // and (d1 + e2 t, d2 + e1 t) are all of them.
    let c = c as i128;
    let (d1, d2) = (-c * g.y, c * g.x);
    let t = Integer::div_ceil(&-d1, &e2).max(Integer::div_ceil(&-d2, &e1));
    let (d1, d2) = ((d1 + e2 * t) as u64, (d2 + e1 * t) as u64);
    let (b1, b2) = dep.bases();
    let lo1 = Pow::pow(BigUint::from(b1.get()), d1) * j1;
    let lo2 = Pow::pow(BigUint::from(b2.get()), d2) * j2;
    if lo1 >= lo2 {
        (lo1, 0, d1)
    } else {
        (lo2, 1, d2)
    }
}

/// Finds a witness, proves the target unattainable, or reports an exhausted
/// budget.
pub fn find_witness(q: &WitnessQuery) -> Result<WitnessOutcome> {
    let report = pairwise_report(&q.bases)?;
    for &(i, j, dep) in &report.dependent_pairs {
        let verdict = attainable_by_power_criterion(&dep, q.target[i], q.target[j])?;
        if !verdict.attainable {
            return Ok(WitnessOutcome::NotAttainable { i, j, verdict });
        }
        if q.bases.len() == 2 {
            let c = verdict.certificate.expect("attainable verdicts carry c");
            let (x, anchor, k) = witness_from_certificate(&dep, q.target[0].value(), q.target[1].value(), c);
            debug_assert!(verify_witness_integer(&x, &q.bases, &q.target));
            return Ok(WitnessOutcome::Found { x, anchor, k });
        }
    }

    let first = q.anchor.unwrap_or(0);
    let mut anchors = alloc::vec![first];
    if q.retry_other_anchors {
        anchors.extend((0..q.bases.len()).filter(|&i| i != first));
    }
    for anchor in anchors {
        if let Some((x, k)) = anchored_scan(&q.bases, &q.target, anchor, q.budget) {
            if !verify_witness_integer(&x, &q.bases, &q.target) {
                return Err(Error::Invalid("internal error: scan produced an unverifiable witness"));
            }
            return Ok(WitnessOutcome::Found { x, anchor, k });
        }
    }
    let note = if q.bases.len() == 2 { NOTE_INDEPENDENT_PAIR } else { NOTE_CONDITIONAL };
    Ok(WitnessOutcome::Exhausted { k_reached: q.budget, note })
}

fn verify_witness_integer(x: &BigUint, bases: &[Base], target: &[Digit]) -> bool {
    match PositiveRational::from_integer(x.clone()) {
        Ok(x) => verify_witness(&x, bases, target),
        Err(_) => false,
    }
}

/// Recomputes every leading digit of `x` from scratch.
pub fn verify_witness(x: &PositiveRational, bases: &[Base], target: &[Digit]) -> bool {
    bases.len() == target.len()
        && bases.iter().zip(target).all(|(&b, t)| t.base() == b && leading_digit(x, b) == *t)
}

/// Digit tuples of `x = 1, ..., x_max`.
pub fn image_observed(bases: &[Base], x_max: u64, limits: &Limits) -> Result<BTreeSet<Vec<u64>>> {
    if x_max == 0 {
        return Err(Error::Invalid("x_max must be at least 1"));
    }
    Base::distinct(&bases.iter().map(|b| b.get()).collect::<Vec<_>>())?;
    Limits::check("image scan x_max", x_max as u128, limits.scan)?;
    let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
    let mut buf = alloc::vec![0u64; bases.len()];
    for x in 1..=x_max {
        for (slot, &b) in buf.iter_mut().zip(bases) {
            *slot = leading_digit_u64(x, b).value();
        }
        if !seen.contains(&buf[..]) {
            seen.insert(buf.clone());
        }
    }
    Ok(seen)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::image::image_exact;
    use alloc::vec;

    fn bases(v: &[u64]) -> Vec<Base> {
        Base::distinct(v).unwrap()
    }

    fn found(o: &WitnessOutcome) -> (BigUint, usize, u64) {
        match o {
            WitnessOutcome::Found { x, anchor, k } => (x.clone(), *anchor, *k),
            other => panic!("expected Found, got {other:?}"),
        }
    }

    #[test]
    fn dependent_found() {
        let q = WitnessQuery::new(&[4, 8], &[3, 7]).unwrap();
        let (x, anchor, k) = found(&find_witness(&q).unwrap());
        let b = bases(&[4, 8]);
        assert!(verify_witness(&PositiveRational::from_integer(x.clone()).unwrap(), &b, q.target()));
        let expected = Pow::pow(BigUint::from(b[anchor].get()), k) * q.target()[anchor].value();
        assert_eq!(x, expected);
    }

    #[test]
    fn dependent_not_attainable() {
        let q = WitnessQuery::new(&[4, 8], &[2, 3]).unwrap();
        match find_witness(&q).unwrap() {
            WitnessOutcome::NotAttainable { i, j, verdict } => {
                assert_eq!((i, j), (0, 1));
                assert!(!verdict.attainable);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn independent_examples() {
        let q = WitnessQuery::new(&[3, 10], &[2, 9]).unwrap();
        let (x, anchor, k) = found(&find_witness(&q).unwrap());
        assert_eq!((x, anchor, k), (BigUint::from(9_565_938u32), 0, 14));
        assert_eq!(2 * 3u64.pow(14), 9_565_938);
        let q = WitnessQuery::new(&[3, 10], &[1, 1]).unwrap();
        assert_eq!(found(&find_witness(&q).unwrap()), (BigUint::from(1u8), 0, 0));
    }

    #[test]
    fn decidable_for_every_dependent_pair() {
        for (b1, b2) in [(4, 8), (8, 4), (9, 27), (4, 16), (3, 9), (16, 64), (25, 125)] {
            let report = image_exact(Base::new(b1).unwrap(), Base::new(b2).unwrap(), &Limits::default()).unwrap();
            for j1 in 1..b1 {
                for j2 in 1..b2 {
                    let q = WitnessQuery::new(&[b1, b2], &[j1, j2]).unwrap().with_budget(1).unwrap();
                    match find_witness(&q).unwrap() {
                        WitnessOutcome::Found { x, .. } => {
                            assert!(report.attainable.contains_key(&(j1, j2)));
                            assert!(verify_witness_integer(&x, q.bases(), q.target()));
                        }
                        WitnessOutcome::NotAttainable { .. } => assert!(report.excluded.contains(&(j1, j2))),
                        WitnessOutcome::Exhausted { .. } => panic!("exhausted on a dependent pair"),
                    }
                }
            }
        }
    }

    #[test]
    fn three_bases_with_dependent_projection() {
        let q = WitnessQuery::new(&[4, 10, 8], &[2, 5, 3]).unwrap();
        match find_witness(&q).unwrap() {
            WitnessOutcome::NotAttainable { i, j, .. } => assert_eq!((i, j), (0, 2)),
            other => panic!("{other:?}"),
        }
        let q = WitnessQuery::new(&[4, 10, 8], &[3, 5, 7]).unwrap();
        let (x, ..) = found(&find_witness(&q).unwrap());
        assert!(verify_witness_integer(&x, q.bases(), q.target()));
    }

    #[test]
    fn exhausted_carries_note() {
        let q = WitnessQuery::new(&[3, 10, 7], &[2, 9, 6])
            .unwrap()
            .with_budget(1)
            .unwrap()
            .retry_other_anchors(false);
        assert_eq!(
            find_witness(&q).unwrap(),
            WitnessOutcome::Exhausted { k_reached: 1, note: NOTE_CONDITIONAL }
        );
        let q = WitnessQuery::new(&[3, 10], &[2, 9]).unwrap().with_budget(3).unwrap();
        assert_eq!(
            find_witness(&q).unwrap(),
            WitnessOutcome::Exhausted { k_reached: 3, note: NOTE_INDEPENDENT_PAIR }
        );
    }

    #[test]
    fn anchor_selection() {
        let q = WitnessQuery::new(&[3, 10], &[2, 9]).unwrap().with_anchor(1).unwrap();
        let (x, anchor, k) = found(&find_witness(&q).unwrap());
        assert!(verify_witness_integer(&x, q.bases(), q.target()));
        assert_eq!(x, Pow::pow(BigUint::from(10u8), k) * 9u8);
        assert_eq!(anchor, 1);
        assert!(WitnessQuery::new(&[3, 10], &[2, 9]).unwrap().with_anchor(2).is_err());
    }

    #[test]
    fn query_validation() {
        assert!(WitnessQuery::new(&[3], &[2]).is_err());
        assert!(WitnessQuery::new(&[3, 3], &[2, 2]).is_err());
        assert!(WitnessQuery::new(&[3, 10], &[3, 2]).is_err());
        assert!(WitnessQuery::new(&[3, 10], &[2]).is_err());
        assert!(WitnessQuery::new(&[3, 10], &[2, 2]).unwrap().with_budget(0).is_err());
    }

    #[test]
    fn verify_examples() {
        let b = bases(&[4, 8]);
        let t = |v: &[u64]| Digit::tuple(v, &b).unwrap();
        assert!(verify_witness(&56.into(), &b, &t(&[3, 7])));
        assert!(verify_witness(&1.into(), &b, &t(&[1, 1])));
        assert!(!verify_witness(&9.into(), &b, &t(&[2, 2])));
        assert!(!verify_witness(&9.into(), &b, &t(&[2, 1])[..1]));
    }

    #[test]
    fn anchoring_is_exact() {
        for b in 3..=50u64 {
            let base = Base::new(b).unwrap();
            for j in [1, b / 2, b - 1] {
                let mut x = BigUint::from(j);
                for _ in 0..=200 {
                    let r = PositiveRational::from_integer(x.clone()).unwrap();
                    assert_eq!(leading_digit(&r, base).value(), j);
                    x *= b;
                }
            }
        }
    }

    #[test]
    fn observed_examples() {
        let l = Limits::default();
        let obs = image_observed(&bases(&[4, 8]), 63, &l).unwrap();
        let exact = image_exact(Base::new(4).unwrap(), Base::new(8).unwrap(), &l).unwrap();
        let exact: BTreeSet<Vec<u64>> = exact.attainable.keys().map(|&(a, b)| vec![a, b]).collect();
        assert_eq!(obs, exact);
        assert_eq!(image_observed(&bases(&[3, 10, 7]), 1, &l).unwrap(), [vec![1, 1, 1]].into());
        assert!(image_observed(&bases(&[3, 10]), 0, &l).is_err());
        let tight = Limits { scan: 10, ..l };
        assert!(matches!(image_observed(&bases(&[3, 10]), 11, &tight), Err(Error::ResourceLimit { .. })));
    }
}
