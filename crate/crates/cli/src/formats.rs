//! JSON and CSV renderings of the library's reports.
//!
//! Each record type converts from the domain value it renders and back
//! (`TryFrom`), so emitted JSON can be re-parsed into the library types.

use std::collections::{BTreeMap, BTreeSet};

use joint_digits_core::dependence::{DependencePair, DependenceReport};
use joint_digits_core::image::{AttainabilityVerdict, Certificate, ImageReport, JointTable};
use joint_digits_core::real::Interval;
use joint_digits_core::torus::{CoverageReport, Sampler};
use joint_digits_core::witness::{WitnessOutcome, NOTE_CONDITIONAL, NOTE_INDEPENDENT_PAIR};
use joint_digits_core::{Base, Digit, Error, PositiveRational};
use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};

fn base_values(bases: &[Base]) -> Vec<u64> {
    bases.iter().map(|b| b.get()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigitRecord {
    pub x: String,
    pub bases: Vec<u64>,
    pub digits: Vec<u64>,
}

impl DigitRecord {
    pub fn new(x: &PositiveRational, digits: &[Digit]) -> DigitRecord {
        DigitRecord {
            x: x.to_string(),
            bases: digits.iter().map(|d| d.base().get()).collect(),
            digits: digits.iter().map(|d| d.value()).collect(),
        }
    }

    pub fn into_domain(self) -> Result<(PositiveRational, Vec<Digit>), Error> {
        let x = self.x.parse().map_err(|_| Error::Invalid("x is not a rational literal"))?;
        let bases = Base::distinct(&self.bases)?;
        Ok((x, Digit::tuple(&self.digits, &bases)?))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DependenceRecord {
    pub b1: u64,
    pub b2: u64,
    pub a: u64,
    pub e1: u32,
    pub e2: u32,
    pub combined_base: String,
}

impl From<&DependencePair> for DependenceRecord {
    fn from(d: &DependencePair) -> Self {
        let (b1, b2) = d.bases();
        let (e1, e2) = d.exponents();
        DependenceRecord {
            b1: b1.get(),
            b2: b2.get(),
            a: d.a(),
            e1,
            e2,
            combined_base: d.combined_base().to_string(),
        }
    }
}

impl TryFrom<&DependenceRecord> for DependencePair {
    type Error = Error;

    fn try_from(r: &DependenceRecord) -> Result<Self, Error> {
        let d = DependencePair::new(r.a, r.e1, r.e2)?;
        if d.bases() != (Base::new(r.b1)?, Base::new(r.b2)?) {
            return Err(Error::Invalid("certificate does not reproduce the bases"));
        }
        Ok(d)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DependentPairRecord {
    pub i: usize,
    pub j: usize,
    #[serde(flatten)]
    pub certificate: DependenceRecord,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepsRecord {
    pub bases: Vec<u64>,
    pub pairwise_independent: bool,
    pub dependent_pairs: Vec<DependentPairRecord>,
}

impl From<&DependenceReport> for DepsRecord {
    fn from(r: &DependenceReport) -> Self {
        DepsRecord {
            bases: base_values(&r.bases),
            pairwise_independent: r.pairwise_independent(),
            dependent_pairs: r
                .dependent_pairs
                .iter()
                .map(|(i, j, d)| DependentPairRecord { i: *i, j: *j, certificate: d.into() })
                .collect(),
        }
    }
}

impl TryFrom<&DepsRecord> for DependenceReport {
    type Error = Error;

    fn try_from(r: &DepsRecord) -> Result<Self, Error> {
        let bases = Base::distinct(&r.bases)?;
        let dependent_pairs = r
            .dependent_pairs
            .iter()
            .map(|p| Ok((p.i, p.j, DependencePair::try_from(&p.certificate)?)))
            .collect::<Result<_, Error>>()?;
        Ok(DependenceReport { bases, dependent_pairs })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRecord {
    pub pair: (u64, u64),
    pub attainable: bool,
    /// `"power"`, `"density"` or `"none"`.
    pub certificate: String,
    pub certificate_c: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageRecord {
    pub bases: (u64, u64),
    pub dependence: Option<DependenceRecord>,
    pub attainable_count: usize,
    pub excluded_count: usize,
    pub excluded: Vec<(u64, u64)>,
    pub pairs: Vec<PairRecord>,
}

impl From<&ImageReport> for ImageRecord {
    fn from(r: &ImageReport) -> Self {
        let mut pairs: Vec<PairRecord> = r
            .attainable
            .iter()
            .map(|(&pair, cert)| match cert {
                Certificate::Power(c) => {
                    PairRecord { pair, attainable: true, certificate: "power".into(), certificate_c: Some(*c) }
                }
                Certificate::Density => {
                    PairRecord { pair, attainable: true, certificate: "density".into(), certificate_c: None }
                }
            })
            .chain(r.excluded.iter().map(|&pair| PairRecord {
                pair,
                attainable: false,
                certificate: "none".into(),
                certificate_c: None,
            }))
            .collect();
        pairs.sort_by_key(|p| p.pair);
        let (attainable_count, excluded_count) = r.counts();
        ImageRecord {
            bases: (r.bases.0.get(), r.bases.1.get()),
            dependence: r.dependence.as_ref().map(Into::into),
            attainable_count,
            excluded_count,
            excluded: r.excluded.iter().copied().collect(),
            pairs,
        }
    }
}

impl TryFrom<&ImageRecord> for ImageReport {
    type Error = Error;

    fn try_from(r: &ImageRecord) -> Result<Self, Error> {
        let bases = (Base::new(r.bases.0)?, Base::new(r.bases.1)?);
        let dependence = r.dependence.as_ref().map(DependencePair::try_from).transpose()?;
        let mut attainable = BTreeMap::new();
        let mut excluded = BTreeSet::new();
        for p in &r.pairs {
            Digit::new(p.pair.0, bases.0)?;
            Digit::new(p.pair.1, bases.1)?;
            match (p.attainable, p.certificate.as_str(), p.certificate_c) {
                (true, "power", Some(c)) => {
                    attainable.insert(p.pair, Certificate::Power(c));
                }
                (true, "density", None) => {
                    attainable.insert(p.pair, Certificate::Density);
                }
                (false, "none", None) => {
                    excluded.insert(p.pair);
                }
                _ => return Err(Error::Invalid("inconsistent pair record")),
            }
        }
        let report = ImageReport { bases, dependence, attainable, excluded };
        if report.counts() != (r.attainable_count, r.excluded_count) {
            return Err(Error::Invalid("counts disagree with pair records"));
        }
        Ok(report)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellRecord {
    pub j1: u64,
    pub j2: u64,
    /// Inclusive runs `[first, last]` of combined-base digits; empty when the
    /// pair is not attained.
    pub runs: Vec<(u64, u64)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRecord {
    pub dependence: DependenceRecord,
    pub combined_base: u64,
    pub cells: Vec<CellRecord>,
    pub excluded: Vec<(u64, u64)>,
}

impl From<&JointTable> for TableRecord {
    fn from(t: &JointTable) -> Self {
        let dep = t.dependence();
        let (b1, b2) = dep.bases();
        let runs = t.cell_runs();
        let mut cells = Vec::new();
        let mut excluded = Vec::new();
        for j2 in 1..b2.get() {
            for j1 in 1..b1.get() {
                let r = runs.get(&(j1, j2)).cloned().unwrap_or_default();
                if r.is_empty() {
                    excluded.push((j1, j2));
                }
                cells.push(CellRecord { j1, j2, runs: r });
            }
        }
        excluded.sort();
        TableRecord { dependence: dep.into(), combined_base: t.combined_base(), cells, excluded }
    }
}

impl TryFrom<&TableRecord> for JointTable {
    type Error = Error;

    fn try_from(r: &TableRecord) -> Result<Self, Error> {
        let dep = DependencePair::try_from(&r.dependence)?;
        let runs = r
            .cells
            .iter()
            .filter(|c| !c.runs.is_empty())
            .map(|c| ((c.j1, c.j2), c.runs.clone()))
            .collect();
        JointTable::from_runs(&dep, &runs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub pair: (u64, u64),
    pub attainable: bool,
    pub certificate_c: Option<i64>,
    pub scan_range: (i64, i64),
}

impl From<&AttainabilityVerdict> for VerdictRecord {
    fn from(v: &AttainabilityVerdict) -> Self {
        VerdictRecord {
            pair: (v.pair.0.value(), v.pair.1.value()),
            attainable: v.attainable,
            certificate_c: v.certificate,
            scan_range: v.scan_range,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum WitnessRecord {
    Found {
        bases: Vec<u64>,
        target: Vec<u64>,
        x: String,
        anchor: usize,
        k: u64,
        verified: bool,
    },
    NotAttainable {
        bases: Vec<u64>,
        target: Vec<u64>,
        /// Indices of the dependent pair whose projection fails.
        pair: (usize, usize),
        verdict: VerdictRecord,
        verified: bool,
    },
    Exhausted {
        bases: Vec<u64>,
        target: Vec<u64>,
        k_reached: u64,
        note: String,
        verified: bool,
    },
}

impl WitnessRecord {
    /// `verified` is the caller's independent recheck of the outcome.
    pub fn new(bases: &[Base], target: &[Digit], outcome: &WitnessOutcome, verified: bool) -> WitnessRecord {
        let bases = base_values(bases);
        let target = target.iter().map(|d| d.value()).collect();
        match outcome {
            WitnessOutcome::Found { x, anchor, k } => {
                WitnessRecord::Found { bases, target, x: x.to_string(), anchor: *anchor, k: *k, verified }
            }
            WitnessOutcome::NotAttainable { i, j, verdict } => {
                WitnessRecord::NotAttainable { bases, target, pair: (*i, *j), verdict: verdict.into(), verified }
            }
            WitnessOutcome::Exhausted { k_reached, note } => {
                WitnessRecord::Exhausted { bases, target, k_reached: *k_reached, note: (*note).to_string(), verified }
            }
        }
    }

    pub fn into_domain(&self) -> Result<WitnessOutcome, Error> {
        Ok(match self {
            WitnessRecord::Found { x, anchor, k, .. } => WitnessOutcome::Found {
                x: x.parse::<BigUint>().map_err(|_| Error::Invalid("x is not a decimal integer"))?,
                anchor: *anchor,
                k: *k,
            },
            WitnessRecord::NotAttainable { bases, pair, verdict, .. } => {
                let b = Base::distinct(bases)?;
                let (i, j) = *pair;
                if i >= b.len() || j >= b.len() {
                    return Err(Error::Invalid("pair index out of range"));
                }
                let verdict = AttainabilityVerdict {
                    pair: (Digit::new(verdict.pair.0, b[i])?, Digit::new(verdict.pair.1, b[j])?),
                    attainable: verdict.attainable,
                    certificate: verdict.certificate_c,
                    scan_range: verdict.scan_range,
                };
                WitnessOutcome::NotAttainable { i, j, verdict }
            }
            WitnessRecord::Exhausted { k_reached, note, .. } => {
                let note = [NOTE_INDEPENDENT_PAIR, NOTE_CONDITIONAL]
                    .into_iter()
                    .find(|n| n == note)
                    .ok_or(Error::Invalid("unknown exhaustion note"))?;
                WitnessOutcome::Exhausted { k_reached: *k_reached, note }
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasureBounds {
    /// Decimal integers; the measure lies in `[lo, hi] / 2^scale_bits`.
    pub lo: String,
    pub hi: String,
    pub scale_bits: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverageCell {
    pub tuple: Vec<u64>,
    pub count: u64,
    pub frequency: f64,
    pub measure: f64,
    pub measure_bounds: MeasureBounds,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverageRecord {
    pub bases: Vec<u64>,
    pub sampler: String,
    /// Geometric sampler parameters as `p/q` literals.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub start: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ratio: Option<String>,
    pub samples: u64,
    pub rectangles_hit: usize,
    pub rectangles_total: usize,
    pub max_deviation: f64,
    pub cells: Vec<CoverageCell>,
}

impl From<&CoverageReport> for CoverageRecord {
    fn from(r: &CoverageReport) -> Self {
        let (start, ratio) = match &r.sampler {
            Sampler::Geometric { start, ratio } => (Some(start.to_string()), Some(ratio.to_string())),
            _ => (None, None),
        };
        let cells = r
            .frequencies()
            .map(|(tuple, frequency, measure)| {
                let m = &r.measures[tuple];
                let (lo, hi) = m.endpoints();
                CoverageCell {
                    tuple: tuple.clone(),
                    count: r.hit_counts.get(tuple).copied().unwrap_or(0),
                    frequency,
                    measure,
                    measure_bounds: MeasureBounds { lo: lo.to_string(), hi: hi.to_string(), scale_bits: m.bits() },
                }
            })
            .collect();
        CoverageRecord {
            bases: base_values(&r.bases),
            sampler: r.sampler.name().to_string(),
            start,
            ratio,
            samples: r.samples,
            rectangles_hit: r.rectangles_hit(),
            rectangles_total: r.rectangles_total(),
            max_deviation: r.max_deviation(),
            cells,
        }
    }
}

impl TryFrom<&CoverageRecord> for CoverageReport {
    type Error = Error;

    fn try_from(r: &CoverageRecord) -> Result<Self, Error> {
        let bases = Base::distinct(&r.bases)?;
        let parse = |s: &Option<String>| -> Result<PositiveRational, Error> {
            s.as_deref()
                .ok_or(Error::Invalid("geometric sampler needs start and ratio"))?
                .parse()
                .map_err(|_| Error::Invalid("invalid rational literal"))
        };
        let sampler = match r.sampler.as_str() {
            "integer-scan" => Sampler::IntegerScan,
            "low-discrepancy" => Sampler::LowDiscrepancy,
            "geometric" => Sampler::Geometric { start: parse(&r.start)?, ratio: parse(&r.ratio)? },
            _ => return Err(Error::Invalid("unknown sampler")),
        };
        let mut hit_counts = BTreeMap::new();
        let mut measures = BTreeMap::new();
        for c in &r.cells {
            Digit::tuple(&c.tuple, &bases)?;
            if c.count > 0 {
                hit_counts.insert(c.tuple.clone(), c.count);
            }
            let int = |s: &str| s.parse::<BigInt>().map_err(|_| Error::Invalid("invalid measure bound"));
            let b = &c.measure_bounds;
            let m = Interval::from_endpoints(int(&b.lo)?, int(&b.hi)?, b.scale_bits)
                .ok_or(Error::Invalid("measure bounds out of order"))?;
            measures.insert(c.tuple.clone(), m);
        }
        let report = CoverageReport { bases, sampler, samples: r.samples, hit_counts, measures };
        if report.hit_counts.values().sum::<u64>() != r.samples {
            return Err(Error::Invalid("hit counts do not sum to the sample count"));
        }
        Ok(report)
    }
}

/// CSV with one row per box: `tuple,count,frequency,measure`.
pub fn coverage_csv(r: &CoverageRecord) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["tuple", "count", "frequency", "measure"])?;
    for c in &r.cells {
        let tuple = c.tuple.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ");
        w.write_record([tuple, c.count.to_string(), c.frequency.to_string(), c.measure.to_string()])?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
