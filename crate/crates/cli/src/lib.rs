//! Command-line front end for `joint-digits-core`.
//!
//! Results go to standard output and diagnostics to standard error. Exit
//! status: 0 on success (including negative answers such as an unattainable
//! tuple), 1 on domain errors, 2 on usage errors.
//!
//! Resource caps are read from `JOINT_DIGITS_ENUM_CAP`, `JOINT_DIGITS_SCAN_CAP`,
//! `JOINT_DIGITS_SAMPLE_CAP` and `JOINT_DIGITS_TUPLE_CAP`.

pub mod args;
pub mod formats;
pub mod render;
pub mod sampling;

use clap::Parser;
use joint_digits_core::dependence::{pair_dependence, pairwise_report};
use joint_digits_core::digits::leading_digit_tuple;
use joint_digits_core::image::{image_exact, image_report, joint_table, power_criterion_holds};
use joint_digits_core::torus::Sampler;
use joint_digits_core::witness::{find_witness, verify_witness, WitnessOutcome, WitnessQuery};
use joint_digits_core::{Base, Limits, PositiveRational};
use serde::Serialize;

use crate::args::{Cli, Command, Output, SamplerKind};
use crate::formats::{CoverageRecord, DepsRecord, DigitRecord, ImageRecord, TableRecord, WitnessRecord};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Domain(#[from] joint_digits_core::Error),
    #[error("output: {0}")]
    Render(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) | CliError::Render(_) => 1,
        }
    }
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub const ENV_CAPS: [(&str, &str); 4] = [
    ("JOINT_DIGITS_ENUM_CAP", "enumeration"),
    ("JOINT_DIGITS_SCAN_CAP", "scan"),
    ("JOINT_DIGITS_SAMPLE_CAP", "samples"),
    ("JOINT_DIGITS_TUPLE_CAP", "tuples"),
];

/// Limits from the environment, falling back to the defaults.
pub fn limits_from_env<F>(lookup: F) -> Result<Limits, CliError>
where
    F: Fn(&str) -> Option<String>,
{
    let mut limits = Limits::default();
    for (var, field) in ENV_CAPS {
        let Some(raw) = lookup(var) else { continue };
        let v: u64 = raw
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{var}: `{raw}` is not a non-negative integer")))?;
        match field {
            "enumeration" => limits.enumeration = v,
            "scan" => limits.scan = v,
            "samples" => limits.samples = v,
            _ => limits.tuples = v,
        }
    }
    Ok(limits)
}

/// Parses `argv` (including the program name) and runs it with caps from
/// the process environment.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match limits_from_env(|k| std::env::var(k).ok()) {
        Ok(limits) => run_with_limits(argv, &limits),
        Err(e) => Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

pub fn run_with_limits<I, T>(argv: I, limits: &Limits) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match execute(&cli, limits) {
        Ok(stdout) => Outcome { code: 0, stdout, stderr: String::new() },
        Err(e) => Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value).map(|s| s + "\n").map_err(|e| CliError::Render(e.to_string()))
}

fn unsupported(cmd: &str, output: Output) -> CliError {
    CliError::Usage(format!("`{cmd}` does not support --output {output:?}").to_lowercase())
}

fn pair(bases: &[u64], cmd: &str) -> Result<(Base, Base), CliError> {
    match bases {
        [a, b] => Ok((Base::new(*a)?, Base::new(*b)?)),
        _ => Err(CliError::Usage(format!("`{cmd}` takes exactly two bases"))),
    }
}

fn execute(cli: &Cli, limits: &Limits) -> Result<String, CliError> {
    match &cli.command {
        Command::Digit { base, bases, x } => {
            let values = match (base, bases) {
                (Some(b), _) => vec![*b],
                (None, Some(list)) => list.0.clone(),
                (None, None) => return Err(CliError::Usage("give --base or --bases".into())),
            };
            let bases = Base::distinct(&values)?;
            let digits = leading_digit_tuple(x, &bases)?;
            match cli.output.unwrap_or(Output::Text) {
                Output::Text => {
                    let d: Vec<String> = digits.iter().map(|d| d.to_string()).collect();
                    Ok(d.join(",") + "\n")
                }
                Output::Json => to_json(&DigitRecord::new(x, &digits)),
                o => Err(unsupported("digit", o)),
            }
        }
        Command::Deps { bases } => {
            if bases.0.len() < 2 {
                return Err(CliError::Usage("`deps` needs at least two bases".into()));
            }
            let report = pairwise_report(&Base::distinct(&bases.0)?)?;
            match cli.output.unwrap_or(Output::Text) {
                Output::Text => Ok(render::deps_text(&report)),
                Output::Json => to_json(&DepsRecord::from(&report)),
                o => Err(unsupported("deps", o)),
            }
        }
        Command::Image { bases, allow_trivial } => {
            let (b1, b2) = pair(&bases.0, "image")?;
            let report = if *allow_trivial { image_report(b1, b2, limits)? } else { image_exact(b1, b2, limits)? };
            match cli.output.unwrap_or(Output::Json) {
                Output::Text => Ok(render::image_text(&report)),
                Output::Json => to_json(&ImageRecord::from(&report)),
                o => Err(unsupported("image", o)),
            }
        }
        Command::Table { bases } => {
            let (b1, b2) = pair(&bases.0, "table")?;
            let dep = pair_dependence(b1, b2)?
                .ok_or(joint_digits_core::Error::IndependentBases(b1.get(), b2.get()))?;
            let record = TableRecord::from(&joint_table(&dep, limits)?);
            match cli.output.unwrap_or(Output::Text) {
                Output::Text => Ok(render::table_text(&record)),
                Output::Json => to_json(&record),
                o => Err(unsupported("table", o)),
            }
        }
        Command::Witness { bases, target, budget, anchor, no_retry } => {
            let mut q = WitnessQuery::new(&bases.0, target)?.with_budget(*budget)?.retry_other_anchors(!no_retry);
            if let Some(a) = anchor {
                q = q.with_anchor(*a)?;
            }
            let outcome = find_witness(&q)?;
            let verified = recheck(&q, &outcome);
            let record = WitnessRecord::new(q.bases(), q.target(), &outcome, verified);
            match cli.output.unwrap_or(Output::Json) {
                Output::Text => Ok(render::witness_text(&record)),
                Output::Json => to_json(&record),
                o => Err(unsupported("witness", o)),
            }
        }
        Command::Coverage { bases, samples, sampler, start, ratio, precision } => {
            let b = Base::distinct(&bases.0)?;
            let sampler = match sampler {
                SamplerKind::IntegerScan => Sampler::IntegerScan,
                SamplerKind::LowDiscrepancy => Sampler::LowDiscrepancy,
                SamplerKind::Geometric => Sampler::Geometric {
                    start: start.clone().unwrap_or_else(PositiveRational::one),
                    ratio: ratio.clone().unwrap_or_else(|| PositiveRational::from(2)),
                },
            };
            if !matches!(sampler, Sampler::Geometric { .. }) && (start.is_some() || ratio.is_some()) {
                return Err(CliError::Usage("--start and --ratio apply to the geometric sampler only".into()));
            }
            if *precision < 32 {
                return Err(CliError::Usage("--precision must be at least 32".into()));
            }
            let report = sampling::orbit_sample_parallel(&b, *samples, &sampler, *precision, limits)?;
            let record = CoverageRecord::from(&report);
            match cli.output.unwrap_or(Output::Json) {
                Output::Text => Ok(render::coverage_text(&report)),
                Output::Json => to_json(&record),
                Output::Csv => formats::coverage_csv(&record).map_err(|e| CliError::Render(e.to_string())),
            }
        }
    }
}

/// Independent recheck of a witness outcome: a found `x` is recomputed from
/// scratch; a negative verdict has its whole window re-scanned.
pub fn recheck(q: &WitnessQuery, outcome: &WitnessOutcome) -> bool {
    match outcome {
        WitnessOutcome::Found { x, .. } => PositiveRational::from_integer(x.clone())
            .map(|x| verify_witness(&x, q.bases(), q.target()))
            .unwrap_or(false),
        WitnessOutcome::NotAttainable { i, j, verdict } => {
            let Ok(Some(dep)) = pair_dependence(q.bases()[*i], q.bases()[*j]) else { return false };
            let (j1, j2) = (verdict.pair.0.value(), verdict.pair.1.value());
            let (lo, hi) = verdict.scan_range;
            let (e1, e2) = dep.exponents();
            // any admissible c lies strictly inside (-e2, e1)
            lo <= -(e2 as i64) && hi >= e1 as i64 && (lo..=hi).all(|c| !power_criterion_holds(dep.a(), c, j1, j2))
        }
        WitnessOutcome::Exhausted { .. } => false,
    }
}
