use clap::{Parser, Subcommand, ValueEnum};
use joint_digits_core::PositiveRational;

#[derive(Debug, Parser)]
#[command(name = "joint-digits", version, about = "Exact joint leading digits across several bases")]
pub struct Cli {
    /// Output format; each subcommand has its own default.
    #[arg(long, global = true, value_enum)]
    pub output: Option<Output>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SamplerKind {
    IntegerScan,
    Geometric,
    LowDiscrepancy,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Leading digit(s) of an exact rational.
    Digit {
        /// Single base.
        #[arg(long, value_parser = parse_base, conflicts_with = "bases", required_unless_present = "bases")]
        base: Option<u64>,
        /// Comma-separated distinct bases.
        #[arg(long, value_parser = parse_bases)]
        bases: Option<BaseList>,
        /// Integer `p` or rational `p/q`.
        #[arg(long, value_parser = parse_rational)]
        x: PositiveRational,
    },
    /// Pairwise multiplicative dependence report.
    Deps {
        #[arg(long, value_parser = parse_bases)]
        bases: BaseList,
    },
    /// Exact image of the joint digit map for two bases.
    Image {
        #[arg(long, value_parser = parse_bases)]
        bases: BaseList,
        /// Report an independent pair as fully attained instead of failing.
        #[arg(long)]
        allow_trivial: bool,
    },
    /// Combined-base table of a dependent pair (rows j2, columns j1).
    Table {
        #[arg(long, value_parser = parse_bases)]
        bases: BaseList,
    },
    /// Explicit witness for a digit tuple.
    Witness {
        #[arg(long, value_parser = parse_bases)]
        bases: BaseList,
        /// Comma-separated target digits, one per base.
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        target: Vec<u64>,
        /// Scan steps per anchor.
        #[arg(long, default_value_t = joint_digits_core::witness::DEFAULT_BUDGET)]
        budget: u64,
        /// Index of the base whose digit is pinned by the scan.
        #[arg(long)]
        anchor: Option<usize>,
        /// Do not retry the other anchors after the first is exhausted.
        #[arg(long)]
        no_retry: bool,
    },
    /// Sample the joint digit map and compare with box measures.
    Coverage {
        #[arg(long, value_parser = parse_bases)]
        bases: BaseList,
        #[arg(long)]
        samples: u64,
        #[arg(long, value_enum, default_value = "integer-scan")]
        sampler: SamplerKind,
        /// Geometric sampler start value.
        #[arg(long, value_parser = parse_rational)]
        start: Option<PositiveRational>,
        /// Geometric sampler ratio.
        #[arg(long, value_parser = parse_rational)]
        ratio: Option<PositiveRational>,
        /// Fractional bits of the certified measures.
        #[arg(long, default_value_t = joint_digits_core::torus::DEFAULT_PRECISION)]
        precision: u32,
    },
}

/// Distinct bases, each at least 3, in the order given.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseList(pub Vec<u64>);

fn parse_base(s: &str) -> Result<u64, String> {
    let v: u64 = s.trim().parse().map_err(|_| format!("`{s}` is not a decimal integer"))?;
    if v < 3 {
        return Err(format!("base {v} is smaller than 3"));
    }
    Ok(v)
}

fn parse_bases(s: &str) -> Result<BaseList, String> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let b = parse_base(part)?;
        if out.contains(&b) {
            return Err(format!("base {b} given twice"));
        }
        out.push(b);
    }
    Ok(BaseList(out))
}

fn parse_rational(s: &str) -> Result<PositiveRational, String> {
    s.parse().map_err(|e| format!("`{s}`: {e}"))
}
