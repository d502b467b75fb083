//! Raw run options as they arrive from flags or a TOML file.

use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::de::{self, Deserializer, Visitor};
use serde::Deserialize;

#[derive(Debug, Parser)]
#[command(
    name = "recistab",
    version,
    about = "Exact verification of reciprocal nonic and decic functional equations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// TOML file with default values for any option below
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Append wall-clock time to the report (breaks byte-for-byte reproducibility)
    #[arg(long, global = true)]
    pub timing: bool,

    #[command(flatten)]
    pub options: Options,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Check that the exact solution annihilates the difference operator on random pairs
    Identity,
    /// Evaluate the vanishing condition on the control function
    Hypothesis,
    /// Run the direct method on a perturbed mapping and check the stability bound
    Stabilize,
    /// Compare each stated closed-form bound with the computed supremum
    Audit,
    /// Certify the counterexample inequality on a grid with interval arithmetic
    Counterexample,
    /// Produce explicit non-stability witnesses
    Witness,
    /// Aggregate prior reports (or a built-in battery) into one audit document
    Report,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Identity => "identity",
            Command::Hypothesis => "hypothesis",
            Command::Stabilize => "stabilize",
            Command::Audit => "audit",
            Command::Counterexample => "counterexample",
            Command::Witness => "witness",
            Command::Report => "report",
        }
    }
}

/// A rational written as `n`, `n/d` or a decimal. TOML files may also give
/// plain integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalArg(pub String);

impl std::str::FromStr for RationalArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(RationalArg(s.trim().to_string()))
    }
}

impl<'de> Deserialize<'de> for RationalArg {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = RationalArg;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a rational string such as \"1/4\"")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<RationalArg, E> {
                Ok(RationalArg(v.to_string()))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<RationalArg, E> {
                Ok(RationalArg(v.to_string()))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<RationalArg, E> {
                Ok(RationalArg(v.trim().to_string()))
            }
        }
        d.deserialize_any(V)
    }
}

/// Every tunable. Flags and file keys share names (`grid_min` in TOML is
/// `--grid-min` on the command line).
#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Options {
    /// nonic or decic
    #[arg(long, global = true)]
    pub equation: Option<String>,
    /// corrected or printed bracket coefficients
    #[arg(long, global = true)]
    pub policy: Option<String>,
    /// Field: p3, p5, ..., or real
    #[arg(long, global = true, alias = "field")]
    pub valuation: Option<String>,
    /// constant, sum-powers, product-powers or mixed
    #[arg(long, global = true)]
    pub control: Option<String>,
    /// Scale factor of the control function
    #[arg(long, global = true)]
    pub epsilon: Option<RationalArg>,
    /// Exponent of the sum and mixed controls
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub q: Option<RationalArg>,
    /// First exponent of the product control
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub r: Option<RationalArg>,
    /// Second exponent of the product control
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub s: Option<RationalArg>,
    /// auto, +1 (contract) or -1 (expand)
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub direction: Option<String>,
    /// Number of random pairs
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// Seed for sampling and perturbations
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Smallest grid coordinate
    #[arg(long, global = true)]
    pub grid_min: Option<RationalArg>,
    /// Largest grid coordinate
    #[arg(long, global = true)]
    pub grid_max: Option<RationalArg>,
    /// Points per grid axis
    #[arg(long, global = true)]
    pub grid_count: Option<usize>,
    /// linear, geometric or random
    #[arg(long, global = true)]
    pub spacing: Option<String>,
    /// Iteration depth K of the approximant
    #[arg(long, global = true)]
    pub iterations: Option<u32>,
    /// Explicit terms before the geometric tail
    #[arg(long, global = true)]
    pub horizon: Option<u32>,
    /// Interval precision in bits
    #[arg(long, global = true)]
    pub bits: Option<u32>,
    /// Level constant of the counterexample (c for the decic equation)
    #[arg(long, global = true, alias = "c")]
    pub k: Option<RationalArg>,
    /// Candidate stability constants, comma separated
    #[arg(long, global = true, alias = "beta", value_delimiter = ',')]
    pub alpha: Option<Vec<RationalArg>>,
    /// Evaluation points, comma separated
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    pub x: Option<Vec<RationalArg>>,
    /// Scale r of the exact solution r^e / x^e
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub scale: Option<RationalArg>,
    /// Number of perturbed points in the stabilize mapping
    #[arg(long, global = true)]
    pub perturb: Option<usize>,
    /// measured or given
    #[arg(long, global = true)]
    pub envelope: Option<String>,
    /// Output path of the JSON report
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Also write a tab-separated table of the records
    #[arg(long, global = true, value_name = "FILE")]
    pub tsv: Option<PathBuf>,
    /// Reports to aggregate (report subcommand)
    #[arg(long, global = true, value_name = "FILE")]
    pub input: Option<Vec<PathBuf>>,
}

macro_rules! fill {
    ($self:ident, $other:ident, $($field:ident),* $(,)?) => {
        $( if $self.$field.is_none() { $self.$field = $other.$field; } )*
    };
}

impl Options {
    /// Keep every value given on the command line; take the rest from `file`.
    pub fn or(mut self, file: Options) -> Options {
        fill!(
            self, file, equation, policy, valuation, control, epsilon, q, r, s, direction,
            samples, seed, grid_min, grid_max, grid_count, spacing, iterations, horizon, bits,
            k, alpha, x, scale, perturb, envelope, out, tsv, input,
        );
        self
    }
}
