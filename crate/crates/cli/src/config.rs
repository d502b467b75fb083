//! Resolved run configuration.

use std::path::PathBuf;

use recistab_core::hyers::{ControlFamily, DEFAULT_HORIZON};
use recistab_core::sampling::{GridSpec, Spacing};
use recistab_core::valued_field::{parse_exact, to_exact_string};
use recistab_core::{
    CoefficientPolicy, ControlFunction, Direction, EquationKind, ExactRational, ValuationSpec,
};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::options::{Command, Options, RationalArg};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Envelope {
    /// Replace the control coefficient by the smallest one the mapping needs.
    Measured,
    /// Use the control exactly as configured.
    Given,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    /// `None` when not given: audits then cover both equations, other
    /// commands use the nonic one.
    pub equation: Option<EquationKind>,
    pub policy: CoefficientPolicy,
    pub valuation: ValuationSpec,
    pub control: ControlFunction,
    /// `None` picks whichever direction satisfies the condition.
    pub direction: Option<Direction>,
    pub samples: usize,
    pub seed: u64,
    pub grid: GridSpec,
    pub iterations: u32,
    pub horizon: u32,
    pub bits: u32,
    pub level: ExactRational,
    pub alphas: Vec<ExactRational>,
    pub points: Vec<ExactRational>,
    pub scale: ExactRational,
    pub perturb: usize,
    pub envelope: Envelope,
    pub out: Option<PathBuf>,
    pub tsv: Option<PathBuf>,
    pub inputs: Vec<PathBuf>,
}

fn rational(arg: &RationalArg, what: &str) -> Result<ExactRational, CliError> {
    parse_exact(&arg.0).map_err(|_| CliError::Usage(format!("{what}: cannot parse {:?} as a rational", arg.0)))
}

fn rational_or(arg: &Option<RationalArg>, what: &str, default: i64) -> Result<ExactRational, CliError> {
    match arg {
        Some(a) => rational(a, what),
        None => Ok(ExactRational::from_integer(default.into())),
    }
}

fn list(args: &Option<Vec<RationalArg>>, what: &str, default: &[i64]) -> Result<Vec<ExactRational>, CliError> {
    match args {
        Some(v) if !v.is_empty() => v.iter().map(|a| rational(a, what)).collect(),
        _ => Ok(default.iter().map(|&d| ExactRational::from_integer(d.into())).collect()),
    }
}

fn usage<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

fn exponent(arg: &Option<RationalArg>, name: &str, family: ControlFamily) -> Result<ExactRational, CliError> {
    let a = arg
        .as_ref()
        .ok_or_else(|| CliError::Usage(format!("the {} control needs --{name}", family.name())))?;
    rational(a, name)
}

fn control(o: &Options) -> Result<ControlFunction, CliError> {
    let family = ControlFamily::parse(o.control.as_deref().unwrap_or("constant")).map_err(usage)?;
    let epsilon = rational_or(&o.epsilon, "epsilon", 1)?;
    let built = match family {
        ControlFamily::Constant => ControlFunction::constant(epsilon),
        ControlFamily::SumPowers => ControlFunction::sum_powers(epsilon, exponent(&o.q, "q", family)?),
        ControlFamily::ProductPowers => ControlFunction::product_powers(
            epsilon,
            exponent(&o.r, "r", family)?,
            exponent(&o.s, "s", family)?,
        ),
        ControlFamily::MixedProductSum => ControlFunction::mixed(epsilon, exponent(&o.q, "q", family)?),
    };
    built.map_err(usage)
}

impl RunConfig {
    pub fn kind(&self) -> EquationKind {
        self.equation.unwrap_or(EquationKind::Nonic)
    }

    pub fn kinds(&self) -> Vec<EquationKind> {
        self.equation.map_or(EquationKind::ALL.to_vec(), |k| vec![k])
    }

    pub fn resolve(o: &Options) -> Result<RunConfig, CliError> {
        let seed = o.seed.unwrap_or(0);
        let direction = match o.direction.as_deref().map(str::trim) {
            None | Some("auto") => None,
            Some(d) => Some(
                Direction::parse(d).ok_or_else(|| CliError::Usage(format!("direction must be auto, +1 or -1, got {d:?}")))?,
            ),
        };
        let spacing = match o.spacing.as_deref().unwrap_or("geometric") {
            "linear" => Spacing::Linear,
            "geometric" => Spacing::Geometric,
            "random" => Spacing::Random { seed },
            other => return Err(CliError::Usage(format!("unknown grid spacing {other:?}"))),
        };
        let grid_min = match &o.grid_min {
            Some(a) => rational(a, "grid-min")?,
            None => ExactRational::new(1.into(), 4.into()),
        };
        let grid = GridSpec {
            min: grid_min,
            max: rational_or(&o.grid_max, "grid-max", 81)?,
            count: o.grid_count.unwrap_or(20),
            spacing,
        };
        if grid.min <= ExactRational::from_integer(0.into()) || grid.max < grid.min {
            return Err(CliError::Usage("grid range must satisfy 0 < grid-min <= grid-max".into()));
        }
        let envelope = match o.envelope.as_deref().unwrap_or("measured") {
            "measured" => Envelope::Measured,
            "given" => Envelope::Given,
            other => return Err(CliError::Usage(format!("envelope must be measured or given, got {other:?}"))),
        };
        let level = rational_or(&o.k, "k", 1)?;
        if level <= ExactRational::from_integer(0.into()) {
            return Err(CliError::Usage("k must be positive".into()));
        }
        let alphas = list(&o.alpha, "alpha", &[1])?;
        if alphas.iter().any(|a| a <= &ExactRational::from_integer(0.into())) {
            return Err(CliError::Usage("alpha values must be positive".into()));
        }
        let scale = rational_or(&o.scale, "scale", 1)?;
        if scale == ExactRational::from_integer(0.into()) {
            return Err(CliError::Usage("scale must be nonzero".into()));
        }
        Ok(RunConfig {
            equation: o.equation.as_deref().map(EquationKind::parse).transpose().map_err(usage)?,
            policy: CoefficientPolicy::parse(o.policy.as_deref().unwrap_or("corrected")).map_err(usage)?,
            valuation: ValuationSpec::parse(o.valuation.as_deref().unwrap_or("p3")).map_err(usage)?,
            control: control(o)?,
            direction,
            samples: o.samples.unwrap_or(500),
            seed,
            grid,
            iterations: o.iterations.unwrap_or(8),
            horizon: o.horizon.unwrap_or(DEFAULT_HORIZON),
            bits: o.bits.unwrap_or(96),
            level,
            alphas,
            points: list(&o.x, "x", &[1])?,
            scale,
            perturb: o.perturb.unwrap_or(3),
            envelope,
            out: o.out.clone(),
            tsv: o.tsv.clone(),
            inputs: o.input.clone().unwrap_or_default(),
        })
    }

    /// The settings that determine a run's results. Paths are left out so that
    /// the same run written to two places yields identical documents.
    pub fn echo(&self, command: Command) -> Value {
        let s = to_exact_string;
        let equation = match command {
            Command::Audit | Command::Report => self.equation.map_or("all", EquationKind::name),
            _ => self.kind().name(),
        };
        json!({
            "equation": equation,
            "policy": self.policy.name(),
            "valuation": self.valuation.name(),
            "control": self.control.to_string(),
            "direction": self.direction.map_or("auto".to_string(), |d| d.to_string()),
            "samples": self.samples,
            "seed": self.seed,
            "grid": {
                "min": s(&self.grid.min),
                "max": s(&self.grid.max),
                "count": self.grid.count,
                "spacing": self.grid.spacing.name(),
            },
            "iterations": self.iterations,
            "horizon": self.horizon,
            "bits": self.bits,
            "k": s(&self.level),
            "alpha": self.alphas.iter().map(s).collect::<Vec<_>>(),
            "x": self.points.iter().map(s).collect::<Vec<_>>(),
            "scale": s(&self.scale),
            "perturb": self.perturb,
            "envelope": match self.envelope {
                Envelope::Measured => "measured",
                Envelope::Given => "given",
            },
        })
    }
}
