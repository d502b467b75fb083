use recistab_core::funceq::delta;
use recistab_core::sampling::Sampler;
use recistab_core::{ExactRational, RootMapping};
use serde::Serialize;
use serde_json::json;

use super::compute;
use crate::config::RunConfig;
use crate::error::CliError;
use crate::report::{exact, Report, Status};

#[derive(Serialize)]
struct Row {
    index: usize,
    x: String,
    y: String,
    residual: String,
    zero: bool,
}

/// Residual of the scaled exact solution at `(1, 1)` and then at seeded
/// random admissible pairs.
pub fn identity(cfg: &RunConfig, report: &mut Report) -> Result<(), CliError> {
    let kind = cfg.kind();
    let m = RootMapping::scaled(kind.degree(), cfg.scale.clone()).map_err(compute)?;
    let mut sampler = Sampler::new(cfg.seed);
    let one = ExactRational::from_integer(1.into());
    let mut nonzero = 0usize;
    for index in 0..cfg.samples {
        let (x, y) = if index == 0 {
            (one.clone(), one.clone())
        } else {
            sampler.admissible_pair(&m, 50)
        };
        let residual = delta(kind, cfg.policy, &m, &x, &y).map_err(compute)?;
        let zero = residual == ExactRational::from_integer(0.into());
        if !zero {
            nonzero += 1;
        }
        let row = Row {
            index,
            x: exact(&x),
            y: exact(&y),
            residual: exact(&residual),
            zero,
        };
        report.push(row, if zero { Status::Pass } else { Status::Fail });
    }
    report.section(
        "bracket",
        json!({
            "coefficients": kind.coefficients(cfg.policy),
            "front_factor": kind.front_factor(),
            "nonzero_residuals": nonzero,
        }),
    );
    Ok(())
}
