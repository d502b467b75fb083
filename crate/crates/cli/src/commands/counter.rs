use recistab_core::counterexample::{
    nonstability_witness, verify_bound_grid, GajdaParams, Verdict, VERDICT_THRESHOLD_BITS,
};
use recistab_core::ExactRational;
use serde::Serialize;
use serde_json::json;

use super::compute;
use crate::config::RunConfig;
use crate::error::CliError;
use crate::report::{exact, exact_opt, Report, Status};

#[derive(Serialize)]
struct VerdictRow {
    index: usize,
    x: String,
    y: String,
    lower: Option<String>,
    upper: Option<String>,
    rhs: String,
    verdict: &'static str,
    conclusive: bool,
    note: Option<String>,
}

/// Certified check of `|Δ| <= C (|x|^-e + |y|^-e)` for the scaled series on
/// every admissible grid pair.
pub fn counterexample(cfg: &RunConfig, report: &mut Report) -> Result<(), CliError> {
    let params = GajdaParams::new(cfg.kind(), cfg.level.clone()).map_err(compute)?;
    let pairs = cfg.grid.pairs().map_err(compute)?;
    let rows = verify_bound_grid(&params, cfg.policy, &pairs, cfg.bits);
    let mut conclusive = 0usize;
    for row in &rows {
        if row.conclusive() {
            conclusive += 1;
        }
        let outcome = match row.verdict {
            Verdict::Holds => Status::Pass,
            Verdict::Violated => Status::Fail,
            Verdict::Inconclusive => Status::Inconclusive,
        };
        let magnitude = row.magnitude.as_ref();
        report.push(
            VerdictRow {
                index: row.index,
                x: exact(&row.x),
                y: exact(&row.y),
                lower: magnitude.map(|m| exact(&m.lower)),
                upper: exact_opt(magnitude.and_then(|m| m.upper.as_ref())),
                rhs: exact(&row.rhs),
                verdict: row.verdict.name(),
                conclusive: row.conclusive(),
                note: row.note.clone(),
            },
            outcome,
        );
    }
    let fraction = if rows.is_empty() {
        None
    } else {
        Some(exact(&ExactRational::new(conclusive.into(), rows.len().into())))
    };
    report.section(
        "certification",
        json!({
            "pairs": rows.len(),
            "conclusive": conclusive,
            "conclusive_fraction": fraction,
            "relative_width_threshold": format!("2^-{VERDICT_THRESHOLD_BITS}"),
            "inequality_constant": exact(&params.inequality_constant()),
            "series_bound": exact(&params.series_bound()),
        }),
    );
    Ok(())
}

#[derive(Serialize)]
struct WitnessRow {
    alpha: String,
    m: u32,
    x: String,
    g_of_x: String,
    lower_envelope: String,
    threshold: String,
    sound: bool,
}

pub fn witness(cfg: &RunConfig, report: &mut Report) -> Result<(), CliError> {
    let params = GajdaParams::new(cfg.kind(), cfg.level.clone()).map_err(compute)?;
    for alpha in &cfg.alphas {
        let w = nonstability_witness(&params, alpha).map_err(compute)?;
        let sound = w.is_sound(&params);
        report.push(
            WitnessRow {
                alpha: exact(&w.alpha),
                m: w.m,
                x: exact(&w.x),
                g_of_x: exact(&w.g_of_x),
                lower_envelope: exact(&w.lower_envelope),
                threshold: exact(&w.threshold),
                sound,
            },
            if sound { Status::Pass } else { Status::Fail },
        );
    }
    Ok(())
}
