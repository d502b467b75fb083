use std::fs;

use recistab_core::{CoefficientPolicy, ControlFunction, EquationKind, ExactRational, ValuationSpec};
use serde::Serialize;
use serde_json::{json, Value};

use super::execute;
use crate::config::RunConfig;
use crate::error::CliError;
use crate::options::Command;
use crate::report::{Report, Status};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum ItemStatus {
    Verified,
    Discrepancy,
    Failed,
    Inconclusive,
}

impl ItemStatus {
    fn outcome(self) -> Status {
        match self {
            ItemStatus::Verified | ItemStatus::Discrepancy => Status::Pass,
            ItemStatus::Failed => Status::Fail,
            ItemStatus::Inconclusive => Status::Inconclusive,
        }
    }

    fn name(self) -> &'static str {
        match self {
            ItemStatus::Verified => "verified",
            ItemStatus::Discrepancy => "discrepancy",
            ItemStatus::Failed => "failed",
            ItemStatus::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Serialize)]
struct Item {
    source: String,
    id: String,
    location: String,
    status: ItemStatus,
    detail: String,
}

fn int(v: i64) -> ExactRational {
    ExactRational::from_integer(v.into())
}

/// The default set of runs aggregated when no inputs are given.
pub fn battery(base: &RunConfig) -> Result<Vec<Report>, CliError> {
    let with = |f: &dyn Fn(&mut RunConfig)| {
        let mut c = base.clone();
        f(&mut c);
        c
    };
    let small_grid = |c: &mut RunConfig| c.grid.count = 6;
    let q3 = ValuationSpec::padic(3).expect("3 is prime");
    let q2 = ValuationSpec::padic(2).expect("2 is prime");
    let sum = |q: i64| ControlFunction::sum_powers(int(1), int(q)).expect("positive coefficient");
    let constant = ControlFunction::constant(int(1)).expect("positive coefficient");
    let runs: Vec<(Command, RunConfig)> = vec![
        (Command::Identity, with(&|c| {
            c.equation = Some(EquationKind::Nonic);
            c.policy = CoefficientPolicy::Corrected;
            c.samples = 100;
        })),
        (Command::Identity, with(&|c| {
            c.equation = Some(EquationKind::Decic);
            c.policy = CoefficientPolicy::Corrected;
            c.samples = 100;
        })),
        (Command::Identity, with(&|c| {
            c.equation = Some(EquationKind::Nonic);
            c.policy = CoefficientPolicy::Printed;
            c.samples = 1;
        })),
        (Command::Hypothesis, with(&|c| {
            c.equation = Some(EquationKind::Nonic);
            c.valuation = q3;
            c.control = sum(-12);
            c.direction = None;
        })),
        (Command::Hypothesis, with(&|c| {
            c.equation = Some(EquationKind::Nonic);
            c.valuation = q2;
            c.control = sum(2);
            c.direction = None;
        })),
        (Command::Stabilize, with(&|c| {
            c.equation = Some(EquationKind::Nonic);
            c.valuation = q3;
            c.control = constant.clone();
            c.direction = None;
            small_grid(c);
        })),
        (Command::Stabilize, with(&|c| {
            c.equation = Some(EquationKind::Decic);
            c.valuation = q3;
            c.control = constant.clone();
            c.direction = None;
            small_grid(c);
        })),
        (Command::Audit, with(&|c| {
            c.equation = None;
            c.valuation = q3;
            c.control = constant.clone();
            c.points = vec![int(1)];
        })),
        (Command::Counterexample, with(&|c| {
            c.equation = Some(EquationKind::Nonic);
            c.policy = CoefficientPolicy::Corrected;
            c.level = int(1);
            small_grid(c);
        })),
        (Command::Counterexample, with(&|c| {
            c.equation = Some(EquationKind::Decic);
            c.policy = CoefficientPolicy::Corrected;
            c.level = int(2);
            small_grid(c);
        })),
        (Command::Witness, with(&|c| {
            c.equation = Some(EquationKind::Nonic);
            c.level = int(1);
            c.alphas = vec![ExactRational::new(1.into(), 2.into()), int(1), int(10), int(1000)];
        })),
        (Command::Witness, with(&|c| {
            c.equation = Some(EquationKind::Decic);
            c.level = int(2);
            c.alphas = vec![int(5), int(100)];
        })),
    ];
    runs.into_iter().map(|(cmd, cfg)| execute(cmd, &cfg)).collect()
}

fn text<'a>(v: &'a Value, path: &[&str]) -> &'a str {
    path.iter()
        .try_fold(v, |v, key| v.get(key))
        .and_then(Value::as_str)
        .unwrap_or("")
}

fn records(doc: &Value) -> &[Value] {
    doc.get("records").and_then(Value::as_array).map_or(&[], Vec::as_slice)
}

fn plain(doc: &Value, ok: &str, bad: ItemStatus, bad_detail: String) -> (ItemStatus, String) {
    match text(doc, &["summary", "status"]) {
        "pass" => (ItemStatus::Verified, ok.to_string()),
        "inconclusive" => (ItemStatus::Inconclusive, bad_detail),
        _ => (bad, bad_detail),
    }
}

fn items_of(doc: &Value) -> Vec<Item> {
    let command = text(doc, &["command"]);
    let equation = text(doc, &["config", "equation"]);
    let valuation = text(doc, &["config", "valuation"]);
    let control = text(doc, &["config", "control"]);
    let n = records(doc).len();
    let item = |id: String, location: String, (status, detail): (ItemStatus, String)| Item {
        source: command.to_string(),
        id,
        location,
        status,
        detail,
    };
    match command {
        "identity" => {
            let policy = text(doc, &["config", "policy"]);
            let first_bad = records(doc).iter().find(|r| r.get("zero") == Some(&Value::Bool(false)));
            let bad_detail = first_bad.map_or("residual not computed".to_string(), |r| {
                format!(
                    "residual {} at ({}, {})",
                    text(r, &["residual"]),
                    text(r, &["x"]),
                    text(r, &["y"])
                )
            });
            let bad = if policy == "printed" {
                ItemStatus::Discrepancy
            } else {
                ItemStatus::Failed
            };
            let detail = if policy == "printed" {
                format!("printed final bracket coefficient leaves {bad_detail}")
            } else {
                bad_detail
            };
            vec![item(
                format!("identity/{equation}/{policy}"),
                format!("{equation} equation, bracket expansion of the exact solution"),
                plain(doc, &format!("{n} residuals vanish exactly"), bad, detail),
            )]
        }
        "hypothesis" => {
            let diagnosis = records(doc)
                .iter()
                .map(|r| format!("{}: {}", text(r, &["direction"]), text(r, &["diagnosis"])))
                .collect::<Vec<_>>()
                .join(" | ");
            let bad = if valuation == "p3" {
                ItemStatus::Failed
            } else {
                ItemStatus::Discrepancy
            };
            vec![item(
                format!("hypothesis/{equation}/{control}/{valuation}"),
                format!("{equation} stability hypothesis, vanishing condition"),
                plain(doc, &diagnosis, bad, diagnosis.clone()),
            )]
        }
        "stabilize" => {
            let ok = format!(
                "bound dominates the distance to the approximant at {n} points ({})",
                text(doc, &["setup", "control"])
            );
            let notes = doc
                .pointer("/summary/notes")
                .and_then(Value::as_array)
                .map(|a| a.iter().filter_map(Value::as_str).collect::<Vec<_>>().join("; "))
                .unwrap_or_default();
            vec![item(
                format!("stabilize/{equation}/{control}/{valuation}"),
                format!("{equation} stability theorem, direct method"),
                plain(doc, &ok, ItemStatus::Failed, format!("bound violated or refused: {notes}")),
            )]
        }
        "audit" => records(doc)
            .iter()
            .map(|r| {
                let assessment = text(r, &["assessment"]);
                let status = match assessment {
                    "tight" | "valid-not-tight" => ItemStatus::Verified,
                    "invalid" => ItemStatus::Failed,
                    _ => ItemStatus::Discrepancy,
                };
                let detail = format!(
                    "{assessment}: stated {} = {}, computed supremum {}{}",
                    text(r, &["stated_formula"]),
                    r.get("paper_formula_value").and_then(Value::as_str).unwrap_or("none"),
                    r.get("computed_supremum").and_then(Value::as_str).unwrap_or("none"),
                    match text(r, &["notes"]) {
                        "" => String::new(),
                        notes => format!(" ({notes})"),
                    }
                );
                item(
                    format!("audit/{}", text(r, &["id"])),
                    text(r, &["location"]).to_string(),
                    (status, detail),
                )
            })
            .collect(),
        "counterexample" => {
            let conclusive = doc.pointer("/certification/conclusive").and_then(Value::as_u64).unwrap_or(0);
            let violated = records(doc).iter().filter(|r| text(r, &["verdict"]) == "violated").count();
            let summary = format!("{conclusive} of {n} pairs conclusive, {violated} violated");
            vec![item(
                format!("counterexample/{equation}"),
                format!("{equation} counterexample, bounded difference inequality"),
                plain(doc, &summary, ItemStatus::Discrepancy, summary.clone()),
            )]
        }
        "witness" => records(doc)
            .iter()
            .map(|r| {
                let sound = r.get("sound") == Some(&Value::Bool(true));
                let detail = format!(
                    "m = {}, x = {}, g(x) = {} > threshold {}",
                    r.get("m").map(Value::to_string).unwrap_or_default(),
                    text(r, &["x"]),
                    text(r, &["g_of_x"]),
                    text(r, &["threshold"]),
                );
                item(
                    format!("witness/{equation}/alpha={}", text(r, &["alpha"])),
                    format!("{equation} counterexample, non-stability witness"),
                    (if sound { ItemStatus::Verified } else { ItemStatus::Failed }, detail),
                )
            })
            .collect(),
        other => vec![item(
            format!("unknown/{other}"),
            String::new(),
            (ItemStatus::Failed, format!("unrecognized report command {other:?}")),
        )],
    }
}

/// Fold report documents into audit items.
pub fn summarize(docs: &[Value], report: &mut Report) {
    let mut counts = [0usize; 4];
    let mut sources = Vec::new();
    for doc in docs {
        sources.push(json!({
            "command": text(doc, &["command"]),
            "equation": text(doc, &["config", "equation"]),
            "status": text(doc, &["summary", "status"]),
            "records": records(doc).len(),
        }));
        for it in items_of(doc) {
            counts[it.status as usize] += 1;
            let outcome = it.status.outcome();
            report.push(it, outcome);
        }
    }
    let names = [
        ItemStatus::Verified,
        ItemStatus::Discrepancy,
        ItemStatus::Failed,
        ItemStatus::Inconclusive,
    ];
    let tally: serde_json::Map<String, Value> =
        names.iter().map(|s| (s.name().to_string(), counts[*s as usize].into())).collect();
    report.section("items", Value::Object(tally));
    report.section("sources", Value::Array(sources));
}

pub fn report(cfg: &RunConfig, report: &mut Report) -> Result<(), CliError> {
    let docs: Vec<Value> = if cfg.inputs.is_empty() {
        battery(cfg)?.iter().map(Report::to_value).collect()
    } else {
        cfg.inputs
            .iter()
            .map(|p| {
                let raw = fs::read_to_string(p)
                    .map_err(|e| CliError::Io(format!("cannot read {}: {e}", p.display())))?;
                serde_json::from_str(&raw)
                    .map_err(|e| CliError::Io(format!("{} is not a report: {e}", p.display())))
            })
            .collect::<Result<_, _>>()?
    };
    summarize(&docs, report);
    Ok(())
}
