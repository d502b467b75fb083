//! Report documents and their JSON and TSV renderings.

use std::fs;
use std::path::{Path, PathBuf};

use recistab_core::valued_field::to_exact_string;
use recistab_core::{ExactRational, NormValue, ValuationSpec};
use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::CliError;

pub const TOOL: &str = "recistab";
pub const OUT_DIR_ENV: &str = "RECISTAB_OUT_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Inconclusive,
    Fail,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Inconclusive => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub config: Value,
    records: Vec<Value>,
    passed: usize,
    failed: usize,
    inconclusive: usize,
    status: Option<Status>,
    notes: Vec<String>,
    sections: Map<String, Value>,
    pub wall_clock_ms: Option<u128>,
}

impl Report {
    pub fn new(command: &str, config: Value) -> Self {
        Report {
            command: command.to_string(),
            config,
            records: Vec::new(),
            passed: 0,
            failed: 0,
            inconclusive: 0,
            status: None,
            notes: Vec::new(),
            sections: Map::new(),
            wall_clock_ms: None,
        }
    }

    pub fn push(&mut self, record: impl Serialize, outcome: Status) {
        let value = serde_json::to_value(record).expect("records serialize to JSON");
        self.records.push(value);
        match outcome {
            Status::Pass => self.passed += 1,
            Status::Fail => self.failed += 1,
            Status::Inconclusive => self.inconclusive += 1,
        }
    }

    /// Override the status derived from the record tallies.
    pub fn set_status(&mut self, status: Status) {
        self.status = Some(status);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn section(&mut self, name: &str, value: Value) {
        self.sections.insert(name.to_string(), value);
    }

    pub fn records(&self) -> &[Value] {
        &self.records
    }

    pub fn status(&self) -> Status {
        self.status.unwrap_or(if self.failed > 0 {
            Status::Fail
        } else if self.inconclusive > 0 {
            Status::Inconclusive
        } else {
            Status::Pass
        })
    }

    pub fn to_value(&self) -> Value {
        let mut doc = Map::new();
        doc.insert("tool".into(), TOOL.into());
        doc.insert("version".into(), env!("CARGO_PKG_VERSION").into());
        doc.insert("command".into(), self.command.clone().into());
        doc.insert("config".into(), self.config.clone());
        let mut summary = Map::new();
        summary.insert("status".into(), self.status().name().into());
        summary.insert("records".into(), self.records.len().into());
        summary.insert("passed".into(), self.passed.into());
        summary.insert("failed".into(), self.failed.into());
        summary.insert("inconclusive".into(), self.inconclusive.into());
        if !self.notes.is_empty() {
            summary.insert("notes".into(), self.notes.clone().into());
        }
        doc.insert("summary".into(), Value::Object(summary));
        for (k, v) in &self.sections {
            doc.insert(k.clone(), v.clone());
        }
        doc.insert("records".into(), Value::Array(self.records.clone()));
        if let Some(ms) = self.wall_clock_ms {
            doc.insert("wall_clock_ms".into(), (ms as u64).into());
        }
        Value::Object(doc)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("report serializes");
        s.push('\n');
        s
    }

    /// One row per record under a header with the union of record keys in
    /// first-seen order. Nested values are written as compact JSON.
    pub fn to_tsv(&self) -> String {
        let mut columns: Vec<&str> = Vec::new();
        for r in &self.records {
            if let Value::Object(m) = r {
                for k in m.keys() {
                    if !columns.contains(&k.as_str()) {
                        columns.push(k);
                    }
                }
            }
        }
        if columns.is_empty() {
            return String::new();
        }
        let mut out = columns.join("\t");
        out.push('\n');
        for r in &self.records {
            let cells: Vec<String> = columns.iter().map(|c| cell(r.get(*c))).collect();
            out.push_str(&cells.join("\t"));
            out.push('\n');
        }
        out
    }
}

fn cell(v: Option<&Value>) -> String {
    let raw = match v {
        None | Some(Value::Null) => String::new(),
        Some(Value::String(s)) => s.clone(),
        Some(other) => other.to_string(),
    };
    raw.replace('\\', "\\\\").replace('\t', "\\t").replace('\n', "\\n")
}

pub fn exact(q: &ExactRational) -> String {
    to_exact_string(q)
}

pub fn exact_opt(q: Option<&ExactRational>) -> Option<String> {
    q.map(to_exact_string)
}

/// `"p^e"` when the norm is an integral power of the prime.
pub fn norm_power(n: &NormValue, v: ValuationSpec) -> Option<String> {
    let p = v.prime()?;
    n.power_of(p).map(|e| format!("{p}^{e}"))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("cannot create {}: {e}", dir.display())))?;
    }
    fs::write(path, contents).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

/// Where the JSON document goes: `--out`, else `$RECISTAB_OUT_DIR/<command>.json`,
/// else standard output (`None`).
pub fn json_destination(out: Option<&Path>, command: &str) -> Option<PathBuf> {
    out.map(Path::to_path_buf).or_else(|| {
        std::env::var_os(OUT_DIR_ENV)
            .filter(|d| !d.is_empty())
            .map(|d| PathBuf::from(d).join(format!("{command}.json")))
    })
}

pub fn emit(report: &Report, out: Option<&Path>, tsv: Option<&Path>) -> Result<(), CliError> {
    let json = report.to_json();
    match json_destination(out, &report.command) {
        Some(path) => write_file(&path, &json)?,
        None => print!("{json}"),
    }
    if let Some(path) = tsv {
        write_file(path, &report.to_tsv())?;
    }
    Ok(())
}
