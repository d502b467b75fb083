//! Command-line front end for recistab: run configuration, subcommand
//! pipelines and report emission.

pub mod commands;
pub mod config;
pub mod error;
pub mod options;
pub mod report;

use std::ffi::OsString;
use std::fs;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;

use crate::config::RunConfig;
use crate::error::CliError;
use crate::options::{Cli, Options};

fn load(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut options = cli.options.clone();
    if let Some(path) = &cli.config {
        let raw = fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        let file: Options = toml::from_str(&raw)
            .map_err(|e| CliError::Usage(format!("invalid config {}: {e}", path.display())))?;
        options = options.or(file);
    }
    RunConfig::resolve(&options)
}

fn execute(cli: Cli) -> Result<i32, CliError> {
    let cfg = load(&cli)?;
    let start = Instant::now();
    let mut report = commands::execute(cli.command, &cfg)?;
    if cli.timing {
        report.wall_clock_ms = Some(start.elapsed().as_millis());
    }
    report::emit(&report, cfg.out.as_deref(), cfg.tsv.as_deref())?;
    Ok(report.status().exit_code())
}

/// Parse `argv` (program name first), run the subcommand and return the exit
/// code: 0 pass, 1 failed check, 2 inconclusive, 64 usage error.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("recistab: {e}");
            e.exit_code()
        }
    }
}
