mod aggregate;
mod counter;
mod identity;
mod stability;

use crate::config::RunConfig;
use crate::error::CliError;
use crate::options::Command;
use crate::report::Report;

pub use aggregate::{battery, summarize};

/// Run one subcommand to a finished report.
pub fn execute(command: Command, cfg: &RunConfig) -> Result<Report, CliError> {
    let mut report = Report::new(command.name(), cfg.echo(command));
    match command {
        Command::Identity => identity::identity(cfg, &mut report)?,
        Command::Hypothesis => stability::hypothesis(cfg, &mut report)?,
        Command::Stabilize => stability::stabilize(cfg, &mut report)?,
        Command::Audit => stability::audit(cfg, &mut report)?,
        Command::Counterexample => counter::counterexample(cfg, &mut report)?,
        Command::Witness => counter::witness(cfg, &mut report)?,
        Command::Report => aggregate::report(cfg, &mut report)?,
    }
    Ok(report)
}

fn compute(e: recistab_core::Error) -> CliError {
    CliError::Compute(e.to_string())
}
