//! Command-line front end for the `econfree` toolkit.
//!
//! Commands build an in-memory [`Output`]; [`Output::emit`] writes it.

pub mod commands;
pub mod config;
pub mod error;
pub mod plot;
pub mod table;

pub use commands::{Inputs, Output};
pub use config::{RunConfig, YearRange};
pub use error::{CliError, CliResult};

use econfree::PanelKind;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Stats,
    Rank {
        index: Option<PanelKind>,
        year: Option<i32>,
        top: usize,
        bottom: usize,
    },
    Fit,
    Regional,
    Gdp,
    Compare,
    Report,
}

/// Loads the inputs named in `cfg` and runs one command.
pub fn run(cfg: &RunConfig, command: &Command) -> CliResult<Output> {
    cfg.validate()?;
    let inputs = Inputs::load(cfg)?;
    let mut out = match command {
        Command::Stats => commands::cmd_stats(cfg, &inputs),
        Command::Rank {
            index,
            year,
            top,
            bottom,
        } => commands::cmd_rank(cfg, &inputs, *index, *year, *top, *bottom),
        Command::Fit => commands::cmd_fit(cfg, &inputs),
        Command::Regional => commands::cmd_regional(cfg, &inputs),
        Command::Gdp => commands::cmd_gdp(cfg, &inputs),
        Command::Compare => commands::cmd_compare(cfg, &inputs),
        Command::Report => commands::cmd_report(cfg, &inputs),
    }?;
    out.tables.insert(0, commands::data_summary(&inputs));
    let log = inputs.load_report_text();
    if !log.is_empty() {
        out.texts.push(("load_report.txt".into(), log));
    }
    Ok(out)
}
