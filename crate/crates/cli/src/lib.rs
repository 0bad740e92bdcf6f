//! The `skg` command-line tool and the experiments behind it.

pub mod args;
pub mod commands;
pub mod error;
pub mod experiment;
pub mod report;

pub use args::{Cli, Command};
pub use error::{CliError, Result};

pub fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Generate(a) => commands::run_generate(a),
        Command::Predict(a) => commands::run_predict(a),
        Command::Analyze(a) => commands::run_analyze(a),
        Command::Compare(a) => commands::run_compare(a),
    }
}
