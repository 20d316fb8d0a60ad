//! Command-line front end: configuration parsing, CSV emission, bundled
//! reference scenarios, and the verification sweep.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod presets;

use clap::error::ErrorKind;
use clap::Parser;

pub use commands::{Cli, Command};
pub use error::CliError;

/// Parses the process arguments and dispatches; returns the process exit
/// code (0 success, 1 usage or configuration error, 2 failed checks,
/// 3 refused oracle budget).
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return code;
        }
    };
    match commands::dispatch(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}
