//! Process-level errors mapped onto the documented exit codes.

use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Rejected configuration input; carries the 1-based line of the first
    /// offending token.
    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },
    /// Anything else the caller can fix by invoking differently.
    #[error("{0}")]
    Usage(String),
    /// Reading input or writing artifacts failed.
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: io::Error,
    },
    /// An exact oracle refused the instance as too large for its budget.
    #[error("{0}")]
    Budget(String),
}

impl CliError {
    pub fn io(context: impl Into<String>, source: io::Error) -> Self {
        CliError::Io {
            context: context.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config { .. } | CliError::Usage(_) | CliError::Io { .. } => 1,
            CliError::Budget(_) => 3,
        }
    }
}
