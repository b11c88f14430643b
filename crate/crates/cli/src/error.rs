use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("malformed range '{input}': {reason}")]
    Range { input: String, reason: String },

    #[error("{path}:{line}: {reason}")]
    Config {
        path: PathBuf,
        line: usize,
        reason: String,
    },

    #[error("cannot write {path}: {source}")]
    Output {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error(transparent)]
    Numerics(#[from] xychain_core::Error),

    #[error(transparent)]
    Oracle(#[from] xychain_ed::EdError),

    #[error("{failed} of {total} acceptance criteria failed")]
    Verification { failed: usize, total: usize },
}

impl CliError {
    /// Stable machine-readable name printed with every error.
    pub fn category(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Range { .. } => "range",
            CliError::Config { .. } => "config",
            CliError::Output { .. } => "output",
            CliError::Numerics(_) => "numerics",
            CliError::Oracle(_) => "oracle",
            CliError::Verification { .. } => "verification",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification { .. } => 1,
            CliError::Usage(_) | CliError::Range { .. } => 2,
            CliError::Config { .. } => 3,
            CliError::Output { .. } => 4,
            CliError::Numerics(_) => 5,
            CliError::Oracle(_) => 6,
        }
    }
}
