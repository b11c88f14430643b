//! Library side of the `xychain` command: flag and config resolution,
//! grid parsing, output rendering, commands and the acceptance checks.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod range;
pub mod verify;

pub use config::{Command, RunConfig};
pub use error::{CliError, Result};
