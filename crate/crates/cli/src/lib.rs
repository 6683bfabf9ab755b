//! Library backing the `spirallog` binary: run configuration, verification
//! sweeps, and report/CSV output. The binary is a thin argument-parsing
//! layer; integration tests drive the same entry points directly.
//!
//! Exit-code contract: 0 when every check passes, 1 when a mathematical
//! bound is violated, 2 on configuration or I/O errors.

use thiserror::Error;

pub mod commands;
pub mod config;
pub mod output;
pub mod sweep;

pub use commands::{run, Outcome};
pub use config::{CommandKind, FamilyKind, MapFunction, OutputFormat, RunConfig};
pub use output::{RunReport, SummaryReport};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("no run reports found under {path}")]
    MissingArtifacts { path: String },
    #[error(transparent)]
    Family(#[from] spirallog::families::FamilyError),
    #[error(transparent)]
    Function(#[from] spirallog::functions::FunctionError),
    #[error(transparent)]
    Bounds(#[from] spirallog::bounds::BoundsError),
    #[error(transparent)]
    Series(#[from] spirallog::SeriesError),
    #[error(transparent)]
    Spiral(#[from] spirallog::SpiralError),
}

impl CliError {
    /// Every `CliError` is a usage/configuration/environment problem.
    pub fn exit_code(&self) -> u8 {
        2
    }
}
