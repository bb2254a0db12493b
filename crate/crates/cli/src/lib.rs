//! Command-line front end for `matrixwell-core`: configuration, scenario
//! dispatch and report files.

pub mod config;
pub mod report;
pub mod scenario;

use std::fmt;
use std::io::{self, Write};

use serde_json::json;

pub use config::{parse_config, ConfigError, Format, RunConfig, Scenario};
pub use report::Report;

#[derive(Debug)]
pub enum RunError {
    Config(ConfigError),
    Compute(matrixwell_core::Error),
    Io(io::Error),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) => 2,
            RunError::Compute(_) => 3,
            RunError::Io(_) => 4,
        }
    }

    /// Single-line JSON object for standard error.
    pub fn to_json(&self) -> String {
        let body = match self {
            RunError::Config(e) => json!({"kind": "config", "field": e.field, "message": e.message}),
            RunError::Compute(e) => json!({"kind": "compute", "message": e.to_string()}),
            RunError::Io(e) => json!({"kind": "io", "message": e.to_string()}),
        };
        json!({ "error": body }).to_string()
    }
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Config(e) => write!(f, "invalid configuration: {e}"),
            RunError::Compute(e) => write!(f, "computation failed: {e}"),
            RunError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for RunError {}

impl From<ConfigError> for RunError {
    fn from(e: ConfigError) -> Self {
        RunError::Config(e)
    }
}

impl From<matrixwell_core::Error> for RunError {
    fn from(e: matrixwell_core::Error) -> Self {
        RunError::Compute(e)
    }
}

impl From<io::Error> for RunError {
    fn from(e: io::Error) -> Self {
        RunError::Io(e)
    }
}

/// Runs the scenario and writes its report. Nothing is written when the
/// computation fails.
pub fn run(config: &RunConfig) -> Result<Report, RunError> {
    let report = scenario::execute(&config.params)?;
    let bytes = report::render(&report, config.format)?;
    match &config.out {
        Some(path) => report::write_atomic(path, &bytes)?,
        None => io::stdout().lock().write_all(&bytes)?,
    }
    Ok(report)
}
