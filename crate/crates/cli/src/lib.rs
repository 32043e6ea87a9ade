//! Manifest-driven front end: parse a run manifest, dispatch the command and
//! render the result as an aligned table or as CSV.

pub mod manifest;
pub mod report;
mod run;

use thiserror::Error;

pub use manifest::{Manifest, ParseError};
pub use report::{emit_csv, emit_plot_data, emit_report, Format, Report, ReportRow};
pub use run::{run_manifest, run_manifest_path, run_parsed};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("manifest parse error at {0}")]
    Parse(ParseError),
    #[error("manifest: {0}")]
    Manifest(String),
    #[error(transparent)]
    Compute(#[from] filtreg::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Clean = 0,
    Violated = 1,
    Error = 2,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

impl Report {
    /// Component errors outrank violations.
    pub fn exit_status(&self) -> ExitStatus {
        if !self.errors.is_empty() {
            ExitStatus::Error
        } else if self.violated {
            ExitStatus::Violated
        } else {
            ExitStatus::Clean
        }
    }
}
