use std::io;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use sheffer_core::Error as CoreError;

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    Config = 2,
    NonConvergence = 3,
    CheckFailure = 4,
}

impl ExitStatus {
    pub fn code(self) -> u8 {
        self as u8
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid config field `{field}`: {reason}")]
    Config { field: String, reason: String },

    #[error("numeric non-convergence: {0}")]
    NonConvergence(String),

    #[error("check failed: {0}")]
    Check(String),

    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: io::Error },

    #[error("output error: {0}")]
    Output(String),
}

impl CliError {
    pub fn config(field: impl Into<String>, reason: impl Into<String>) -> Self {
        CliError::Config { field: field.into(), reason: reason.into() }
    }

    /// Maps a library error raised while handling `field`.
    pub fn from_core(field: &str, err: CoreError) -> Self {
        match err {
            CoreError::InvalidParams { field, reason } => CliError::config(field, reason),
            CoreError::NonConvergence { .. } | CoreError::SaddleResidual { .. } => CliError::NonConvergence(err.to_string()),
            CoreError::EmptyOnLineSet => CliError::Check(err.to_string()),
            other => CliError::config(field, other.to_string()),
        }
    }

    pub fn status(&self) -> ExitStatus {
        match self {
            CliError::Config { .. } => ExitStatus::Config,
            CliError::NonConvergence(_) => ExitStatus::NonConvergence,
            CliError::Check(_) => ExitStatus::CheckFailure,
            CliError::Io { .. } | CliError::Output(_) => ExitStatus::Config,
        }
    }

    pub fn failure(&self) -> Failure {
        let (kind, field) = match self {
            CliError::Config { field, .. } => ("config", Some(field.clone())),
            CliError::NonConvergence(_) => ("non_convergence", None),
            CliError::Check(_) => ("check", None),
            CliError::Io { .. } | CliError::Output(_) => ("io", None),
        };
        let reason = match self {
            CliError::Config { reason, .. } => reason.clone(),
            other => other.to_string(),
        };
        Failure { kind: kind.to_string(), name: field, reason }
    }
}

/// One entry of the machine-readable failure list printed to stderr.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub kind: String,
    pub name: Option<String>,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FailureList {
    pub status: u8,
    pub failures: Vec<Failure>,
}

pub type CliResult<T> = std::result::Result<T, CliError>;
