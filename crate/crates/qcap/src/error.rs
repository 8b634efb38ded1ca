//! Harness-level errors, carrying the diagnostics the CLI prints before
//! exiting with code 2.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, HarnessError>;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("unknown builtin channel `{name}`")]
    UnknownChannel { name: String },
    #[error("invalid channel parameters: {message}")]
    InvalidParams { message: String },
    #[error("{0}")]
    Core(#[from] qcap_core::Error),
    #[error("failed to read channel file: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed channel file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("channel file violates CPTP invariants: {reason} (residual {residual:.6e})")]
    Validation { reason: String, residual: f64 },
    #[error("{0}")]
    Usage(String),
}
