//! Error type shared by all modules.

use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian (asymmetry {residual:.3e} exceeds tolerance {tol:.3e})")]
    NotHermitian { residual: f64, tol: f64 },
    #[error("eigensolver failed to converge after {sweeps} sweeps (off-diagonal norm {off:.3e})")]
    ConvergenceFailure { sweeps: usize, off: f64 },
    #[error("invalid density matrix: {reason} (residual {residual:.3e})")]
    InvalidState { reason: &'static str, residual: f64 },
    #[error("dimension mismatch: {context} (expected {expected}, got {got})")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("invalid channel: {reason} (residual {residual:.3e})")]
    InvalidChannel { reason: &'static str, residual: f64 },
    #[error("Choi matrix is not completely positive (min eigenvalue {min_eig:.3e})")]
    NotCp { min_eig: f64 },
    #[error("Choi matrix is not trace preserving (partial-trace residual {residual:.3e})")]
    NotTp { residual: f64 },
    #[error("dimension too large: {context} ({got} exceeds cap {cap})")]
    DimensionTooLarge {
        context: &'static str,
        got: usize,
        cap: usize,
    },
    #[error("invalid parameters: {reason}")]
    InvalidParams { reason: &'static str },
    #[error("construction failed: {reason} (witness value {value:.6})")]
    ConstructionFailed { reason: &'static str, value: f64 },
}
