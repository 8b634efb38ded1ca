//! Harness around `qcap-core`: builtin channel zoo, channel file I/O, theorem
//! verification pipelines, and report rendering for the `qcap` binary.

pub mod builtin;
pub mod cli;
pub mod format;
pub mod report;
pub mod verify;

pub use builtin::builtin;
pub use report::{CapacityReport, CheckStatus, TheoremCheck};
