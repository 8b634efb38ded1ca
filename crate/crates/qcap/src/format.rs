//! Channel file format: JSON with complex entries encoded as `[re, im]`
//! pairs, nested row-major.
//!
//! Parsers reject files violating the CPTP invariants beyond a tolerance of
//! `1e-6`, reporting the residual that failed.

use std::path::Path;

use serde::{Deserialize, Serialize};

use qcap_core::linalg::{c64, ComplexMatrix, Subsystem};
use qcap_core::{ChoiMatrix, KrausChannel};

use crate::error::{HarnessError, Result};

/// Validation tolerance applied to channel files.
pub const FILE_TOL: f64 = 1e-6;

/// Nested-row complex matrix encoding: `rows × cols` of `[re, im]`.
pub type MatrixData = Vec<Vec<[f64; 2]>>;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ChannelFile {
    Kraus {
        d_in: usize,
        d_out: usize,
        operators: Vec<MatrixData>,
    },
    Choi {
        d_in: usize,
        d_out: usize,
        matrix: MatrixData,
    },
}

pub fn matrix_to_data(m: &ComplexMatrix) -> MatrixData {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| [m.get(i, j).re, m.get(i, j).im]).collect())
        .collect()
}

pub fn data_to_matrix(data: &MatrixData, rows: usize, cols: usize) -> Result<ComplexMatrix> {
    if data.len() != rows || data.iter().any(|r| r.len() != cols) {
        return Err(HarnessError::Validation {
            reason: format!("matrix data is not {rows}x{cols}"),
            residual: 0.0,
        });
    }
    let flat: Vec<_> = data
        .iter()
        .flat_map(|row| row.iter().map(|&[re, im]| c64(re, im)))
        .collect();
    ComplexMatrix::new(rows, cols, flat).map_err(Into::into)
}

pub fn kraus_to_file(ch: &KrausChannel) -> ChannelFile {
    ChannelFile::Kraus {
        d_in: ch.d_in(),
        d_out: ch.d_out(),
        operators: ch.operators().iter().map(matrix_to_data).collect(),
    }
}

pub fn choi_to_file(choi: &ChoiMatrix) -> ChannelFile {
    ChannelFile::Choi {
        d_in: choi.d_in(),
        d_out: choi.d_out(),
        matrix: matrix_to_data(choi.matrix()),
    }
}

/// CPTP diagnostics of a parsed channel file.
#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub kind: &'static str,
    pub d_in: usize,
    pub d_out: usize,
    pub operators: usize,
    /// `‖Σ K†K − I‖_F` (Kraus) or `‖Tr_out J − I‖_F` (Choi).
    pub trace_preservation_residual: f64,
    pub choi_hermiticity_residual: f64,
    pub choi_min_eigenvalue: f64,
    pub tolerance: f64,
    pub ok: bool,
}

/// Parses and validates a channel file, returning the channel and the full
/// residual report. Validation failures carry the offending residual in
/// [`HarnessError::Validation`].
pub fn channel_from_file(file: &ChannelFile) -> Result<(KrausChannel, ValidationReport)> {
    match file {
        ChannelFile::Kraus {
            d_in,
            d_out,
            operators,
        } => {
            if *d_in == 0 || *d_out == 0 || operators.is_empty() {
                return Err(HarnessError::Validation {
                    reason: "empty channel description".into(),
                    residual: 0.0,
                });
            }
            let ops = operators
                .iter()
                .map(|data| data_to_matrix(data, *d_out, *d_in))
                .collect::<Result<Vec<_>>>()?;
            let mut acc = ComplexMatrix::zeros(*d_in, *d_in);
            for k in &ops {
                acc = &acc + &(&k.dagger() * k);
            }
            let tp = (&acc - &ComplexMatrix::identity(*d_in)).frobenius_norm();
            let report = ValidationReport {
                kind: "kraus",
                d_in: *d_in,
                d_out: *d_out,
                operators: ops.len(),
                trace_preservation_residual: tp,
                choi_hermiticity_residual: 0.0,
                choi_min_eigenvalue: 0.0,
                tolerance: FILE_TOL,
                ok: tp <= FILE_TOL,
            };
            if !report.ok {
                return Err(HarnessError::Validation {
                    reason: "trace preservation violated".into(),
                    residual: tp,
                });
            }
            let ch = KrausChannel::with_tolerance(*d_in, *d_out, ops, FILE_TOL)?;
            Ok((ch, report))
        }
        ChannelFile::Choi {
            d_in,
            d_out,
            matrix,
        } => {
            let m = data_to_matrix(matrix, d_in * d_out, d_in * d_out)?;
            let herm = m.hermitian_residual();
            let min_eig = qcap_core::linalg::herm_eigvals(&m.hermitize())
                .map(|v| v.first().copied().unwrap_or(0.0))
                .unwrap_or(f64::NEG_INFINITY);
            let tp = (&m
                .partial_trace((*d_in, *d_out), Subsystem::A)
                .map_err(qcap_core::Error::from)?
                - &ComplexMatrix::identity(*d_in))
                .frobenius_norm();
            let ok = herm <= FILE_TOL && min_eig >= -FILE_TOL && tp <= FILE_TOL;
            let report = ValidationReport {
                kind: "choi",
                d_in: *d_in,
                d_out: *d_out,
                operators: 0,
                trace_preservation_residual: tp,
                choi_hermiticity_residual: herm,
                choi_min_eigenvalue: min_eig,
                tolerance: FILE_TOL,
                ok,
            };
            if !ok {
                let (reason, residual) = if herm > FILE_TOL {
                    ("Choi matrix not Hermitian", herm)
                } else if min_eig < -FILE_TOL {
                    ("Choi matrix not positive semidefinite", -min_eig)
                } else {
                    ("trace preservation violated", tp)
                };
                return Err(HarnessError::Validation {
                    reason: reason.into(),
                    residual,
                });
            }
            let choi = ChoiMatrix::with_tolerance(m, *d_in, *d_out, FILE_TOL)?;
            let ch = choi.to_kraus()?;
            Ok((ch, report))
        }
    }
}

pub fn parse_channel_json(text: &str) -> Result<(KrausChannel, ValidationReport)> {
    let file: ChannelFile = serde_json::from_str(text)?;
    channel_from_file(&file)
}

pub fn load_channel(path: &Path) -> Result<(KrausChannel, ValidationReport)> {
    let text = std::fs::read_to_string(path)?;
    parse_channel_json(&text)
}

pub fn channel_to_json(ch: &KrausChannel) -> String {
    serde_json::to_string_pretty(&kraus_to_file(ch)).expect("channel serialization is infallible")
}

#[cfg(test)]
mod tests {
    use super::*;
    use qcap_core::channel::standard;

    #[test]
    fn kraus_round_trip_through_json() {
        let ch = standard::amplitude_damping(0.3).unwrap();
        let text = channel_to_json(&ch);
        let (back, report) = parse_channel_json(&text).unwrap();
        assert!(report.ok);
        assert!(ch.choi_distance(&back).unwrap() < 1e-12);
    }

    #[test]
    fn choi_round_trip_through_json() {
        let ch = standard::dephasing(0.25).unwrap();
        let file = choi_to_file(&ch.to_choi());
        let (back, report) = channel_from_file(&file).unwrap();
        assert!(report.ok);
        assert!(ch.choi_distance(&back).unwrap() < 1e-8);
    }

    #[test]
    fn non_trace_preserving_file_is_rejected_with_residual() {
        let bad = r#"{"kind":"kraus","d_in":2,"d_out":2,
            "operators":[[[[0.9,0.0],[0.0,0.0]],[[0.0,0.0],[0.9,0.0]]]]}"#;
        let err = parse_channel_json(bad).unwrap_err();
        match err {
            HarnessError::Validation { residual, .. } => assert!(residual > 0.1),
            other => panic!("expected validation error, got {other}"),
        }
    }

    #[test]
    fn malformed_json_is_rejected() {
        assert!(parse_channel_json("{not json").is_err());
        assert!(parse_channel_json(r#"{"kind":"kraus","d_in":2}"#).is_err());
        // NaN is not valid JSON and must not crash.
        assert!(
            parse_channel_json(r#"{"kind":"kraus","d_in":1,"d_out":1,"operators":[[[[NaN,0]]]]}"#)
                .is_err()
        );
    }

    #[test]
    fn ragged_matrix_is_rejected() {
        let bad = r#"{"kind":"kraus","d_in":2,"d_out":2,
            "operators":[[[[1.0,0.0],[0.0,0.0]],[[0.0,0.0]]]]}"#;
        assert!(parse_channel_json(bad).is_err());
    }
}
