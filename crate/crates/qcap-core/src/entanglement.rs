//! PPT and realignment witnesses for detecting entanglement-binding structure
//! in complementary channels.
//!
//! Separability is never certified: the witnesses either detect entanglement
//! or report "undetected".

use alloc::vec::Vec;

use num_traits::Float;

use crate::channel::KrausChannel;
use crate::error::{Error, Result};
use crate::linalg::{c64, herm_eigvals, ComplexMatrix, Subsystem, C64};
use crate::state::QuantumState;

/// Verdict for the Choi state of a complementary channel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComplementaryClass {
    /// Negative partial transpose: distillable entanglement present.
    Npt,
    /// PPT yet realignment-detected entangled: entanglement-binding evidence.
    PptEntangled,
    /// PPT and not detected by realignment; separability undecided.
    PptUndetected,
}

/// Witness values backing a [`ComplementaryClass`] verdict.
#[derive(Debug, Clone)]
pub struct ComplementaryEvidence {
    pub class: ComplementaryClass,
    /// Smallest eigenvalue of the partial transpose of the normalized Choi.
    pub min_pt_eigenvalue: f64,
    /// Trace norm of the realigned normalized Choi state.
    pub realignment_value: f64,
}

/// PPT test: returns `(is_ppt, min_eigenvalue)` of the partial transpose on
/// the second factor. The matrix is used as given (pass normalized states).
pub fn is_ppt(m: &ComplexMatrix, dims: (usize, usize), tol: f64) -> Result<(bool, f64)> {
    let pt = m.partial_transpose(dims, Subsystem::B)?;
    let min_eig = herm_eigvals(&pt.hermitize())?
        .first()
        .copied()
        .unwrap_or(0.0);
    Ok((min_eig >= -tol, min_eig))
}

/// Trace norm of the realigned matrix `R[(i,j),(a,b)] = M[(i,a),(j,b)]`.
///
/// Values above `1` certify entanglement of a normalized state; values at or
/// below `1` are inconclusive.
pub fn realignment_value(m: &ComplexMatrix, dims: (usize, usize)) -> Result<f64> {
    let (da, db) = dims;
    if m.rows() != da * db || !m.is_square() {
        return Err(Error::DimensionMismatch {
            context: "realignment dimension product",
            expected: da * db,
            got: m.rows(),
        });
    }
    let r = ComplexMatrix::from_fn(da * da, db * db, |row, col| {
        let (i, j) = (row / da, row % da);
        let (a, b) = (col / db, col % db);
        m.get(i * db + a, j * db + b)
    });
    // Singular values via the smaller Gram matrix; eigenvalues at round-off
    // scale are dropped so sqrt does not amplify them.
    let gram = if da <= db {
        &r * &r.dagger()
    } else {
        &r.dagger() * &r
    };
    let vals = herm_eigvals(&gram.hermitize())?;
    let cutoff = vals.last().copied().unwrap_or(0.0).max(0.0) * 1e-13;
    Ok(vals
        .iter()
        .filter(|&&x| x > cutoff)
        .map(|&x| x.sqrt())
        .sum())
}

/// Classifies the normalized Choi state of the complementary channel at the
/// (input | environment) cut.
pub fn classify_complementary(n: &KrausChannel, tol: f64) -> Result<ComplementaryEvidence> {
    let comp = n.complementary()?;
    let choi = comp.to_choi();
    let rho = choi.matrix().scale_re(1.0 / n.d_in() as f64);
    let dims = (comp.d_in(), comp.d_out());
    let (ppt, min_pt) = is_ppt(&rho, dims, tol)?;
    if !ppt {
        return Ok(ComplementaryEvidence {
            class: ComplementaryClass::Npt,
            min_pt_eigenvalue: min_pt,
            realignment_value: realignment_value(&rho, dims)?,
        });
    }
    let realign = realignment_value(&rho, dims)?;
    let class = if realign > 1.0 + tol {
        ComplementaryClass::PptEntangled
    } else {
        ComplementaryClass::PptUndetected
    };
    Ok(ComplementaryEvidence {
        class,
        min_pt_eigenvalue: min_pt,
        realignment_value: realign,
    })
}

/// The 3⊗3 tiles bound-entangled state: the normalized projector onto the
/// complement of the tiles unextendible product basis.
pub fn tiles_state() -> QuantumState {
    let s = 1.0 / 2f64.sqrt();
    let third = 1.0 / 3.0;
    let kets: [Vec<C64>; 5] = [
        tensor_vec(&basis3(0), &[c64(s, 0.0), c64(-s, 0.0), c64(0.0, 0.0)]),
        tensor_vec(&basis3(2), &[c64(0.0, 0.0), c64(s, 0.0), c64(-s, 0.0)]),
        tensor_vec(&[c64(s, 0.0), c64(-s, 0.0), c64(0.0, 0.0)], &basis3(2)),
        tensor_vec(&[c64(0.0, 0.0), c64(s, 0.0), c64(-s, 0.0)], &basis3(0)),
        tensor_vec(
            &[c64(third.sqrt(), 0.0); 3],
            &[c64(third.sqrt(), 0.0); 3],
        ),
    ];
    let mut proj = ComplexMatrix::zeros(9, 9);
    for ket in &kets {
        proj = &proj + &ComplexMatrix::outer(ket, ket);
    }
    let m = (&ComplexMatrix::identity(9) - &proj).scale_re(0.25);
    QuantumState::new(m).expect("tiles construction is a valid state")
}

fn basis3(i: usize) -> Vec<C64> {
    let mut v = alloc::vec![c64(0.0, 0.0); 3];
    v[i] = c64(1.0, 0.0);
    v
}

fn tensor_vec(a: &[C64], b: &[C64]) -> Vec<C64> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for &x in a {
        for &y in b {
            out.push(x * y);
        }
    }
    out
}
