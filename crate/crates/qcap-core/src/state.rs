//! Density matrices and (hierarchical) input ensembles.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{entropy_of_spectrum, herm_eigvals, ComplexMatrix, C64};

const STATE_TOL: f64 = 1e-10;
const PURITY_TOL: f64 = 1e-8;

/// A validated density matrix: Hermitian, unit trace, PSD (all within 1e-10).
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    dim: usize,
    matrix: ComplexMatrix,
}

impl QuantumState {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NonSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        if !matrix.is_finite() {
            return Err(Error::InvalidState {
                reason: "non-finite entries",
                residual: f64::INFINITY,
            });
        }
        let herm = matrix.hermitian_residual();
        if herm > STATE_TOL {
            return Err(Error::InvalidState {
                reason: "not Hermitian",
                residual: herm,
            });
        }
        let tr = matrix.trace();
        let tr_res = (tr - crate::linalg::c64(1.0, 0.0)).norm();
        if tr_res > STATE_TOL {
            return Err(Error::InvalidState {
                reason: "trace differs from one",
                residual: tr_res,
            });
        }
        let min_eig = herm_eigvals(&matrix.hermitize())?
            .first()
            .copied()
            .unwrap_or(0.0);
        if min_eig < -STATE_TOL {
            return Err(Error::InvalidState {
                reason: "negative eigenvalue",
                residual: -min_eig,
            });
        }
        Ok(Self {
            dim: matrix.rows(),
            matrix,
        })
    }

    /// Pure state from a (not necessarily normalized) vector.
    pub fn pure(amplitudes: &[C64]) -> Result<Self> {
        let norm_sq: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if norm_sq < 1e-12 {
            return Err(Error::InvalidState {
                reason: "zero vector",
                residual: norm_sq,
            });
        }
        let m = ComplexMatrix::outer(amplitudes, amplitudes).scale_re(1.0 / norm_sq);
        Self::new(m)
    }

    /// Computational basis state `|index⟩⟨index|`.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(Error::DimensionMismatch {
                context: "basis index",
                expected: dim,
                got: index,
            });
        }
        let mut v = alloc::vec![crate::linalg::c64(0.0, 0.0); dim];
        v[index] = crate::linalg::c64(1.0, 0.0);
        Self::pure(&v)
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            dim,
            matrix: ComplexMatrix::identity(dim).scale_re(1.0 / dim as f64),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Largest eigenvalue; 1 for pure states.
    pub fn max_eigenvalue(&self) -> f64 {
        herm_eigvals(&self.matrix.hermitize())
            .map(|v| v.last().copied().unwrap_or(0.0))
            .unwrap_or(0.0)
    }

    pub fn is_pure(&self) -> bool {
        self.max_eigenvalue() >= 1.0 - PURITY_TOL
    }

    /// Von Neumann entropy in bits.
    pub fn entropy(&self) -> f64 {
        let spectrum = herm_eigvals(&self.matrix.hermitize()).expect("validated Hermitian");
        entropy_of_spectrum(&spectrum)
    }
}

/// Von Neumann entropy `S(ρ) = −Tr ρ log₂ ρ` in bits.
pub fn von_neumann_entropy(rho: &QuantumState) -> f64 {
    rho.entropy()
}

/// A finite ensemble `{p_i, ρ_i}` of equal-dimension states.
#[derive(Debug, Clone)]
pub struct Ensemble {
    probs: Vec<f64>,
    states: Vec<QuantumState>,
}

impl Ensemble {
    pub fn new(probs: Vec<f64>, states: Vec<QuantumState>) -> Result<Self> {
        if probs.is_empty() || probs.len() != states.len() {
            return Err(Error::DimensionMismatch {
                context: "ensemble member count",
                expected: probs.len(),
                got: states.len(),
            });
        }
        if probs.iter().any(|&p| !(p >= 0.0)) {
            return Err(Error::InvalidParams {
                reason: "ensemble probabilities must be non-negative",
            });
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > STATE_TOL {
            return Err(Error::InvalidParams {
                reason: "ensemble probabilities must sum to one",
            });
        }
        let dim = states[0].dim();
        if states.iter().any(|s| s.dim() != dim) {
            return Err(Error::DimensionMismatch {
                context: "ensemble state dimensions",
                expected: dim,
                got: states.iter().map(|s| s.dim()).find(|&d| d != dim).unwrap_or(dim),
            });
        }
        Ok(Self { probs, states })
    }

    pub fn single(state: QuantumState) -> Self {
        Self {
            probs: alloc::vec![1.0],
            states: alloc::vec![state],
        }
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.states[0].dim()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn states(&self) -> &[QuantumState] {
        &self.states
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, &QuantumState)> {
        self.probs.iter().copied().zip(self.states.iter())
    }

    /// `Σ_i p_i ρ_i` as a raw matrix.
    pub fn average_matrix(&self) -> ComplexMatrix {
        let mut avg = ComplexMatrix::zeros(self.dim(), self.dim());
        for (p, s) in self.iter() {
            avg = &avg + &s.matrix().scale_re(p);
        }
        avg
    }

    pub fn average_state(&self) -> QuantumState {
        QuantumState::new(self.average_matrix()).expect("convex mixture of valid states")
    }
}

/// The two-level input structure `{p(x'), {p(x|x'), |ψ_{x,x'}⟩}}`: an outer
/// classical symbol selecting an inner pure-state ensemble.
#[derive(Debug, Clone)]
pub struct HierarchicalEnsemble {
    outer_probs: Vec<f64>,
    inner: Vec<Ensemble>,
}

impl HierarchicalEnsemble {
    pub fn new(outer_probs: Vec<f64>, inner: Vec<Ensemble>) -> Result<Self> {
        if outer_probs.is_empty() || outer_probs.len() != inner.len() {
            return Err(Error::DimensionMismatch {
                context: "outer symbol count",
                expected: outer_probs.len(),
                got: inner.len(),
            });
        }
        if outer_probs.iter().any(|&p| !(p >= 0.0)) {
            return Err(Error::InvalidParams {
                reason: "outer probabilities must be non-negative",
            });
        }
        let total: f64 = outer_probs.iter().sum();
        if (total - 1.0).abs() > STATE_TOL {
            return Err(Error::InvalidParams {
                reason: "outer probabilities must sum to one",
            });
        }
        let dim = inner[0].dim();
        for ens in &inner {
            if ens.dim() != dim {
                return Err(Error::DimensionMismatch {
                    context: "inner ensemble dimensions",
                    expected: dim,
                    got: ens.dim(),
                });
            }
            for (_, s) in ens.iter() {
                if s.max_eigenvalue() < 1.0 - PURITY_TOL {
                    return Err(Error::InvalidState {
                        reason: "inner states must be pure",
                        residual: 1.0 - s.max_eigenvalue(),
                    });
                }
            }
        }
        Ok(Self { outer_probs, inner })
    }

    /// Degenerate structure with a single pure state per outer symbol.
    pub fn from_pure_outer(probs: Vec<f64>, states: Vec<QuantumState>) -> Result<Self> {
        let inner = states.into_iter().map(Ensemble::single).collect();
        Self::new(probs, inner)
    }

    pub fn outer_len(&self) -> usize {
        self.outer_probs.len()
    }

    pub fn dim(&self) -> usize {
        self.inner[0].dim()
    }

    pub fn outer_probs(&self) -> &[f64] {
        &self.outer_probs
    }

    pub fn inner(&self) -> &[Ensemble] {
        &self.inner
    }

    /// Joint distribution `p(x')p(x|x')` over the fine-grained pure states.
    pub fn flatten(&self) -> Ensemble {
        let mut probs = Vec::new();
        let mut states = Vec::new();
        for (p_outer, ens) in self.outer_probs.iter().zip(&self.inner) {
            for (p_inner, s) in ens.iter() {
                probs.push(p_outer * p_inner);
                states.push(s.clone());
            }
        }
        Ensemble::new(probs, states).expect("joint distribution is a valid ensemble")
    }

    /// Coarse ensemble `{p(x'), ρ^{x'}}` with the inner mixtures collapsed.
    pub fn coarse(&self) -> Ensemble {
        let states = self
            .inner
            .iter()
            .map(|e| e.average_state())
            .collect::<Vec<_>>();
        Ensemble::new(self.outer_probs.clone(), states).expect("coarse ensemble is valid")
    }

    pub fn average_matrix(&self) -> ComplexMatrix {
        let mut avg = ComplexMatrix::zeros(self.dim(), self.dim());
        for (p, ens) in self.outer_probs.iter().zip(&self.inner) {
            avg = &avg + &ens.average_matrix().scale_re(*p);
        }
        avg
    }

    pub fn average_state(&self) -> QuantumState {
        QuantumState::new(self.average_matrix()).expect("convex mixture of valid states")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c64;
    use alloc::vec;

    #[test]
    fn pure_state_entropy_is_zero() {
        let s = QuantumState::basis(2, 0).unwrap();
        assert_eq!(s.entropy(), 0.0);
        assert!(s.is_pure());
    }

    #[test]
    fn maximally_mixed_qubit_entropy_is_one() {
        let s = QuantumState::maximally_mixed(2);
        assert!((s.entropy() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn diag_state_entropy_matches_binary_entropy() {
        let s = QuantumState::new(ComplexMatrix::diag_real(&[0.9, 0.1])).unwrap();
        assert!((s.entropy() - 0.468996).abs() < 1e-6);
    }

    #[test]
    fn invalid_states_are_rejected() {
        // Trace two.
        let err = QuantumState::new(ComplexMatrix::identity(2)).unwrap_err();
        assert!(matches!(err, Error::InvalidState { reason, .. } if reason.contains("trace")));
        // Negative eigenvalue.
        let err = QuantumState::new(ComplexMatrix::diag_real(&[1.5, -0.5])).unwrap_err();
        assert!(matches!(err, Error::InvalidState { reason, .. } if reason.contains("negative")));
        // Non-Hermitian.
        let m = ComplexMatrix::new(
            2,
            2,
            vec![c64(0.5, 0.0), c64(0.3, 0.0), c64(0.0, 0.0), c64(0.5, 0.0)],
        )
        .unwrap();
        assert!(QuantumState::new(m).is_err());
    }

    #[test]
    fn entropy_additivity_on_products() {
        let mut rng = crate::random::Rng::new(21);
        for _ in 0..20 {
            let a = rng.state(2, 2);
            let b = rng.state(4, 3);
            let joint = QuantumState::new(a.matrix().kron(b.matrix())).unwrap();
            assert!((joint.entropy() - a.entropy() - b.entropy()).abs() < 1e-9);
        }
    }

    #[test]
    fn ensemble_validation() {
        let s = QuantumState::basis(2, 0).unwrap();
        assert!(Ensemble::new(vec![0.6, 0.6], vec![s.clone(), s.clone()]).is_err());
        assert!(Ensemble::new(vec![1.0], vec![]).is_err());
        let mixed_dims = Ensemble::new(
            vec![0.5, 0.5],
            vec![s.clone(), QuantumState::basis(3, 0).unwrap()],
        );
        assert!(mixed_dims.is_err());
    }

    #[test]
    fn hierarchical_flatten_matches_coarse_average() {
        let mut rng = crate::random::Rng::new(22);
        let h = rng.hierarchical(3, 4, 3);
        let flat_avg = h.flatten().average_matrix();
        let coarse_avg = h.coarse().average_matrix();
        assert!((&flat_avg - &coarse_avg).frobenius_norm() < 1e-12);
        assert!((&flat_avg - &h.average_matrix()).frobenius_norm() < 1e-12);
    }

    #[test]
    fn hierarchical_rejects_mixed_inner_states() {
        let mixed = QuantumState::maximally_mixed(2);
        let ens = Ensemble::single(mixed);
        let err = HierarchicalEnsemble::new(vec![1.0], vec![ens]).unwrap_err();
        assert!(matches!(err, Error::InvalidState { reason, .. } if reason.contains("pure")));
    }
}
