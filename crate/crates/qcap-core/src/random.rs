//! Deterministic random generators for states, ensembles, and channels.
//!
//! Built on ChaCha8 so that a seed fully determines every sampled object,
//! which the optimizers and solvers rely on for reproducible reports.

use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

#[allow(unused_imports)]
use num_traits::Float;

use crate::channel::KrausChannel;
use crate::linalg::{c64, ComplexMatrix, C64};
use crate::state::{Ensemble, HierarchicalEnsemble, QuantumState};
use crate::Subsystem;

pub struct Rng {
    inner: ChaCha8Rng,
    gauss_cache: Option<f64>,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Self {
            inner: ChaCha8Rng::seed_from_u64(seed),
            gauss_cache: None,
        }
    }

    /// Uniform in [0, 1).
    pub fn uniform(&mut self) -> f64 {
        (self.inner.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal via Box-Muller.
    pub fn normal(&mut self) -> f64 {
        if let Some(cached) = self.gauss_cache.take() {
            return cached;
        }
        let u1 = loop {
            let u = self.uniform();
            if u > 0.0 {
                break u;
            }
        };
        let u2 = self.uniform();
        let r = (-2.0 * u1.ln()).sqrt();
        let theta = core::f64::consts::TAU * u2;
        self.gauss_cache = Some(r * theta.sin());
        r * theta.cos()
    }

    pub fn complex_normal(&mut self) -> C64 {
        c64(self.normal(), self.normal())
    }

    /// Matrix of i.i.d. complex normal entries.
    pub fn ginibre(&mut self, rows: usize, cols: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(rows, cols, |_, _| self.complex_normal())
    }

    /// Random Hermitian matrix `(G + G†)/2`.
    pub fn hermitian(&mut self, dim: usize) -> ComplexMatrix {
        self.ginibre(dim, dim).hermitize()
    }

    /// Haar-like random unit vector.
    pub fn unit_vector(&mut self, dim: usize) -> Vec<C64> {
        loop {
            let v: Vec<C64> = (0..dim).map(|_| self.complex_normal()).collect();
            let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm > 1e-6 {
                return v.iter().map(|&z| z / norm).collect();
            }
        }
    }

    pub fn pure_state(&mut self, dim: usize) -> QuantumState {
        QuantumState::pure(&self.unit_vector(dim)).expect("unit vector is a valid state")
    }

    /// Random density matrix `G G† / Tr(G G†)` with `G` of shape dim×rank.
    pub fn density_matrix(&mut self, dim: usize, rank: usize) -> ComplexMatrix {
        let g = self.ginibre(dim, rank);
        let w = &g * &g.dagger();
        let t = w.trace().re;
        w.scale_re(1.0 / t)
    }

    pub fn state(&mut self, dim: usize, rank: usize) -> QuantumState {
        QuantumState::new(self.density_matrix(dim, rank)).expect("valid by construction")
    }

    /// Uniform point on the probability simplex.
    pub fn probabilities(&mut self, n: usize) -> Vec<f64> {
        let mut w: Vec<f64> = (0..n)
            .map(|_| {
                let u = self.uniform().max(1e-300);
                -u.ln()
            })
            .collect();
        let total: f64 = w.iter().sum();
        for x in &mut w {
            *x /= total;
        }
        w
    }

    pub fn pure_ensemble(&mut self, dim: usize, members: usize) -> Ensemble {
        let probs = self.probabilities(members);
        let states = (0..members).map(|_| self.pure_state(dim)).collect();
        Ensemble::new(probs, states).expect("valid by construction")
    }

    pub fn hierarchical(&mut self, dim: usize, outer: usize, inner: usize) -> HierarchicalEnsemble {
        let outer_probs = self.probabilities(outer);
        let inners = (0..outer).map(|_| self.pure_ensemble(dim, inner)).collect();
        HierarchicalEnsemble::new(outer_probs, inners).expect("valid by construction")
    }

    /// Random channel from a Haar-like isometry with `rank` Kraus operators.
    pub fn kraus_channel(&mut self, d_in: usize, d_out: usize, rank: usize) -> KrausChannel {
        assert!(rank * d_out >= d_in, "isometry needs rank*d_out >= d_in");
        let v = loop {
            if let Some(v) = orthonormalize_columns(&self.ginibre(d_out * rank, d_in)) {
                break v;
            }
        };
        let ops = (0..rank)
            .map(|e| ComplexMatrix::from_fn(d_out, d_in, |o, i| v.get(o * rank + e, i)))
            .collect();
        KrausChannel::new(d_in, d_out, ops).expect("isometry columns give a CPTP channel")
    }

    /// Haar-like random unitary from orthonormalized Ginibre columns.
    pub fn unitary(&mut self, d: usize) -> ComplexMatrix {
        loop {
            if let Some(q) = orthonormalize_columns(&self.ginibre(d, d)) {
                return q;
            }
        }
    }

    /// Random CPTP Choi matrix (Ginibre-induced, marginal-corrected).
    pub fn choi_cptp(&mut self, d_in: usize, d_out: usize) -> ComplexMatrix {
        let d = d_in * d_out;
        let w = {
            let g = self.ginibre(d, d);
            &g * &g.dagger()
        };
        let sigma = w
            .partial_trace((d_in, d_out), Subsystem::A)
            .expect("square by construction");
        // J = (σ^{-1/2} ⊗ I) W (σ^{-1/2} ⊗ I), giving Tr_out J = I exactly.
        let inv_half = crate::linalg::herm_map(&sigma, |x| {
            if x > 1e-14 {
                1.0 / x.sqrt()
            } else {
                0.0
            }
        })
        .expect("sigma is Hermitian");
        let f = inv_half.kron(&ComplexMatrix::identity(d_out));
        &(&f * &w) * &f.dagger()
    }
}

/// Modified Gram-Schmidt; returns None when the columns are numerically
/// dependent.
fn orthonormalize_columns(m: &ComplexMatrix) -> Option<ComplexMatrix> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut basis: Vec<Vec<C64>> = Vec::with_capacity(cols);
    for j in 0..cols {
        let mut v = m.column(j);
        for b in &basis {
            let overlap: C64 = b.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi -= overlap * bi;
            }
        }
        let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-8 {
            return None;
        }
        for vi in &mut v {
            *vi /= norm;
        }
        basis.push(v);
    }
    Some(ComplexMatrix::from_fn(rows, cols, |i, j| basis[j][i]))
}
