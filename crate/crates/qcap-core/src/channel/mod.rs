//! Channel representations (Kraus, Choi, Stinespring) and the operations
//! connecting them.
//!
//! Conventions fixed here and enforced by tests:
//! - Choi matrices are unnormalized, `J(N) = Σ_ij |i⟩⟨j| ⊗ N(|i⟩⟨j|)`, with
//!   index ordering input⊗output.
//! - Kraus operators extracted from a Choi matrix are ordered by descending
//!   eigenvalue and phase-fixed so the first nonzero entry is real positive.
//! - Channel equality is always action equality (Frobenius distance of Choi
//!   matrices), never Kraus-list equality.

pub mod standard;

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::{c64, herm_eig, herm_eigvals, ComplexMatrix, Subsystem};
use crate::state::QuantumState;

/// Default CPTP validation tolerance for internally constructed channels.
pub const CPTP_TOL: f64 = 1e-8;

/// A channel in Kraus form: `N(ρ) = Σ_k K_k ρ K_k†` with `Σ K†K = I`.
#[derive(Debug, Clone)]
pub struct KrausChannel {
    d_in: usize,
    d_out: usize,
    operators: Vec<ComplexMatrix>,
    tol: f64,
}

impl KrausChannel {
    pub fn new(d_in: usize, d_out: usize, operators: Vec<ComplexMatrix>) -> Result<Self> {
        Self::with_tolerance(d_in, d_out, operators, CPTP_TOL)
    }

    /// Validates trace preservation within `tol` instead of the default.
    pub fn with_tolerance(
        d_in: usize,
        d_out: usize,
        operators: Vec<ComplexMatrix>,
        tol: f64,
    ) -> Result<Self> {
        if operators.is_empty() {
            return Err(Error::InvalidChannel {
                reason: "no Kraus operators",
                residual: 0.0,
            });
        }
        for op in &operators {
            if op.rows() != d_out || op.cols() != d_in {
                return Err(Error::DimensionMismatch {
                    context: "Kraus operator shape",
                    expected: d_out * d_in,
                    got: op.rows() * op.cols(),
                });
            }
            if !op.is_finite() {
                return Err(Error::InvalidChannel {
                    reason: "non-finite Kraus entries",
                    residual: f64::INFINITY,
                });
            }
        }
        let ch = Self {
            d_in,
            d_out,
            operators,
            tol,
        };
        let residual = ch.trace_preservation_residual();
        if residual > tol {
            return Err(Error::InvalidChannel {
                reason: "trace preservation violated",
                residual,
            });
        }
        Ok(ch)
    }

    pub(crate) fn trusted(
        d_in: usize,
        d_out: usize,
        operators: Vec<ComplexMatrix>,
        tol: f64,
    ) -> Self {
        Self {
            d_in,
            d_out,
            operators,
            tol,
        }
    }

    pub fn d_in(&self) -> usize {
        self.d_in
    }

    pub fn d_out(&self) -> usize {
        self.d_out
    }

    /// Environment dimension of the dilation built from this Kraus list.
    pub fn d_env(&self) -> usize {
        self.operators.len()
    }

    pub fn num_operators(&self) -> usize {
        self.operators.len()
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    pub fn tolerance(&self) -> f64 {
        self.tol
    }

    /// `‖Σ K†K − I‖_F`.
    pub fn trace_preservation_residual(&self) -> f64 {
        let mut acc = ComplexMatrix::zeros(self.d_in, self.d_in);
        for k in &self.operators {
            acc = &acc + &(&k.dagger() * k);
        }
        (&acc - &ComplexMatrix::identity(self.d_in)).frobenius_norm()
    }

    /// Applies the channel to a raw matrix (not necessarily a state).
    pub fn apply_matrix(&self, m: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(m.rows(), self.d_in, "apply: input dimension");
        let mut out = ComplexMatrix::zeros(self.d_out, self.d_out);
        for k in &self.operators {
            out = &out + &(&(k * m) * &k.dagger());
        }
        out
    }

    /// Heisenberg-picture adjoint `N†(X) = Σ K† X K`.
    pub fn apply_adjoint_matrix(&self, m: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(m.rows(), self.d_out, "adjoint apply: output dimension");
        let mut out = ComplexMatrix::zeros(self.d_in, self.d_in);
        for k in &self.operators {
            out = &out + &(&(&k.dagger() * m) * k);
        }
        out
    }

    pub fn apply(&self, rho: &QuantumState) -> Result<QuantumState> {
        if rho.dim() != self.d_in {
            return Err(Error::DimensionMismatch {
                context: "channel input dimension",
                expected: self.d_in,
                got: rho.dim(),
            });
        }
        QuantumState::new(self.apply_matrix(rho.matrix()))
    }

    /// Unnormalized Choi matrix, input⊗output ordering.
    pub fn to_choi(&self) -> ChoiMatrix {
        let (din, dout) = (self.d_in, self.d_out);
        let n = din * dout;
        let mut j = ComplexMatrix::zeros(n, n);
        for k in &self.operators {
            for i in 0..din {
                for o in 0..dout {
                    let a = k.get(o, i);
                    if a == c64(0.0, 0.0) {
                        continue;
                    }
                    for jj in 0..din {
                        for oo in 0..dout {
                            let row = i * dout + o;
                            let col = jj * dout + oo;
                            let v = j.get(row, col) + a * k.get(oo, jj).conj();
                            j.set(row, col, v);
                        }
                    }
                }
            }
        }
        ChoiMatrix {
            d_in: din,
            d_out: dout,
            matrix: j,
            tol: self.tol.max(CPTP_TOL),
        }
    }

    /// Stinespring dilation `V|ψ⟩ = Σ_k (K_k|ψ⟩) ⊗ |k⟩_E`.
    pub fn to_stinespring(&self) -> StinespringIsometry {
        let denv = self.operators.len();
        let v = ComplexMatrix::from_fn(self.d_out * denv, self.d_in, |row, i| {
            let (o, e) = (row / denv, row % denv);
            self.operators[e].get(o, i)
        });
        StinespringIsometry {
            d_in: self.d_in,
            d_out: self.d_out,
            d_env: denv,
            v,
        }
    }

    /// Channel to the environment of the minimal dilation:
    /// `N_c(ρ)_{ee'} = Tr(K_e ρ K_e'†)`.
    ///
    /// Linearly dependent Kraus lists are first reduced to minimal form so the
    /// environment dimension equals the Kraus rank.
    pub fn complementary(&self) -> Result<KrausChannel> {
        let ops = if self.kraus_rank() < self.operators.len() {
            self.to_choi().to_kraus()?.operators
        } else {
            self.operators.clone()
        };
        let denv = ops.len();
        let comp_ops = (0..self.d_out)
            .map(|o| ComplexMatrix::from_fn(denv, self.d_in, |e, i| ops[e].get(o, i)))
            .collect();
        Ok(KrausChannel::trusted(
            self.d_in,
            denv,
            comp_ops,
            self.tol,
        ))
    }

    /// Number of linearly independent Kraus operators.
    pub fn kraus_rank(&self) -> usize {
        let n = self.operators.len();
        let gram = ComplexMatrix::from_fn(n, n, |k, l| {
            self.operators[k].inner(&self.operators[l])
        });
        herm_eigvals(&gram.hermitize())
            .map(|vals| vals.iter().filter(|&&x| x > 1e-10).count())
            .unwrap_or(n)
    }

    /// Frobenius distance between the Choi matrices of two channels; the
    /// crate's notion of channel equality is this distance being small.
    pub fn choi_distance(&self, other: &KrausChannel) -> Result<f64> {
        if self.d_in != other.d_in || self.d_out != other.d_out {
            return Err(Error::DimensionMismatch {
                context: "channel dimensions",
                expected: self.d_in * self.d_out,
                got: other.d_in * other.d_out,
            });
        }
        Ok((&self.to_choi().matrix - &other.to_choi().matrix).frobenius_norm())
    }
}

/// Composition `second ∘ first` (apply `first`, then `second`).
pub fn compose(second: &KrausChannel, first: &KrausChannel) -> Result<KrausChannel> {
    if second.d_in != first.d_out {
        return Err(Error::DimensionMismatch {
            context: "composition inner dimension",
            expected: first.d_out,
            got: second.d_in,
        });
    }
    let mut ops = Vec::with_capacity(first.operators.len() * second.operators.len());
    for k2 in &second.operators {
        for k1 in &first.operators {
            ops.push(k2 * k1);
        }
    }
    let tol = (first.tol + 2.0 * second.tol).max(CPTP_TOL);
    KrausChannel::with_tolerance(first.d_in, second.d_out, ops, tol)
}

/// Parallel product with Kraus set `{K1_i ⊗ K2_j}`.
pub fn tensor(a: &KrausChannel, b: &KrausChannel) -> KrausChannel {
    let mut ops = Vec::with_capacity(a.operators.len() * b.operators.len());
    for k1 in &a.operators {
        for k2 in &b.operators {
            ops.push(k1.kron(k2));
        }
    }
    let tol = (a.tol + b.tol + a.tol * b.tol).max(CPTP_TOL);
    KrausChannel::trusted(a.d_in * b.d_in, a.d_out * b.d_out, ops, tol)
}

/// Unnormalized Choi matrix with validated CPTP structure.
#[derive(Debug, Clone)]
pub struct ChoiMatrix {
    d_in: usize,
    d_out: usize,
    matrix: ComplexMatrix,
    tol: f64,
}

impl ChoiMatrix {
    pub fn new(matrix: ComplexMatrix, d_in: usize, d_out: usize) -> Result<Self> {
        Self::with_tolerance(matrix, d_in, d_out, CPTP_TOL)
    }

    pub fn with_tolerance(
        matrix: ComplexMatrix,
        d_in: usize,
        d_out: usize,
        tol: f64,
    ) -> Result<Self> {
        if matrix.rows() != d_in * d_out || !matrix.is_square() {
            return Err(Error::DimensionMismatch {
                context: "Choi matrix size",
                expected: d_in * d_out,
                got: matrix.rows(),
            });
        }
        let herm = matrix.hermitian_residual();
        if herm > tol {
            return Err(Error::InvalidChannel {
                reason: "Choi matrix not Hermitian",
                residual: herm,
            });
        }
        let min_eig = herm_eigvals(&matrix.hermitize())?
            .first()
            .copied()
            .unwrap_or(0.0);
        if min_eig < -tol {
            return Err(Error::NotCp { min_eig });
        }
        let tp = (&matrix
            .partial_trace((d_in, d_out), Subsystem::A)
            .expect("size checked")
            - &ComplexMatrix::identity(d_in))
            .frobenius_norm();
        if tp > tol {
            return Err(Error::NotTp { residual: tp });
        }
        Ok(Self {
            d_in,
            d_out,
            matrix,
            tol,
        })
    }

    pub(crate) fn trusted(matrix: ComplexMatrix, d_in: usize, d_out: usize, tol: f64) -> Self {
        Self {
            d_in,
            d_out,
            matrix,
            tol,
        }
    }

    pub fn d_in(&self) -> usize {
        self.d_in
    }

    pub fn d_out(&self) -> usize {
        self.d_out
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn tolerance(&self) -> f64 {
        self.tol
    }

    /// CPTP violation diagnostics: (Hermiticity, min eigenvalue, TP residual).
    pub fn residuals(&self) -> (f64, f64, f64) {
        let herm = self.matrix.hermitian_residual();
        let min_eig = herm_eigvals(&self.matrix.hermitize())
            .map(|v| v.first().copied().unwrap_or(0.0))
            .unwrap_or(f64::NEG_INFINITY);
        let tp = (&self
            .matrix
            .partial_trace((self.d_in, self.d_out), Subsystem::A)
            .expect("validated size")
            - &ComplexMatrix::identity(self.d_in))
            .frobenius_norm();
        (herm, min_eig, tp)
    }

    /// Channel action reconstructed from the Choi matrix:
    /// `N(ρ)[o,o'] = Σ_ij ρ[i,j] J[(i,o),(j,o')]`.
    pub fn apply_matrix(&self, rho: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(rho.rows(), self.d_in, "choi apply: input dimension");
        let dout = self.d_out;
        ComplexMatrix::from_fn(dout, dout, |o, oo| {
            let mut acc = c64(0.0, 0.0);
            for i in 0..self.d_in {
                for j in 0..self.d_in {
                    acc += rho.get(i, j) * self.matrix.get(i * dout + o, j * dout + oo);
                }
            }
            acc
        })
    }

    /// Canonical Kraus decomposition by eigendecomposition; operators ordered
    /// by descending eigenvalue, each phase-fixed so its first entry above
    /// threshold is real positive.
    pub fn to_kraus(&self) -> Result<KrausChannel> {
        let eig = herm_eig(&self.matrix.hermitize())?;
        let min_eig = eig.eigenvalues.first().copied().unwrap_or(0.0);
        if min_eig < -self.tol {
            return Err(Error::NotCp { min_eig });
        }
        let (din, dout) = (self.d_in, self.d_out);
        let mut ops = Vec::new();
        for k in (0..eig.eigenvalues.len()).rev() {
            let lam = eig.eigenvalues[k];
            if lam <= 1e-10 {
                break;
            }
            let col = eig.eigenvectors.column(k);
            let mut op =
                ComplexMatrix::from_fn(dout, din, |o, i| col[i * dout + o] * lam.sqrt());
            let threshold = 1e-12 * op.max_abs().max(1e-300);
            if let Some(first) = op.data().iter().find(|z| z.norm() > threshold) {
                let phase = first / first.norm();
                op = op.scale(phase.conj());
            }
            ops.push(op);
        }
        if ops.is_empty() {
            return Err(Error::NotCp { min_eig });
        }
        let ch_tol = (self.tol * (din * dout) as f64).max(CPTP_TOL);
        let ch = KrausChannel::with_tolerance(din, dout, ops, ch_tol)?;
        let tp = ch.trace_preservation_residual();
        if tp > ch_tol {
            return Err(Error::NotTp { residual: tp });
        }
        Ok(ch)
    }
}

/// An isometry `V: H_in → H_out ⊗ H_env` with `V†V = I`.
#[derive(Debug, Clone)]
pub struct StinespringIsometry {
    d_in: usize,
    d_out: usize,
    d_env: usize,
    v: ComplexMatrix,
}

impl StinespringIsometry {
    pub fn new(v: ComplexMatrix, d_in: usize, d_out: usize, d_env: usize) -> Result<Self> {
        if v.rows() != d_out * d_env || v.cols() != d_in {
            return Err(Error::DimensionMismatch {
                context: "isometry shape",
                expected: d_out * d_env * d_in,
                got: v.rows() * v.cols(),
            });
        }
        let residual = (&(&v.dagger() * &v) - &ComplexMatrix::identity(d_in)).frobenius_norm();
        if residual > CPTP_TOL {
            return Err(Error::InvalidChannel {
                reason: "V†V differs from identity",
                residual,
            });
        }
        Ok(Self {
            d_in,
            d_out,
            d_env,
            v,
        })
    }

    pub fn d_in(&self) -> usize {
        self.d_in
    }

    pub fn d_out(&self) -> usize {
        self.d_out
    }

    pub fn d_env(&self) -> usize {
        self.d_env
    }

    pub fn isometry(&self) -> &ComplexMatrix {
        &self.v
    }

    /// `‖V†V − I‖_F`.
    pub fn isometry_residual(&self) -> f64 {
        (&(&self.v.dagger() * &self.v) - &ComplexMatrix::identity(self.d_in)).frobenius_norm()
    }

    /// Joint output `V ρ V†` on `H_out ⊗ H_env`.
    pub fn joint_output(&self, rho: &ComplexMatrix) -> ComplexMatrix {
        &(&self.v * rho) * &self.v.dagger()
    }

    /// Channel action `Tr_env(V ρ V†)`.
    pub fn apply_matrix(&self, rho: &ComplexMatrix) -> ComplexMatrix {
        self.joint_output(rho)
            .partial_trace((self.d_out, self.d_env), Subsystem::A)
            .expect("joint output has product dimension")
    }

    /// Environment action `Tr_out(V ρ V†)`.
    pub fn environment_matrix(&self, rho: &ComplexMatrix) -> ComplexMatrix {
        self.joint_output(rho)
            .partial_trace((self.d_out, self.d_env), Subsystem::B)
            .expect("joint output has product dimension")
    }
}
