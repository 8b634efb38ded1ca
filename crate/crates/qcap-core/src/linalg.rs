//! Dense complex linear algebra: matrices, tensor products, partial
//! trace/transpose, and a Hermitian eigensolver.
//!
//! Everything here is a pure value operation; matrices are immutable and every
//! operation returns a fresh matrix.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Index, Mul, Sub};

use num_complex::Complex;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

/// Complex scalar used throughout the crate.
pub type C64 = Complex<f64>;

pub const fn c64(re: f64, im: f64) -> C64 {
    Complex { re, im }
}

/// One factor of a bipartite tensor product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries, rejecting NaN/Inf.
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                context: "entry count",
                expected: rows * cols,
                got: data.len(),
            });
        }
        let m = Self { rows, cols, data };
        if !m.is_finite() {
            return Err(Error::InvalidParams {
                reason: "matrix entries must be finite",
            });
        }
        Ok(m)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![c64(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = c64(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn diag(entries: &[C64]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &e) in entries.iter().enumerate() {
            m.data[i * n + i] = e;
        }
        m
    }

    pub fn diag_real(entries: &[f64]) -> Self {
        Self::diag(&entries.iter().map(|&x| c64(x, 0.0)).collect::<Vec<_>>())
    }

    /// Outer product `u v†`.
    pub fn outer(u: &[C64], v: &[C64]) -> Self {
        Self::from_fn(u.len(), v.len(), |i, j| u[i] * v[j].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn conj(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(c64(s, 0.0))
    }

    pub fn trace(&self) -> C64 {
        debug_assert!(self.is_square());
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Frobenius inner product `Tr(self† other)`.
    pub fn inner(&self, other: &Self) -> C64 {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn matvec(&self, v: &[C64]) -> Vec<C64> {
        debug_assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j) * v[j])
                    .sum::<C64>()
            })
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    /// `‖M − M†‖_F`, zero for Hermitian matrices.
    pub fn hermitian_residual(&self) -> f64 {
        debug_assert!(self.is_square());
        let mut acc = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let d = self.get(i, j) - self.get(j, i).conj();
                acc += d.norm_sqr();
            }
        }
        acc.sqrt()
    }

    /// `(M + M†)/2`.
    pub fn hermitize(&self) -> Self {
        debug_assert!(self.is_square());
        Self::from_fn(self.rows, self.cols, |i, j| {
            (self.get(i, j) + self.get(j, i).conj()) * 0.5
        })
    }

    /// Kronecker (tensor) product.
    pub fn kron(&self, other: &Self) -> Self {
        let (ra, ca) = (self.rows, self.cols);
        let (rb, cb) = (other.rows, other.cols);
        let mut out = Self::zeros(ra * rb, ca * cb);
        for i in 0..ra {
            for j in 0..ca {
                let a = self.get(i, j);
                if a == c64(0.0, 0.0) {
                    continue;
                }
                for k in 0..rb {
                    for l in 0..cb {
                        out.set(i * rb + k, j * cb + l, a * other.get(k, l));
                    }
                }
            }
        }
        out
    }

    /// Traces out one factor of a `(dA·dB)×(dA·dB)` matrix.
    pub fn partial_trace(&self, dims: (usize, usize), keep: Subsystem) -> Result<Self> {
        let (da, db) = dims;
        self.check_bipartite(da, db)?;
        let out = match keep {
            Subsystem::A => Self::from_fn(da, da, |i, j| {
                (0..db)
                    .map(|b| self.get(i * db + b, j * db + b))
                    .sum::<C64>()
            }),
            Subsystem::B => Self::from_fn(db, db, |a, b| {
                (0..da)
                    .map(|i| self.get(i * db + a, i * db + b))
                    .sum::<C64>()
            }),
        };
        Ok(out)
    }

    /// Transposes one factor of a `(dA·dB)×(dA·dB)` matrix.
    pub fn partial_transpose(&self, dims: (usize, usize), on: Subsystem) -> Result<Self> {
        let (da, db) = dims;
        self.check_bipartite(da, db)?;
        let n = da * db;
        let mut out = Self::zeros(n, n);
        for i in 0..da {
            for a in 0..db {
                for j in 0..da {
                    for b in 0..db {
                        let v = match on {
                            Subsystem::B => self.get(i * db + b, j * db + a),
                            Subsystem::A => self.get(j * db + a, i * db + b),
                        };
                        out.set(i * db + a, j * db + b, v);
                    }
                }
            }
        }
        Ok(out)
    }

    fn check_bipartite(&self, da: usize, db: usize) -> Result<()> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if self.rows != da * db {
            return Err(Error::DimensionMismatch {
                context: "bipartite dimension product",
                expected: da * db,
                got: self.rows,
            });
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "add: shape");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "sub: shape");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, rhs.rows, "mul: inner dimension");
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == c64(0.0, 0.0) {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out.get(i, j) + a * rhs.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }
}

/// Eigendecomposition of a Hermitian matrix: `M = V diag(λ) V†` with `λ`
/// ascending and `V` unitary.
#[derive(Debug, Clone)]
pub struct HermitianEig {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

const HERM_PRE_TOL: f64 = 1e-8;
const JACOBI_MAX_SWEEPS: usize = 64;

/// Eigendecomposition by cyclic complex Jacobi rotations.
///
/// The input is symmetrized internally; asymmetry beyond
/// `1e-8 · max(1, ‖M‖_F)` is rejected.
pub fn herm_eig(m: &ComplexMatrix) -> Result<HermitianEig> {
    jacobi(m, true).map(|(vals, vecs)| HermitianEig {
        eigenvalues: vals,
        eigenvectors: vecs.expect("eigenvectors requested"),
    })
}

/// Eigenvalues only (ascending); cheaper than [`herm_eig`].
pub fn herm_eigvals(m: &ComplexMatrix) -> Result<Vec<f64>> {
    jacobi(m, false).map(|(vals, _)| vals)
}

fn jacobi(m: &ComplexMatrix, want_vectors: bool) -> Result<(Vec<f64>, Option<ComplexMatrix>)> {
    if !m.is_square() {
        return Err(Error::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let scale = m.frobenius_norm().max(1.0);
    let asym = m.hermitian_residual();
    if asym > HERM_PRE_TOL * scale {
        return Err(Error::NotHermitian {
            residual: asym,
            tol: HERM_PRE_TOL * scale,
        });
    }
    let mut a = m.hermitize();
    let mut v = want_vectors.then(|| ComplexMatrix::identity(n));
    if n <= 1 {
        let vals = (0..n).map(|i| a.get(i, i).re).collect();
        return Ok((vals, v));
    }

    let stop = 1e-14 * scale;
    let mut converged = false;
    for _sweep in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a) <= stop {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let w = a.get(p, q);
                let aw = w.norm();
                if aw <= 1e-18 * scale {
                    continue;
                }
                // Rotation angle from the 2x2 block; s carries the phase of
                // the pivot so the rotated (p,q) entry cancels exactly.
                let app = a.get(p, p).re;
                let aqq = a.get(q, q).re;
                let tau = (aqq - app) / (2.0 * aw);
                let sign = if tau >= 0.0 { 1.0 } else { -1.0 };
                let t = -sign / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let sigma = t * c;
                let u = w / aw;
                let s = u.conj() * sigma;

                for i in 0..n {
                    if i == p || i == q {
                        continue;
                    }
                    let aip = a.get(i, p);
                    let aiq = a.get(i, q);
                    let nip = aip * c + aiq * s;
                    let niq = aip * (-s.conj()) + aiq * c;
                    a.set(i, p, nip);
                    a.set(p, i, nip.conj());
                    a.set(i, q, niq);
                    a.set(q, i, niq.conj());
                }
                let npp = c * c * app + 2.0 * c * sigma * aw + sigma * sigma * aqq;
                let nqq = c * c * aqq - 2.0 * c * sigma * aw + sigma * sigma * app;
                a.set(p, p, c64(npp, 0.0));
                a.set(q, q, c64(nqq, 0.0));
                a.set(p, q, c64(0.0, 0.0));
                a.set(q, p, c64(0.0, 0.0));

                if let Some(vm) = v.as_mut() {
                    for i in 0..n {
                        let vip = vm.get(i, p);
                        let viq = vm.get(i, q);
                        vm.set(i, p, vip * c + viq * s);
                        vm.set(i, q, vip * (-s.conj()) + viq * c);
                    }
                }
            }
        }
    }
    if !converged && off_diagonal_norm(&a) > stop {
        return Err(Error::ConvergenceFailure {
            sweeps: JACOBI_MAX_SWEEPS,
            off: off_diagonal_norm(&a),
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a.get(i, i)
            .re
            .partial_cmp(&a.get(j, j).re)
            .expect("finite eigenvalues")
    });
    let vals: Vec<f64> = order.iter().map(|&i| a.get(i, i).re).collect();
    let vecs = v.map(|vm| ComplexMatrix::from_fn(n, n, |i, j| vm.get(i, order[j])));
    Ok((vals, vecs))
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a.get(i, j).norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Eigenvalue clamp below which spectral weights are treated as zero.
pub const ENTROPY_CLAMP: f64 = 1e-12;

/// Shannon entropy (base 2) of a spectrum; weights below the clamp contribute
/// nothing.
pub fn entropy_of_spectrum(spectrum: &[f64]) -> f64 {
    let s: f64 = spectrum
        .iter()
        .filter(|&&x| x > ENTROPY_CLAMP)
        .map(|&x| -x * x.log2())
        .sum();
    s.max(0.0)
}

/// Von Neumann entropy in bits of a Hermitian PSD matrix.
pub fn entropy_of_matrix(m: &ComplexMatrix) -> Result<f64> {
    Ok(entropy_of_spectrum(&herm_eigvals(m)?))
}

/// Projects a Hermitian matrix onto the PSD cone by clipping negative
/// eigenvalues.
pub fn psd_project(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = herm_eig(m)?;
    let n = m.rows();
    let mut out = ComplexMatrix::zeros(n, n);
    for (k, &lam) in eig.eigenvalues.iter().enumerate() {
        if lam <= 0.0 {
            continue;
        }
        let col = eig.eigenvectors.column(k);
        for i in 0..n {
            for j in 0..n {
                let v = out.get(i, j) + col[i] * col[j].conj() * lam;
                out.set(i, j, v);
            }
        }
    }
    Ok(out)
}

/// `f(M) = V diag(f(λ)) V†` for Hermitian `M`.
pub fn herm_map(m: &ComplexMatrix, f: impl Fn(f64) -> f64) -> Result<ComplexMatrix> {
    let eig = herm_eig(m)?;
    let n = m.rows();
    let mut out = ComplexMatrix::zeros(n, n);
    for (k, &lam) in eig.eigenvalues.iter().enumerate() {
        let flam = f(lam);
        if flam == 0.0 {
            continue;
        }
        let col = eig.eigenvectors.column(k);
        for i in 0..n {
            for j in 0..n {
                let v = out.get(i, j) + col[i] * col[j].conj() * flam;
                out.set(i, j, v);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn pauli_x() -> ComplexMatrix {
        ComplexMatrix::new(2, 2, vec![c64(0., 0.), c64(1., 0.), c64(1., 0.), c64(0., 0.)]).unwrap()
    }

    fn pauli_z() -> ComplexMatrix {
        ComplexMatrix::diag_real(&[1.0, -1.0])
    }

    #[test]
    fn rejects_nan_entries() {
        let err = ComplexMatrix::new(1, 1, vec![c64(f64::NAN, 0.0)]).unwrap_err();
        assert!(matches!(err, Error::InvalidParams { .. }));
    }

    #[test]
    fn herm_eig_identity() {
        let eig = herm_eig(&ComplexMatrix::identity(2)).unwrap();
        assert!((eig.eigenvalues[0] - 1.0).abs() < 1e-14);
        assert!((eig.eigenvalues[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn herm_eig_diagonal_sorted() {
        let eig = herm_eig(&ComplexMatrix::diag_real(&[3.0, -1.0])).unwrap();
        assert_eq!(eig.eigenvalues, vec![-1.0, 3.0]);
    }

    #[test]
    fn herm_eig_pauli_x() {
        // Closed form from the 2x2 characteristic polynomial: eigenvalues ±1
        // with eigenvectors (|0⟩ ∓ |1⟩)/√2.
        let eig = herm_eig(&pauli_x()).unwrap();
        assert!((eig.eigenvalues[0] + 1.0).abs() < 1e-12);
        assert!((eig.eigenvalues[1] - 1.0).abs() < 1e-12);
        let v0 = eig.eigenvectors.column(0);
        let ratio = v0[1] / v0[0];
        assert!((ratio + c64(1.0, 0.0)).norm() < 1e-10);
        let v1 = eig.eigenvectors.column(1);
        let ratio = v1[1] / v1[0];
        assert!((ratio - c64(1.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn herm_eig_rejects_non_square_and_non_hermitian() {
        assert!(matches!(
            herm_eig(&ComplexMatrix::zeros(2, 3)),
            Err(Error::NonSquare { .. })
        ));
        let m = ComplexMatrix::new(
            2,
            2,
            vec![c64(0., 0.), c64(1., 0.), c64(0., 0.), c64(0., 0.)],
        )
        .unwrap();
        assert!(matches!(herm_eig(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn reconstruction_and_unitarity_on_random_matrices() {
        let mut rng = crate::random::Rng::new(11);
        for trial in 0..200 {
            let d = 2 + (trial % 8); // dimensions 2..=9
            let m = rng.hermitian(d);
            let scale = m.frobenius_norm().max(1.0);
            let eig = herm_eig(&m).unwrap();
            let v = &eig.eigenvectors;
            let rec = &(v * &ComplexMatrix::diag_real(&eig.eigenvalues)) * &v.dagger();
            assert!(
                (&rec - &m).frobenius_norm() <= 1e-10 * scale,
                "reconstruction failed at trial {trial}"
            );
            let gram = &v.dagger() * v;
            assert!(
                (&gram - &ComplexMatrix::identity(d)).frobenius_norm() <= 1e-10,
                "unitarity failed at trial {trial}"
            );
            let mut sorted = eig.eigenvalues.clone();
            sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
            assert_eq!(sorted, eig.eigenvalues);
        }
    }

    #[test]
    fn entropy_examples() {
        // Pure state.
        assert_eq!(entropy_of_spectrum(&[1.0, 0.0]), 0.0);
        // Maximally mixed qubit.
        assert!((entropy_of_spectrum(&[0.5, 0.5]) - 1.0).abs() < 1e-15);
        // -0.9 log2 0.9 - 0.1 log2 0.1, evaluated independently.
        let expected = -(0.9f64 * 0.9f64.log2()) - 0.1 * 0.1f64.log2();
        assert!((expected - 0.468996).abs() < 1e-6);
        assert!((entropy_of_spectrum(&[0.9, 0.1]) - expected).abs() < 1e-12);
    }

    #[test]
    fn kron_examples() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(i2.kron(&i2), ComplexMatrix::identity(4));
        let d1 = ComplexMatrix::diag_real(&[2.0, 3.0]);
        let d2 = ComplexMatrix::diag_real(&[5.0, 7.0]);
        assert_eq!(
            d1.kron(&d2),
            ComplexMatrix::diag_real(&[10.0, 14.0, 15.0, 21.0])
        );
        // X ⊗ Z against the elementwise definition.
        let k = pauli_x().kron(&pauli_z());
        for i in 0..4 {
            for j in 0..4 {
                let expect = pauli_x().get(i / 2, j / 2) * pauli_z().get(i % 2, j % 2);
                assert_eq!(k.get(i, j), expect);
            }
        }
        // Mixed-product identity on random factors.
        let mut rng = crate::random::Rng::new(3);
        let (a, b, c, d) = (rng.ginibre(2, 3), rng.ginibre(3, 2), rng.ginibre(3, 2), rng.ginibre(2, 3));
        let lhs = &a.kron(&b) * &c.kron(&d);
        let rhs = (&a * &c).kron(&(&b * &d));
        assert!((&lhs - &rhs).frobenius_norm() < 1e-12);
    }

    #[test]
    fn partial_trace_product_and_bell() {
        let mut rng = crate::random::Rng::new(5);
        let rho = rng.density_matrix(2, 2);
        let sigma = rng.density_matrix(3, 3);
        let joint = rho.kron(&sigma);
        let back = joint.partial_trace((2, 3), Subsystem::A).unwrap();
        assert!((&back - &rho).frobenius_norm() < 1e-12);

        let bell = bell_state();
        let red = bell.partial_trace((2, 2), Subsystem::A).unwrap();
        assert!((&red - &ComplexMatrix::identity(2).scale_re(0.5)).frobenius_norm() < 1e-12);
    }

    #[test]
    fn partial_trace_matches_index_contraction_oracle() {
        let mut rng = crate::random::Rng::new(7);
        let h = rng.hermitian(4);
        let got = h.partial_trace((2, 2), Subsystem::B).unwrap();
        // Quadruple-loop contraction written independently of the library path.
        let mut oracle = ComplexMatrix::zeros(2, 2);
        for a in 0..2 {
            for b in 0..2 {
                let mut acc = c64(0.0, 0.0);
                for i in 0..2 {
                    acc += h.get(a * 2 + i, b * 2 + i);
                }
                oracle.set(a, b, acc);
            }
        }
        // keep B means summing over the first index instead.
        let got_b = h.partial_trace((2, 2), Subsystem::B).unwrap();
        let mut oracle_b = ComplexMatrix::zeros(2, 2);
        for a in 0..2 {
            for b in 0..2 {
                let mut acc = c64(0.0, 0.0);
                for i in 0..2 {
                    acc += h.get(i * 2 + a, i * 2 + b);
                }
                oracle_b.set(a, b, acc);
            }
        }
        assert!((&got_b - &oracle_b).frobenius_norm() < 1e-13);
        // Trace is preserved either way.
        assert!((got.trace() - h.trace()).norm() < 1e-13);
    }

    fn bell_state() -> ComplexMatrix {
        let v = [
            c64(1.0 / 2f64.sqrt(), 0.0),
            c64(0.0, 0.0),
            c64(0.0, 0.0),
            c64(1.0 / 2f64.sqrt(), 0.0),
        ];
        ComplexMatrix::outer(&v, &v)
    }

    #[test]
    fn partial_transpose_examples() {
        let mut rng = crate::random::Rng::new(9);
        let rho = rng.density_matrix(2, 2);
        let sigma = rng.density_matrix(2, 2);
        let joint = rho.kron(&sigma);
        let pt = joint.partial_transpose((2, 2), Subsystem::B).unwrap();
        assert!((&pt - &rho.kron(&sigma.transpose())).frobenius_norm() < 1e-13);

        // Involution and trace preservation.
        let h = rng.hermitian(6);
        let twice = h
            .partial_transpose((2, 3), Subsystem::B)
            .unwrap()
            .partial_transpose((2, 3), Subsystem::B)
            .unwrap();
        assert_eq!(twice, h);

        // Bell partial transpose has eigenvalues {1/2, 1/2, 1/2, -1/2}.
        let pt = bell_state().partial_transpose((2, 2), Subsystem::B).unwrap();
        let vals = herm_eigvals(&pt).unwrap();
        assert!((vals[0] + 0.5).abs() < 1e-12);
        for v in &vals[1..] {
            assert!((v - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn partial_transpose_spectrum_of_product() {
        let mut rng = crate::random::Rng::new(13);
        let rho = rng.density_matrix(2, 2);
        let sigma = rng.density_matrix(3, 3);
        let pt = rho
            .kron(&sigma)
            .partial_transpose((2, 3), Subsystem::B)
            .unwrap();
        let mut got = herm_eigvals(&pt).unwrap();
        let ev_r = herm_eigvals(&rho).unwrap();
        let ev_s = herm_eigvals(&sigma).unwrap();
        let mut expect: Vec<f64> = ev_r
            .iter()
            .flat_map(|a| ev_s.iter().map(move |b| a * b))
            .collect();
        got.sort_by(|a, b| a.partial_cmp(b).unwrap());
        expect.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (g, e) in got.iter().zip(&expect) {
            assert!((g - e).abs() < 1e-9);
        }
    }

    #[test]
    fn dimension_errors() {
        let m = ComplexMatrix::identity(4);
        assert!(m.partial_trace((3, 2), Subsystem::A).is_err());
        assert!(m.partial_transpose((5, 1), Subsystem::B).is_err());
    }
}
