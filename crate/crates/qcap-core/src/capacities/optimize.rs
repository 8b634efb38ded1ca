//! Multi-restart local ascent for the capacity objectives.
//!
//! Density inputs are parameterized as `ρ = G G† / Tr(G G†)` with `G` a
//! complex d×d factor; hierarchical ensembles as softmax-normalized outer and
//! inner logits plus normalized complex vectors for the fine-grained pure
//! states. Gradients are analytic (entropy potentials pulled back through the
//! channel adjoint), verified against finite differences in tests.
//!
//! Restart `k` draws from seed `base_seed + k`, so enlarging the restart count
//! never changes earlier restarts and never lowers the reported optimum.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::channel::{compose, tensor, KrausChannel};
use crate::error::{Error, Result};
use crate::linalg::{c64, herm_eig, ComplexMatrix, C64, ENTROPY_CLAMP};
use crate::random::Rng;
use crate::state::{Ensemble, HierarchicalEnsemble, QuantumState};

const LN2_INV: f64 = core::f64::consts::LOG2_E;

/// Knobs for the capacity optimizers.
#[derive(Debug, Clone)]
pub struct OptimizerConfig {
    pub restarts: usize,
    pub max_iters: usize,
    /// First-order / relative-improvement stopping tolerance.
    pub tol: f64,
    pub seed: u64,
    /// Outer ensemble size m' (coarse symbols).
    pub outer_size: usize,
    /// Inner ensemble size m (pure states per coarse symbol).
    pub inner_size: usize,
    /// Restart-level parallelism cap (1 = sequential; needs `std`).
    pub threads: usize,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            restarts: 8,
            max_iters: 1500,
            tol: 1e-9,
            seed: 7,
            outer_size: 4,
            inner_size: 4,
            threads: 1,
        }
    }
}

impl OptimizerConfig {
    /// Defaults sized for a given input dimension: m' = d², with m capped so
    /// the flattened support stays within 4·d².
    pub fn for_input_dim(d: usize) -> Self {
        let outer = d * d;
        let inner = (d * d).min(4).max(1);
        Self {
            outer_size: outer,
            inner_size: inner,
            ..Self::default()
        }
    }

    pub fn validate(&self, d: usize) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::InvalidParams {
                reason: "optimizer needs at least one restart",
            });
        }
        if self.outer_size == 0 || self.inner_size == 0 {
            return Err(Error::InvalidParams {
                reason: "ensemble sizes must be at least one",
            });
        }
        if self.outer_size * self.inner_size > 4 * d * d {
            return Err(Error::InvalidParams {
                reason: "flattened ensemble support exceeds the 4d^2 cap",
            });
        }
        Ok(())
    }
}

/// Per-restart optimizer outcome.
#[derive(Debug, Clone)]
pub struct RestartDiag {
    pub seed_index: usize,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Best coherent-information input found (a lower bound on Q¹).
#[derive(Debug, Clone)]
pub struct CoherentOptimum {
    /// Reported value, clipped at zero.
    pub value: f64,
    /// Raw optimizer value (may be slightly negative).
    pub raw: f64,
    pub input: QuantumState,
    pub restarts: Vec<RestartDiag>,
    pub converged: bool,
}

/// Best private-information input found (a lower bound on P¹).
#[derive(Debug, Clone)]
pub struct PrivateOptimum {
    pub value: f64,
    pub raw: f64,
    pub input: HierarchicalEnsemble,
    pub restarts: Vec<RestartDiag>,
    pub converged: bool,
}

/// Best η input found.
#[derive(Debug, Clone)]
pub struct EtaOptimum {
    pub value: f64,
    pub input: HierarchicalEnsemble,
    pub restarts: Vec<RestartDiag>,
    pub converged: bool,
}

/// Both readings of the Δ rate improvement, with the shared-ensemble optimum.
#[derive(Debug, Clone)]
pub struct DeltaResult {
    /// Shared-ensemble reading: `max_ens [χ(N_AE^D) − χ(N_AE'^PD)]`.
    pub delta: f64,
    /// Capacity-difference reading: `P(N_PD) − P(N_D)`, each side maximized
    /// independently.
    pub delta_capacity: f64,
    /// Absolute gap between the two readings.
    pub readings_gap: f64,
    pub p_d: PrivateOptimum,
    pub p_pd: PrivateOptimum,
    /// Environment Holevo quantities at the shared-ensemble optimum.
    pub chi_env_d_at_opt: f64,
    pub chi_env_pd_at_opt: f64,
    pub shared_input: HierarchicalEnsemble,
}

// ---------------------------------------------------------------------------
// Ascent engine
// ---------------------------------------------------------------------------

trait Objective: Sync {
    fn value(&self, x: &[f64]) -> Result<f64>;
    fn value_grad(&self, x: &[f64]) -> Result<(f64, Vec<f64>)>;
}

struct AscentOutcome {
    x: Vec<f64>,
    value: f64,
    iterations: usize,
    converged: bool,
}

fn ascend(
    obj: &dyn Objective,
    x0: Vec<f64>,
    max_iters: usize,
    tol: f64,
) -> Result<AscentOutcome> {
    let mut x = x0;
    let (mut value, mut grad) = obj.value_grad(&x)?;
    if !value.is_finite() {
        return Ok(AscentOutcome {
            x,
            value: f64::NEG_INFINITY,
            iterations: 0,
            converged: false,
        });
    }
    let mut alpha = 0.25;
    let mut stall = 0usize;
    let mut iterations = 0usize;
    let mut converged = false;
    for iter in 0..max_iters {
        let gnorm_sq: f64 = grad.iter().map(|g| g * g).sum();
        if gnorm_sq.sqrt() <= 1e-10 {
            converged = true;
            break;
        }
        let mut accepted = false;
        for attempt in 0..60 {
            let candidate: Vec<f64> = x
                .iter()
                .zip(&grad)
                .map(|(xi, gi)| xi + alpha * gi)
                .collect();
            let cand_value = obj.value(&candidate)?;
            if cand_value.is_finite() && cand_value >= value + 1e-4 * alpha * gnorm_sq {
                let improvement = cand_value - value;
                x = candidate;
                let (v, g) = obj.value_grad(&x)?;
                value = v;
                grad = g;
                if attempt == 0 {
                    alpha = (alpha * 1.5).min(64.0);
                }
                if improvement <= tol * value.abs().max(1.0) {
                    stall += 1;
                } else {
                    stall = 0;
                }
                accepted = true;
                break;
            }
            alpha *= 0.5;
            if alpha < 1e-18 {
                break;
            }
        }
        iterations = iter + 1;
        if !accepted {
            // Stationary to line-search resolution.
            converged = true;
            break;
        }
        if stall >= 4 {
            converged = true;
            break;
        }
    }
    Ok(AscentOutcome {
        x,
        value,
        iterations,
        converged,
    })
}

/// Runs `count` independent jobs, optionally on `threads` worker threads;
/// results are merged by index so scheduling never changes the outcome.
#[cfg(feature = "std")]
fn run_jobs<T: Send>(
    count: usize,
    threads: usize,
    job: impl Fn(usize) -> Result<T> + Sync,
) -> Result<Vec<T>> {
    if threads <= 1 || count <= 1 {
        return (0..count).map(job).collect();
    }
    let workers = threads.min(count);
    let chunk = count.div_ceil(workers);
    let mut slots: Vec<Option<Result<T>>> = (0..count).map(|_| None).collect();
    std::thread::scope(|scope| {
        for (block, out) in slots.chunks_mut(chunk).enumerate() {
            let job = &job;
            scope.spawn(move || {
                for (offset, slot) in out.iter_mut().enumerate() {
                    *slot = Some(job(block * chunk + offset));
                }
            });
        }
    });
    slots
        .into_iter()
        .map(|s| s.expect("all jobs scheduled"))
        .collect()
}

#[cfg(not(feature = "std"))]
fn run_jobs<T: Send>(
    count: usize,
    _threads: usize,
    job: impl Fn(usize) -> Result<T> + Sync,
) -> Result<Vec<T>> {
    (0..count).map(job).collect()
}

// ---------------------------------------------------------------------------
// Entropy potentials
// ---------------------------------------------------------------------------

/// Output entropy of `channel(sigma)` together with the pulled-back gradient
/// potential `channel†(−log₂ τ − I/ln 2)`.
fn entropy_and_potential(
    channel: &KrausChannel,
    sigma: &ComplexMatrix,
) -> Result<(f64, ComplexMatrix)> {
    let tau = channel.apply_matrix(sigma).hermitize();
    let eig = herm_eig(&tau)?;
    let mut entropy = 0.0;
    let n = tau.rows();
    let mut potential = ComplexMatrix::zeros(n, n);
    for (k, &lam) in eig.eigenvalues.iter().enumerate() {
        if lam > ENTROPY_CLAMP {
            entropy -= lam * lam.log2();
        }
        let f = -lam.max(ENTROPY_CLAMP).log2() - LN2_INV;
        let col = eig.eigenvectors.column(k);
        for i in 0..n {
            for j in 0..n {
                let v = potential.get(i, j) + col[i] * col[j].conj() * f;
                potential.set(i, j, v);
            }
        }
    }
    Ok((
        entropy.max(0.0),
        channel.apply_adjoint_matrix(&potential),
    ))
}

fn entropy_through(channel: &KrausChannel, sigma: &ComplexMatrix) -> Result<f64> {
    crate::linalg::entropy_of_matrix(&channel.apply_matrix(sigma).hermitize())
}

fn real_trace_product(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    // Tr(a b) for Hermitian a, b is real.
    let mut acc = 0.0;
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            acc += (a.get(i, j) * b.get(j, i)).re;
        }
    }
    acc
}

// ---------------------------------------------------------------------------
// Density-factor parameterization (coherent information)
// ---------------------------------------------------------------------------

struct CoherentObjective<'a> {
    nb: &'a KrausChannel,
    ne: &'a KrausChannel,
    d: usize,
}

impl CoherentObjective<'_> {
    fn decode(&self, x: &[f64]) -> Option<(ComplexMatrix, f64, ComplexMatrix)> {
        let d = self.d;
        let g = ComplexMatrix::from_fn(d, d, |i, j| {
            let at = 2 * (i * d + j);
            c64(x[at], x[at + 1])
        });
        let t: f64 = g.data().iter().map(|z| z.norm_sqr()).sum();
        if !(t > 1e-28) || !t.is_finite() {
            return None;
        }
        let rho = (&g * &g.dagger()).scale_re(1.0 / t);
        Some((g, t, rho))
    }

    fn encode_identity(d: usize) -> Vec<f64> {
        let mut x = vec![0.0; 2 * d * d];
        for i in 0..d {
            x[2 * (i * d + i)] = 1.0;
        }
        x
    }
}

impl Objective for CoherentObjective<'_> {
    fn value(&self, x: &[f64]) -> Result<f64> {
        let Some((_, _, rho)) = self.decode(x) else {
            return Ok(f64::NEG_INFINITY);
        };
        Ok(entropy_through(self.nb, &rho)? - entropy_through(self.ne, &rho)?)
    }

    fn value_grad(&self, x: &[f64]) -> Result<(f64, Vec<f64>)> {
        let Some((g, t, rho)) = self.decode(x) else {
            return Ok((f64::NEG_INFINITY, vec![0.0; x.len()]));
        };
        let (sb, ab) = entropy_and_potential(self.nb, &rho)?;
        let (se, ae) = entropy_and_potential(self.ne, &rho)?;
        let w = &ab - &ae;
        let lambda = real_trace_product(&w, &rho);
        let wg = &w * &g;
        let d = self.d;
        let mut grad = vec![0.0; x.len()];
        for i in 0..d {
            for j in 0..d {
                let m = (wg.get(i, j) - g.get(i, j) * lambda) / t;
                let at = 2 * (i * d + j);
                grad[at] = 2.0 * m.re;
                grad[at + 1] = 2.0 * m.im;
            }
        }
        Ok((sb - se, grad))
    }
}

// ---------------------------------------------------------------------------
// Hierarchical-ensemble parameterization
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy)]
struct EnsembleLayout {
    d: usize,
    outer: usize,
    inner: usize,
}

impl EnsembleLayout {
    fn len(&self) -> usize {
        self.outer + self.outer * self.inner + self.outer * self.inner * 2 * self.d
    }

    fn inner_logits_at(&self, xp: usize) -> usize {
        self.outer + xp * self.inner
    }

    fn vector_at(&self, xp: usize, xi: usize) -> usize {
        self.outer + self.outer * self.inner + (xp * self.inner + xi) * 2 * self.d
    }
}

fn softmax(logits: &[f64]) -> Vec<f64> {
    let max = logits.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = logits.iter().map(|&a| (a - max).exp()).collect();
    let total: f64 = exps.iter().sum();
    exps.iter().map(|&e| e / total).collect()
}

/// Chain rule from probability-space gradients to logit gradients.
fn softmax_chain(p: &[f64], dp: &[f64]) -> Vec<f64> {
    let mean: f64 = p.iter().zip(dp).map(|(pi, di)| pi * di).sum();
    p.iter().zip(dp).map(|(pi, di)| pi * (di - mean)).collect()
}

struct DecodedEnsemble {
    outer_p: Vec<f64>,
    inner_p: Vec<Vec<f64>>,
    vecs: Vec<Vec<Vec<C64>>>,
    norms: Vec<Vec<f64>>,
    psi: Vec<Vec<ComplexMatrix>>,
    rho_x: Vec<ComplexMatrix>,
    rho_bar: ComplexMatrix,
}

fn decode_ensemble(layout: &EnsembleLayout, x: &[f64]) -> Option<DecodedEnsemble> {
    let (d, m_out, m_in) = (layout.d, layout.outer, layout.inner);
    let outer_p = softmax(&x[0..m_out]);
    let mut inner_p = Vec::with_capacity(m_out);
    let mut vecs = Vec::with_capacity(m_out);
    let mut norms = Vec::with_capacity(m_out);
    let mut psi = Vec::with_capacity(m_out);
    let mut rho_x = Vec::with_capacity(m_out);
    let mut rho_bar = ComplexMatrix::zeros(d, d);
    for xp in 0..m_out {
        let at = layout.inner_logits_at(xp);
        let probs = softmax(&x[at..at + m_in]);
        let mut row_vecs = Vec::with_capacity(m_in);
        let mut row_norms = Vec::with_capacity(m_in);
        let mut row_psi = Vec::with_capacity(m_in);
        let mut rho = ComplexMatrix::zeros(d, d);
        for xi in 0..m_in {
            let base = layout.vector_at(xp, xi);
            let v: Vec<C64> = (0..d)
                .map(|k| c64(x[base + 2 * k], x[base + 2 * k + 1]))
                .collect();
            let t: f64 = v.iter().map(|z| z.norm_sqr()).sum();
            if !(t > 1e-28) || !t.is_finite() {
                return None;
            }
            let m = ComplexMatrix::outer(&v, &v).scale_re(1.0 / t);
            rho = &rho + &m.scale_re(probs[xi]);
            row_vecs.push(v);
            row_norms.push(t);
            row_psi.push(m);
        }
        rho_bar = &rho_bar + &rho.scale_re(outer_p[xp]);
        inner_p.push(probs);
        vecs.push(row_vecs);
        norms.push(row_norms);
        psi.push(row_psi);
        rho_x.push(rho);
    }
    Some(DecodedEnsemble {
        outer_p,
        inner_p,
        vecs,
        norms,
        psi,
        rho_x,
        rho_bar,
    })
}

fn decoded_to_hierarchical(layout: &EnsembleLayout, dec: &DecodedEnsemble) -> HierarchicalEnsemble {
    let mut inner = Vec::with_capacity(layout.outer);
    for xp in 0..layout.outer {
        let states = (0..layout.inner)
            .map(|xi| QuantumState::new(dec.psi[xp][xi].clone()).expect("normalized pure state"))
            .collect();
        inner.push(
            Ensemble::new(dec.inner_p[xp].clone(), states).expect("softmax probabilities"),
        );
    }
    HierarchicalEnsemble::new(dec.outer_p.clone(), inner).expect("decoded ensemble is valid")
}

/// Assembles the full parameter-space gradient from probability-space and
/// state-space gradients.
fn assemble_ensemble_grad(
    layout: &EnsembleLayout,
    dec: &DecodedEnsemble,
    d_outer_p: &[f64],
    d_inner_p: &[Vec<f64>],
    state_potentials: &[Vec<ComplexMatrix>],
    x: &[f64],
) -> Vec<f64> {
    let mut grad = vec![0.0; x.len()];
    let outer_chain = softmax_chain(&dec.outer_p, d_outer_p);
    grad[0..layout.outer].copy_from_slice(&outer_chain);
    for xp in 0..layout.outer {
        let at = layout.inner_logits_at(xp);
        let chain = softmax_chain(&dec.inner_p[xp], &d_inner_p[xp]);
        grad[at..at + layout.inner].copy_from_slice(&chain);
        for xi in 0..layout.inner {
            let g_psi = &state_potentials[xp][xi];
            let v = &dec.vecs[xp][xi];
            let t = dec.norms[xp][xi];
            let gv = g_psi.matvec(v);
            let lambda: f64 = v
                .iter()
                .zip(&gv)
                .map(|(vi, gi)| (vi.conj() * gi).re)
                .sum::<f64>()
                / t;
            let base = layout.vector_at(xp, xi);
            for k in 0..layout.d {
                let dv = (gv[k] - v[k] * lambda) / t;
                grad[base + 2 * k] = 2.0 * dv.re;
                grad[base + 2 * k + 1] = 2.0 * dv.im;
            }
        }
    }
    grad
}

/// `χ(plus, coarse) − χ(minus, coarse)` over the coarse ensemble of the
/// decoded hierarchical input. With `minus = None` this is plain Holevo
/// information.
struct CoarseDiffObjective<'a> {
    plus: &'a KrausChannel,
    minus: Option<&'a KrausChannel>,
    layout: EnsembleLayout,
}

impl CoarseDiffObjective<'_> {
    fn chi_terms(&self, dec: &DecodedEnsemble) -> Result<f64> {
        let mut value = entropy_through(self.plus, &dec.rho_bar)?;
        if let Some(minus) = self.minus {
            value -= entropy_through(minus, &dec.rho_bar)?;
        }
        for (xp, rho) in dec.rho_x.iter().enumerate() {
            let mut s = entropy_through(self.plus, rho)?;
            if let Some(minus) = self.minus {
                s -= entropy_through(minus, rho)?;
            }
            value -= dec.outer_p[xp] * s;
        }
        Ok(value)
    }
}

impl Objective for CoarseDiffObjective<'_> {
    fn value(&self, x: &[f64]) -> Result<f64> {
        match decode_ensemble(&self.layout, x) {
            Some(dec) => self.chi_terms(&dec),
            None => Ok(f64::NEG_INFINITY),
        }
    }

    fn value_grad(&self, x: &[f64]) -> Result<(f64, Vec<f64>)> {
        let Some(dec) = decode_ensemble(&self.layout, x) else {
            return Ok((f64::NEG_INFINITY, vec![0.0; x.len()]));
        };
        let (sbar_p, abar_p) = entropy_and_potential(self.plus, &dec.rho_bar)?;
        let (mut value, mut w) = (sbar_p, abar_p);
        if let Some(minus) = self.minus {
            let (sbar_m, abar_m) = entropy_and_potential(minus, &dec.rho_bar)?;
            value -= sbar_m;
            w = &w - &abar_m;
        }
        let mut d_outer = vec![0.0; self.layout.outer];
        let mut d_inner = Vec::with_capacity(self.layout.outer);
        let mut potentials = Vec::with_capacity(self.layout.outer);
        for xp in 0..self.layout.outer {
            let rho = &dec.rho_x[xp];
            let (s_p, a_p) = entropy_and_potential(self.plus, rho)?;
            let (mut s_x, mut a_x) = (s_p, a_p);
            if let Some(minus) = self.minus {
                let (s_m, a_m) = entropy_and_potential(minus, rho)?;
                s_x -= s_m;
                a_x = &a_x - &a_m;
            }
            value -= dec.outer_p[xp] * s_x;
            d_outer[xp] = real_trace_product(rho, &w) - s_x;
            let w_diff = &w - &a_x;
            let mut row_dp = vec![0.0; self.layout.inner];
            let mut row_pot = Vec::with_capacity(self.layout.inner);
            for xi in 0..self.layout.inner {
                row_dp[xi] =
                    dec.outer_p[xp] * real_trace_product(&dec.psi[xp][xi], &w_diff);
                row_pot.push(
                    w_diff.scale_re(dec.outer_p[xp] * dec.inner_p[xp][xi]),
                );
            }
            d_inner.push(row_dp);
            potentials.push(row_pot);
        }
        let grad = assemble_ensemble_grad(&self.layout, &dec, &d_outer, &d_inner, &potentials, x);
        Ok((value, grad))
    }
}

/// `η = Σ_x' p(x') [χ_B(inner) − χ_E(inner)]`.
struct EtaObjective<'a> {
    b: &'a KrausChannel,
    e: &'a KrausChannel,
    layout: EnsembleLayout,
}

impl Objective for EtaObjective<'_> {
    fn value(&self, x: &[f64]) -> Result<f64> {
        let Some(dec) = decode_ensemble(&self.layout, x) else {
            return Ok(f64::NEG_INFINITY);
        };
        let mut value = 0.0;
        for xp in 0..self.layout.outer {
            let rho = &dec.rho_x[xp];
            let mut term =
                entropy_through(self.b, rho)? - entropy_through(self.e, rho)?;
            for xi in 0..self.layout.inner {
                let psi = &dec.psi[xp][xi];
                term -= dec.inner_p[xp][xi]
                    * (entropy_through(self.b, psi)? - entropy_through(self.e, psi)?);
            }
            value += dec.outer_p[xp] * term;
        }
        Ok(value)
    }

    fn value_grad(&self, x: &[f64]) -> Result<(f64, Vec<f64>)> {
        let Some(dec) = decode_ensemble(&self.layout, x) else {
            return Ok((f64::NEG_INFINITY, vec![0.0; x.len()]));
        };
        let mut value = 0.0;
        let mut d_outer = vec![0.0; self.layout.outer];
        let mut d_inner = Vec::with_capacity(self.layout.outer);
        let mut potentials = Vec::with_capacity(self.layout.outer);
        for xp in 0..self.layout.outer {
            let rho = &dec.rho_x[xp];
            let (sb, ab) = entropy_and_potential(self.b, rho)?;
            let (se, ae) = entropy_and_potential(self.e, rho)?;
            let a_x = &ab - &ae;
            let mut term = sb - se;
            let mut row_dp = vec![0.0; self.layout.inner];
            let mut row_pot = Vec::with_capacity(self.layout.inner);
            for xi in 0..self.layout.inner {
                let psi = &dec.psi[xp][xi];
                let (sbp, abp) = entropy_and_potential(self.b, psi)?;
                let (sep, aep) = entropy_and_potential(self.e, psi)?;
                let s_psi = sbp - sep;
                term -= dec.inner_p[xp][xi] * s_psi;
                row_dp[xi] =
                    dec.outer_p[xp] * (real_trace_product(psi, &a_x) - s_psi);
                let a_psi = &abp - &aep;
                row_pot.push(
                    (&a_x - &a_psi).scale_re(dec.outer_p[xp] * dec.inner_p[xp][xi]),
                );
            }
            value += dec.outer_p[xp] * term;
            d_outer[xp] = term;
            d_inner.push(row_dp);
            potentials.push(row_pot);
        }
        let grad = assemble_ensemble_grad(&self.layout, &dec, &d_outer, &d_inner, &potentials, x);
        Ok((value, grad))
    }
}

// ---------------------------------------------------------------------------
// Parameter encodings
// ---------------------------------------------------------------------------

fn encode_random(layout: &EnsembleLayout, rng: &mut Rng) -> Vec<f64> {
    (0..layout.len()).map(|_| rng.normal()).collect()
}

/// All mass on one repeated state: every diff-style objective is exactly zero
/// here, giving the optimizers a guaranteed floor.
fn encode_trivial(layout: &EnsembleLayout) -> Vec<f64> {
    let mut x = vec![0.0; layout.len()];
    for xp in 0..layout.outer {
        for xi in 0..layout.inner {
            x[layout.vector_at(xp, xi)] = 1.0;
        }
    }
    x
}

/// Spectral decomposition of a density matrix as a degenerate hierarchical
/// input: outer symbols are eigenvectors weighted by eigenvalues, inner
/// ensembles are trivial.
fn encode_from_state(layout: &EnsembleLayout, rho: &ComplexMatrix) -> Result<Vec<f64>> {
    let eig = herm_eig(&rho.hermitize())?;
    let d = layout.d;
    let mut x = vec![0.0; layout.len()];
    for xp in 0..layout.outer {
        // Descending eigenvalue order; surplus outer slots get negligible
        // weight and repeat the dominant eigenvector.
        let which = d - 1 - xp.min(d - 1);
        let lam = eig.eigenvalues[which];
        x[xp] = if xp < d { lam.max(1e-15).ln() } else { -40.0 };
        let col = eig.eigenvectors.column(which);
        for xi in 0..layout.inner {
            let base = layout.vector_at(xp, xi);
            for k in 0..d {
                x[base + 2 * k] = col[k].re;
                x[base + 2 * k + 1] = col[k].im;
            }
        }
    }
    Ok(x)
}

fn encode_from_hierarchical(
    layout: &EnsembleLayout,
    h: &HierarchicalEnsemble,
) -> Result<Vec<f64>> {
    let mut x = vec![-40.0; layout.len()];
    for xp in 0..layout.outer {
        let src_xp = xp.min(h.outer_len() - 1);
        x[xp] = if xp < h.outer_len() {
            h.outer_probs()[xp].max(1e-15).ln()
        } else {
            -40.0
        };
        let inner = &h.inner()[src_xp];
        let at = layout.inner_logits_at(xp);
        for xi in 0..layout.inner {
            let src_xi = xi.min(inner.len() - 1);
            x[at + xi] = if xi < inner.len() {
                inner.probs()[xi].max(1e-15).ln()
            } else {
                -40.0
            };
            let eig = herm_eig(&inner.states()[src_xi].matrix().hermitize())?;
            let col = eig.eigenvectors.column(layout.d - 1);
            let base = layout.vector_at(xp, xi);
            for k in 0..layout.d {
                x[base + 2 * k] = col[k].re;
                x[base + 2 * k + 1] = col[k].im;
            }
        }
    }
    Ok(x)
}

// ---------------------------------------------------------------------------
// Public maximizers
// ---------------------------------------------------------------------------

fn best_index(values: &[f64]) -> usize {
    let mut best = 0;
    for (k, &v) in values.iter().enumerate() {
        if v > values[best] {
            best = k;
        }
    }
    best
}

/// Maximizes coherent information of a channel over density inputs.
pub fn maximize_coherent_information(
    n: &KrausChannel,
    cfg: &OptimizerConfig,
) -> Result<CoherentOptimum> {
    let comp = n.complementary()?;
    maximize_coherent_pair(n, &comp, cfg)
}

/// Maximizes `S(N_b(ρ)) − S(N_e(ρ))` for an explicit channel pair.
pub fn maximize_coherent_pair(
    nb: &KrausChannel,
    ne: &KrausChannel,
    cfg: &OptimizerConfig,
) -> Result<CoherentOptimum> {
    if cfg.restarts == 0 {
        return Err(Error::InvalidParams {
            reason: "optimizer needs at least one restart",
        });
    }
    if nb.d_in() != ne.d_in() {
        return Err(Error::DimensionMismatch {
            context: "pair input dimensions",
            expected: nb.d_in(),
            got: ne.d_in(),
        });
    }
    let d = nb.d_in();
    let obj = CoherentObjective { nb, ne, d };
    let outcomes = run_jobs(cfg.restarts, cfg.threads, |k| {
        let mut rng = Rng::new(cfg.seed + k as u64);
        let x0: Vec<f64> = (0..2 * d * d).map(|_| rng.normal()).collect();
        ascend(&obj, x0, cfg.max_iters, cfg.tol)
    })?;

    // Deterministic extra candidate: the maximally mixed input.
    let mixed_x = CoherentObjective::encode_identity(d);
    let mixed_value = obj.value(&mixed_x)?;

    let mut restarts: Vec<RestartDiag> = outcomes
        .iter()
        .enumerate()
        .map(|(k, o)| RestartDiag {
            seed_index: k,
            value: o.value,
            iterations: o.iterations,
            converged: o.converged,
        })
        .collect();
    restarts.push(RestartDiag {
        seed_index: cfg.restarts,
        value: mixed_value,
        iterations: 0,
        converged: true,
    });

    let values: Vec<f64> = restarts.iter().map(|r| r.value).collect();
    let best = best_index(&values);
    let best_x = if best < outcomes.len() {
        &outcomes[best].x
    } else {
        &mixed_x
    };
    let (_, _, rho) = obj.decode(best_x).expect("accepted iterate is decodable");
    let raw = values[best];
    let converged = restarts.iter().any(|r| r.converged);
    Ok(CoherentOptimum {
        value: raw.max(0.0),
        raw,
        input: QuantumState::new(rho)?,
        restarts,
        converged,
    })
}

/// Maximizes private information of a channel over hierarchical inputs,
/// seeding one restart from the coherent-information optimum.
pub fn maximize_private_information(
    n: &KrausChannel,
    cfg: &OptimizerConfig,
) -> Result<PrivateOptimum> {
    let comp = n.complementary()?;
    let q1 = maximize_coherent_pair(n, &comp, cfg)?;
    maximize_private_information_pair(n, &comp, cfg, Some(&q1), None)
}

/// Maximizes `χ(N_b, coarse) − χ(N_e, coarse)` for an explicit channel pair.
///
/// `q1_seed` installs the spectral decomposition of a coherent-information
/// optimum as restart 0, guaranteeing the reported value is at least the
/// coherent value there. `extra_seed` warm-starts one further restart from a
/// known good hierarchical input.
pub fn maximize_private_information_pair(
    nb: &KrausChannel,
    ne: &KrausChannel,
    cfg: &OptimizerConfig,
    q1_seed: Option<&CoherentOptimum>,
    extra_seed: Option<&HierarchicalEnsemble>,
) -> Result<PrivateOptimum> {
    let d = nb.d_in();
    cfg.validate(d)?;
    if ne.d_in() != d {
        return Err(Error::DimensionMismatch {
            context: "pair input dimensions",
            expected: d,
            got: ne.d_in(),
        });
    }
    let layout = EnsembleLayout {
        d,
        outer: cfg.outer_size,
        inner: cfg.inner_size,
    };
    let obj = CoarseDiffObjective {
        plus: nb,
        minus: Some(ne),
        layout,
    };
    run_ensemble_maximizer(&obj, layout, cfg, q1_seed, extra_seed).map(
        |(raw, x, restarts, converged)| {
            let dec = decode_ensemble(&layout, &x).expect("accepted iterate is decodable");
            PrivateOptimum {
                value: raw.max(0.0),
                raw,
                input: decoded_to_hierarchical(&layout, &dec),
                restarts,
                converged,
            }
        },
    )
}

/// Shared restart loop for the hierarchical-ensemble objectives.
fn run_ensemble_maximizer(
    obj: &dyn Objective,
    layout: EnsembleLayout,
    cfg: &OptimizerConfig,
    q1_seed: Option<&CoherentOptimum>,
    extra_seed: Option<&HierarchicalEnsemble>,
) -> Result<(f64, Vec<f64>, Vec<RestartDiag>, bool)> {
    let spectral_x = match q1_seed {
        Some(opt) => Some(encode_from_state(&layout, opt.input.matrix())?),
        None => None,
    };
    let warm_x = match extra_seed {
        Some(h) => Some(encode_from_hierarchical(&layout, h)?),
        None => None,
    };
    let outcomes = run_jobs(cfg.restarts, cfg.threads, |k| {
        let x0 = if k == 0 {
            if let Some(x) = &spectral_x {
                x.clone()
            } else if let Some(x) = &warm_x {
                x.clone()
            } else {
                encode_random(&layout, &mut Rng::new(cfg.seed + k as u64))
            }
        } else if k == 1 && spectral_x.is_some() && warm_x.is_some() {
            warm_x.clone().expect("checked above")
        } else {
            encode_random(&layout, &mut Rng::new(cfg.seed + k as u64))
        };
        ascend(obj, x0, cfg.max_iters, cfg.tol)
    })?;

    let mut restarts: Vec<RestartDiag> = outcomes
        .iter()
        .enumerate()
        .map(|(k, o)| RestartDiag {
            seed_index: k,
            value: o.value,
            iterations: o.iterations,
            converged: o.converged,
        })
        .collect();

    // Always-evaluated candidates: the untouched seed (when present) and the
    // collapsed trivial input with value exactly zero for diff objectives.
    let mut extra_points: Vec<Vec<f64>> = Vec::new();
    if let Some(x) = &spectral_x {
        extra_points.push(x.clone());
    }
    extra_points.push(encode_trivial(&layout));
    for x in &extra_points {
        restarts.push(RestartDiag {
            seed_index: restarts.len(),
            value: obj.value(x)?,
            iterations: 0,
            converged: true,
        });
    }

    let values: Vec<f64> = restarts.iter().map(|r| r.value).collect();
    let best = best_index(&values);
    let best_x = if best < outcomes.len() {
        outcomes[best].x.clone()
    } else {
        extra_points[best - outcomes.len()].clone()
    };
    let converged = restarts.iter().any(|r| r.converged);
    Ok((values[best], best_x, restarts, converged))
}

/// Maximizes η over hierarchical inputs.
pub fn maximize_eta(n: &KrausChannel, cfg: &OptimizerConfig) -> Result<EtaOptimum> {
    let d = n.d_in();
    cfg.validate(d)?;
    let comp = n.complementary()?;
    let layout = EnsembleLayout {
        d,
        outer: cfg.outer_size,
        inner: cfg.inner_size,
    };
    let obj = EtaObjective {
        b: n,
        e: &comp,
        layout,
    };
    let (raw, x, restarts, converged) = run_ensemble_maximizer(&obj, layout, cfg, None, None)?;
    let dec = decode_ensemble(&layout, &x).expect("accepted iterate is decodable");
    Ok(EtaOptimum {
        value: raw,
        input: decoded_to_hierarchical(&layout, &dec),
        restarts,
        converged,
    })
}

/// Δ between a degradable-style channel and a PD comparison pair given as
/// explicit logical channels `(AB, env)` for both sides.
pub fn compute_delta_pair(
    nd_ab: &KrausChannel,
    nd_env: &KrausChannel,
    npd_ab: &KrausChannel,
    npd_env: &KrausChannel,
    cfg: &OptimizerConfig,
) -> Result<DeltaResult> {
    let d = nd_ab.d_in();
    for (ch, what) in [
        (nd_env, "N_D environment"),
        (npd_ab, "N_PD output"),
        (npd_env, "N_PD environment"),
    ] {
        if ch.d_in() != d {
            let _ = what;
            return Err(Error::DimensionMismatch {
                context: "delta channels input dimension",
                expected: d,
                got: ch.d_in(),
            });
        }
    }
    cfg.validate(d)?;
    let layout = EnsembleLayout {
        d,
        outer: cfg.outer_size,
        inner: cfg.inner_size,
    };

    // Shared-ensemble reading of Δ.
    let delta_obj = CoarseDiffObjective {
        plus: nd_env,
        minus: Some(npd_env),
        layout,
    };
    let (delta_raw, delta_x, _, _) = run_ensemble_maximizer(&delta_obj, layout, cfg, None, None)?;
    let dec = decode_ensemble(&layout, &delta_x).expect("accepted iterate is decodable");
    let shared_input = decoded_to_hierarchical(&layout, &dec);
    let coarse = shared_input.coarse();
    let chi_env_d_at_opt = crate::capacities::holevo_information(nd_env, &coarse)?;
    let chi_env_pd_at_opt = crate::capacities::holevo_information(npd_env, &coarse)?;

    // Capacity-difference reading, both sides maximized independently.
    let q1_d = maximize_coherent_pair(nd_ab, nd_env, cfg)?;
    let p_d = maximize_private_information_pair(nd_ab, nd_env, cfg, Some(&q1_d), None)?;
    let q1_pd = maximize_coherent_pair(npd_ab, npd_env, cfg)?;
    let p_pd = maximize_private_information_pair(
        npd_ab,
        npd_env,
        cfg,
        Some(&q1_pd),
        Some(&p_d.input),
    )?;
    let delta_capacity = p_pd.value - p_d.value;

    Ok(DeltaResult {
        delta: delta_raw.max(0.0),
        delta_capacity,
        readings_gap: (delta_capacity - delta_raw.max(0.0)).abs(),
        p_d,
        p_pd,
        chi_env_d_at_opt,
        chi_env_pd_at_opt,
        shared_input,
    })
}

/// Δ between two concrete channels, both taken with their own complementary.
pub fn compute_delta(
    n_d: &KrausChannel,
    n_pd: &KrausChannel,
    cfg: &OptimizerConfig,
) -> Result<DeltaResult> {
    let e_d = n_d.complementary()?;
    let e_pd = n_pd.complementary()?;
    compute_delta_pair(n_d, &e_d, n_pd, &e_pd, cfg)
}

/// Δ for the PD comparison pair formed from `n_d` by degrading its
/// environment with `dmap` (output side unchanged).
pub fn compute_delta_with_dmap(
    n_d: &KrausChannel,
    dmap: &KrausChannel,
    cfg: &OptimizerConfig,
) -> Result<DeltaResult> {
    let e_d = n_d.complementary()?;
    if dmap.d_in() != e_d.d_out() {
        return Err(Error::DimensionMismatch {
            context: "degradation map input vs environment dimension",
            expected: e_d.d_out(),
            got: dmap.d_in(),
        });
    }
    let e_pd = compose(dmap, &e_d)?;
    compute_delta_pair(n_d, &e_d, n_d, &e_pd, cfg)
}

/// `Q¹(N^⊗n)/n` for `n ≤ 2`; the input dimension of the tensor power must not
/// exceed 16.
pub fn q1_multicopy(n: &KrausChannel, copies: usize, cfg: &OptimizerConfig) -> Result<CoherentOptimum> {
    match copies {
        0 => Err(Error::InvalidParams {
            reason: "copies must be 1 or 2",
        }),
        1 => maximize_coherent_information(n, cfg),
        2 => {
            let d2 = n.d_in() * n.d_in();
            if d2 > 16 {
                return Err(Error::DimensionTooLarge {
                    context: "tensor-power input dimension",
                    got: d2,
                    cap: 16,
                });
            }
            let nn = tensor(n, n);
            let mut opt = maximize_coherent_information(&nn, cfg)?;
            opt.value *= 0.5;
            opt.raw *= 0.5;
            for r in &mut opt.restarts {
                r.value *= 0.5;
            }
            Ok(opt)
        }
        _ => Err(Error::DimensionTooLarge {
            context: "copy count",
            got: copies,
            cap: 2,
        }),
    }
}
