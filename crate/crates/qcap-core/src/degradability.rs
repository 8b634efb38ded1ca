//! Degradability certification by convex feasibility over CPTP connecting
//! maps.
//!
//! The core problem is `min_M ‖Choi(M ∘ source) − Choi(target)‖_F` over CPTP
//! `M`, which is convex in `Choi(M)` because `Choi(M ∘ source)` is linear in
//! it. It is solved by projected gradient with alternating projections onto
//! the PSD cone (eigenvalue clipping) and the trace-preserving affine subspace
//! (closed-form output-marginal correction), with a fixed `1/L` step estimated
//! by power iteration.
//!
//! Verdicts are one-sided: feasibility is certified by exhibiting a map;
//! `InfeasibleAtTolerance` means "not found", never "does not exist".

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::channel::{compose, ChoiMatrix, KrausChannel};
use crate::error::{Error, Result};
use crate::linalg::{herm_eigvals, psd_project, ComplexMatrix, Subsystem};
use crate::random::Rng;

/// Default Frobenius-residual tolerance on unnormalized Choi matrices.
pub const DEFAULT_TOL: f64 = 1e-6;
/// Default iteration cap for the projected-gradient solver.
pub const DEFAULT_MAX_ITERS: usize = 20_000;
/// Default restart count for the bilinear degradation-map search.
pub const DEFAULT_RESTARTS: usize = 8;

const SEARCH_SEED: u64 = 0x5eed;
const CERT_CHOI_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Degradable,
    AntiDegradable,
    PdFeasible,
    InfeasibleAtTolerance,
}

impl Verdict {
    pub fn feasible(self) -> bool {
        self != Verdict::InfeasibleAtTolerance
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Degradable => "degradable",
            Verdict::AntiDegradable => "anti-degradable",
            Verdict::PdFeasible => "pd-feasible",
            Verdict::InfeasibleAtTolerance => "infeasible-at-tolerance",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolverDiagnostics {
    /// Feasible-point residual after each projected-gradient iteration.
    pub residual_history: Vec<f64>,
    /// Times the step had to be damped to keep the residual non-increasing
    /// past the warm-up phase.
    pub monotonicity_safeguards: usize,
    pub step_size: f64,
    pub lipschitz_estimate: f64,
}

#[derive(Debug, Clone)]
pub struct DegradabilityCertificate {
    pub verdict: Verdict,
    /// Choi matrix of the connecting map found (D or T).
    pub connecting_map: ChoiMatrix,
    /// Choi matrix of the degradation map `D^{E→E'}`, when one is part of the
    /// certified statement.
    pub degradation_map: Option<ChoiMatrix>,
    /// Frobenius norm of the Choi difference at the returned map.
    pub residual: f64,
    pub iterations: usize,
    pub tolerance: f64,
    pub diagnostics: SolverDiagnostics,
}

#[derive(Debug, Clone)]
pub struct FeasibilityOptions {
    pub tol: f64,
    pub max_iters: usize,
    /// Optional initial Choi matrix for the connecting map; defaults to the
    /// maximally mixing channel.
    pub init: Option<ComplexMatrix>,
}

impl Default for FeasibilityOptions {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            max_iters: DEFAULT_MAX_ITERS,
            init: None,
        }
    }
}

/// The linear map `Choi(M) ↦ Choi(M ∘ source)`, precomputed from the source
/// channel's Choi blocks `S_ij = source(|i⟩⟨j|)`.
struct SourceMap {
    d_in: usize,
    d_mid: usize,
    blocks: Vec<ComplexMatrix>,
}

impl SourceMap {
    fn new(source: &KrausChannel) -> Self {
        let (da, db) = (source.d_in(), source.d_out());
        let mut blocks = Vec::with_capacity(da * da);
        for i in 0..da {
            for j in 0..da {
                let mut block = ComplexMatrix::zeros(db, db);
                for k in source.operators() {
                    let ci = k.column(i);
                    let cj = k.column(j);
                    block = &block + &ComplexMatrix::outer(&ci, &cj);
                }
                blocks.push(block);
            }
        }
        Self {
            d_in: da,
            d_mid: db,
            blocks,
        }
    }

    /// `Φ(X)[(i,c),(j,c')] = Σ_kl S_ij[k,l] X[(k,c),(l,c')]`.
    fn apply(&self, x: &ComplexMatrix, d_out: usize) -> ComplexMatrix {
        let (da, db, dc) = (self.d_in, self.d_mid, d_out);
        let mut y = ComplexMatrix::zeros(da * dc, da * dc);
        for i in 0..da {
            for j in 0..da {
                let s = &self.blocks[i * da + j];
                for k in 0..db {
                    for l in 0..db {
                        let coeff = s.get(k, l);
                        if coeff.norm_sqr() < 1e-300 {
                            continue;
                        }
                        for c in 0..dc {
                            for cp in 0..dc {
                                let v = y.get(i * dc + c, j * dc + cp)
                                    + coeff * x.get(k * dc + c, l * dc + cp);
                                y.set(i * dc + c, j * dc + cp, v);
                            }
                        }
                    }
                }
            }
        }
        y
    }

    /// Adjoint `Φ†(Y)[(k,c),(l,c')] = Σ_ij conj(S_ij[k,l]) Y[(i,c),(j,c')]`.
    fn adjoint(&self, y: &ComplexMatrix, d_out: usize) -> ComplexMatrix {
        let (da, db, dc) = (self.d_in, self.d_mid, d_out);
        let mut x = ComplexMatrix::zeros(db * dc, db * dc);
        for i in 0..da {
            for j in 0..da {
                let s = &self.blocks[i * da + j];
                for k in 0..db {
                    for l in 0..db {
                        let coeff = s.get(k, l).conj();
                        if coeff.norm_sqr() < 1e-300 {
                            continue;
                        }
                        for c in 0..dc {
                            for cp in 0..dc {
                                let v = x.get(k * dc + c, l * dc + cp)
                                    + coeff * y.get(i * dc + c, j * dc + cp);
                                x.set(k * dc + c, l * dc + cp, v);
                            }
                        }
                    }
                }
            }
        }
        x
    }

    /// Largest eigenvalue of `Φ†Φ` by power iteration.
    fn lipschitz(&self, d_out: usize) -> f64 {
        let n = self.d_mid * d_out;
        let mut rng = Rng::new(0x11f5);
        let mut v = rng.hermitian(n);
        let norm = v.frobenius_norm();
        v = v.scale_re(1.0 / norm.max(1e-300));
        let mut lambda = 1.0;
        for _ in 0..80 {
            let av = self.adjoint(&self.apply(&v, d_out), d_out);
            let norm = av.frobenius_norm();
            if norm < 1e-280 {
                break;
            }
            lambda = norm;
            v = av.scale_re(1.0 / norm);
        }
        lambda
    }
}

/// Orthogonal projection onto `{J : Tr_out J = I}` (input⊗output ordering).
fn tp_project(x: &ComplexMatrix, d_in: usize, d_out: usize) -> ComplexMatrix {
    let marg = x
        .partial_trace((d_in, d_out), Subsystem::A)
        .expect("solver matrices have product dimension");
    let defect = &ComplexMatrix::identity(d_in) - &marg;
    x + &defect
        .scale_re(1.0 / d_out as f64)
        .kron(&ComplexMatrix::identity(d_out))
}

/// Dykstra-style polish onto the intersection of the PSD cone and the TP
/// affine subspace.
fn project_cptp(x: &ComplexMatrix, d_in: usize, d_out: usize) -> Result<ComplexMatrix> {
    let mut y = x.hermitize();
    let mut correction = ComplexMatrix::zeros(y.rows(), y.cols());
    for _ in 0..300 {
        let z = psd_project(&(&y + &correction))?;
        correction = &(&y + &correction) - &z;
        y = tp_project(&z, d_in, d_out);
        let min_eig = herm_eigvals(&y.hermitize())?
            .first()
            .copied()
            .unwrap_or(0.0);
        if min_eig > -1e-12 {
            break;
        }
    }
    Ok(y)
}

struct ConnectingSolve {
    choi: ComplexMatrix,
    residual: f64,
    iterations: usize,
    diagnostics: SolverDiagnostics,
}

/// Projected-gradient least squares for `min ‖Φ(X) − target‖_F` over CPTP `X`.
fn solve_connecting(
    map: &SourceMap,
    target: &ComplexMatrix,
    d_out: usize,
    opts: &FeasibilityOptions,
) -> Result<ConnectingSolve> {
    let d_mid = map.d_mid;
    let lipschitz = map.lipschitz(d_out).max(1e-30);
    let step = 1.0 / (2.0 * lipschitz * 1.01);

    let mut x = match &opts.init {
        Some(init) => project_cptp(init, d_mid, d_out)?,
        None => ComplexMatrix::identity(d_mid)
            .scale_re(1.0 / d_out as f64)
            .kron(&ComplexMatrix::identity(d_out)),
    };
    let mut residual = (&map.apply(&x, d_out) - target).frobenius_norm();
    let mut history = Vec::with_capacity(opts.max_iters.min(4096) + 1);
    history.push(residual);
    let mut safeguards = 0usize;
    let mut iterations = 0usize;

    let stop_residual = (opts.tol * 1e-4).max(1e-13);
    for iter in 0..opts.max_iters {
        if residual <= stop_residual {
            break;
        }
        // Stall detection on the feasible-residual sequence.
        if iter >= 200 && iter % 50 == 0 {
            let back = history[history.len() - 100];
            if back - residual < 1e-7 * residual.max(1e-30) {
                break;
            }
        }
        let diff = &map.apply(&x, d_out) - target;
        let grad = map.adjoint(&diff, d_out).scale_re(2.0);
        let mut local_step = step;
        let mut accepted = false;
        for _damp in 0..60 {
            let candidate = tp_project(
                &psd_project(&(&x - &grad.scale_re(local_step)).hermitize())?,
                d_mid,
                d_out,
            );
            let cand_res = (&map.apply(&candidate, d_out) - target).frobenius_norm();
            // Allow overshoot during warm-up; afterwards keep the sequence
            // non-increasing by damping the step.
            if iter < 10 || cand_res <= residual * (1.0 + 1e-12) {
                x = candidate;
                residual = cand_res;
                accepted = true;
                break;
            }
            local_step *= 0.5;
            safeguards += 1;
        }
        if !accepted {
            break;
        }
        iterations = iter + 1;
        history.push(residual);
    }

    // Land exactly (to numerical precision) on the CPTP set.
    let polished = project_cptp(&x, d_mid, d_out)?;
    let final_residual = (&map.apply(&polished, d_out) - target).frobenius_norm();
    Ok(ConnectingSolve {
        choi: polished,
        residual: final_residual,
        iterations,
        diagnostics: SolverDiagnostics {
            residual_history: history,
            monotonicity_safeguards: safeguards,
            step_size: step,
            lipschitz_estimate: lipschitz,
        },
    })
}

fn certificate_from_solve(
    solve: ConnectingSolve,
    d_mid: usize,
    d_out: usize,
    tol: f64,
    success: Verdict,
    degradation_map: Option<ChoiMatrix>,
) -> DegradabilityCertificate {
    let feasible = solve.residual <= tol;
    let choi = ChoiMatrix::with_tolerance(solve.choi.clone(), d_mid, d_out, CERT_CHOI_TOL);
    let (verdict, connecting) = match (feasible, choi) {
        (true, Ok(c)) => (success, c),
        (feasible, choi) => {
            let c = choi.unwrap_or_else(|_| {
                ChoiMatrix::trusted(solve.choi.clone(), d_mid, d_out, CERT_CHOI_TOL)
            });
            let v = if feasible {
                success
            } else {
                Verdict::InfeasibleAtTolerance
            };
            (v, c)
        }
    };
    DegradabilityCertificate {
        verdict: if feasible { verdict } else { Verdict::InfeasibleAtTolerance },
        connecting_map: connecting,
        degradation_map,
        residual: solve.residual,
        iterations: solve.iterations,
        tolerance: tol,
        diagnostics: solve.diagnostics,
    }
}

/// Finds a CPTP map `M` with `M ∘ source ≈ target`, reporting the best map
/// found and its residual. Deterministic given inputs and iteration budget.
pub fn find_connecting_map(
    source: &KrausChannel,
    target: &KrausChannel,
    tol: f64,
    max_iters: usize,
) -> Result<DegradabilityCertificate> {
    find_connecting_map_with(
        source,
        target,
        &FeasibilityOptions {
            tol,
            max_iters,
            init: None,
        },
    )
}

/// As [`find_connecting_map`], with control over the initial point.
pub fn find_connecting_map_with(
    source: &KrausChannel,
    target: &KrausChannel,
    opts: &FeasibilityOptions,
) -> Result<DegradabilityCertificate> {
    if source.d_in() != target.d_in() {
        return Err(Error::DimensionMismatch {
            context: "source/target input dimension",
            expected: source.d_in(),
            got: target.d_in(),
        });
    }
    let map = SourceMap::new(source);
    let solve = solve_connecting(&map, target.to_choi().matrix(), target.d_out(), opts)?;
    Ok(certificate_from_solve(
        solve,
        source.d_out(),
        target.d_out(),
        opts.tol,
        Verdict::PdFeasible,
        None,
    ))
}

/// Certifies `D ∘ N_AB = N_AE` feasibility for some CPTP `D`.
pub fn is_degradable(n: &KrausChannel, tol: f64) -> Result<DegradabilityCertificate> {
    let comp = n.complementary()?;
    let map = SourceMap::new(n);
    let solve = solve_connecting(
        &map,
        comp.to_choi().matrix(),
        comp.d_out(),
        &FeasibilityOptions {
            tol,
            ..FeasibilityOptions::default()
        },
    )?;
    Ok(certificate_from_solve(
        solve,
        n.d_out(),
        comp.d_out(),
        tol,
        Verdict::Degradable,
        None,
    ))
}

/// Certifies the reversed direction `M ∘ N_AE = N_AB`.
pub fn is_antidegradable(n: &KrausChannel, tol: f64) -> Result<DegradabilityCertificate> {
    let comp = n.complementary()?;
    let map = SourceMap::new(&comp);
    let solve = solve_connecting(
        &map,
        n.to_choi().matrix(),
        n.d_out(),
        &FeasibilityOptions {
            tol,
            ..FeasibilityOptions::default()
        },
    )?;
    Ok(certificate_from_solve(
        solve,
        comp.d_out(),
        n.d_out(),
        tol,
        Verdict::AntiDegradable,
        None,
    ))
}

/// Certifies `T ∘ N_AB = D ∘ N_AE` feasibility for the supplied degradation
/// map `D` on the environment.
pub fn is_partially_degradable(
    n: &KrausChannel,
    degradation: &KrausChannel,
    tol: f64,
) -> Result<DegradabilityCertificate> {
    let comp = n.complementary()?;
    if degradation.d_in() != comp.d_out() {
        return Err(Error::DimensionMismatch {
            context: "degradation map input vs environment dimension",
            expected: comp.d_out(),
            got: degradation.d_in(),
        });
    }
    let degraded = compose(degradation, &comp)?;
    let map = SourceMap::new(n);
    let solve = solve_connecting(
        &map,
        degraded.to_choi().matrix(),
        degraded.d_out(),
        &FeasibilityOptions {
            tol,
            ..FeasibilityOptions::default()
        },
    )?;
    Ok(certificate_from_solve(
        solve,
        n.d_out(),
        degraded.d_out(),
        tol,
        Verdict::PdFeasible,
        Some(degradation.to_choi()),
    ))
}

/// Heuristic search for a degradation map `D^{E→E'}` making the channel
/// partially degradable, by alternating convex solves in `T` (for fixed `D`)
/// and `D` (for fixed `T`), multi-restarted from random CPTP initializations.
///
/// `InfeasibleAtTolerance` means "not found", never "does not exist".
pub fn search_degradation_map(
    n: &KrausChannel,
    d_env_out: usize,
    tol: f64,
    restarts: usize,
    max_iters: usize,
) -> Result<DegradabilityCertificate> {
    if restarts == 0 {
        return Err(Error::InvalidParams {
            reason: "search needs at least one restart",
        });
    }
    let comp = n.complementary()?;
    let d_env = comp.d_out();
    let map_ab = SourceMap::new(n);
    let map_ae = SourceMap::new(&comp);
    let inner_iters = (max_iters / 20).max(200);

    let mut best: Option<(f64, ComplexMatrix, ComplexMatrix, usize, SolverDiagnostics)> = None;
    for restart in 0..restarts {
        let mut d_choi = if restart == 0 {
            initial_degradation(d_env, d_env_out)
        } else {
            Rng::new(SEARCH_SEED + restart as u64).choi_cptp(d_env, d_env_out)
        };
        let mut t_init: Option<ComplexMatrix> = None;
        let mut round_res = f64::INFINITY;
        let mut total_iters = 0usize;
        let mut last_diag: Option<SolverDiagnostics> = None;
        let mut t_choi = ComplexMatrix::zeros(n.d_out() * d_env_out, n.d_out() * d_env_out);
        for _round in 0..40 {
            let target_t = map_ae.apply(&d_choi, d_env_out);
            let solve_t = solve_connecting(
                &map_ab,
                &target_t,
                d_env_out,
                &FeasibilityOptions {
                    tol,
                    max_iters: inner_iters,
                    init: t_init.take(),
                },
            )?;
            t_choi = solve_t.choi;
            total_iters += solve_t.iterations;

            let target_d = map_ab.apply(&t_choi, d_env_out);
            let solve_d = solve_connecting(
                &map_ae,
                &target_d,
                d_env_out,
                &FeasibilityOptions {
                    tol,
                    max_iters: inner_iters,
                    init: Some(d_choi.clone()),
                },
            )?;
            d_choi = solve_d.choi;
            total_iters += solve_d.iterations;
            let res = solve_d.residual;
            last_diag = Some(solve_d.diagnostics);
            t_init = Some(t_choi.clone());
            if res <= tol * 0.5 || round_res - res < 1e-4 * res.max(1e-30) {
                round_res = res;
                break;
            }
            round_res = res;
        }
        let diag = last_diag.expect("at least one round runs");
        let better = match &best {
            None => true,
            Some((r, ..)) => round_res < *r,
        };
        if better {
            best = Some((round_res, t_choi, d_choi, total_iters, diag));
        }
    }

    let (residual, t_choi, d_choi, iterations, diagnostics) = best.expect("restarts >= 1");
    let feasible = residual <= tol;
    let degradation = ChoiMatrix::with_tolerance(d_choi.clone(), d_env, d_env_out, CERT_CHOI_TOL)
        .unwrap_or_else(|_| ChoiMatrix::trusted(d_choi, d_env, d_env_out, CERT_CHOI_TOL));
    let connecting =
        ChoiMatrix::with_tolerance(t_choi.clone(), n.d_out(), d_env_out, CERT_CHOI_TOL)
            .unwrap_or_else(|_| ChoiMatrix::trusted(t_choi, n.d_out(), d_env_out, CERT_CHOI_TOL));
    Ok(DegradabilityCertificate {
        verdict: if feasible {
            Verdict::PdFeasible
        } else {
            Verdict::InfeasibleAtTolerance
        },
        connecting_map: connecting,
        degradation_map: Some(degradation),
        residual,
        iterations,
        tolerance: tol,
        diagnostics,
    })
}

fn initial_degradation(d_env: usize, d_env_out: usize) -> ComplexMatrix {
    if d_env == d_env_out {
        crate::channel::standard::identity(d_env).to_choi().matrix().clone()
    } else {
        crate::channel::standard::replace(d_env, d_env_out)
            .expect("positive dimensions")
            .to_choi()
            .matrix()
            .clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::standard;

    #[test]
    fn identity_connects_to_itself_exactly() {
        let id = standard::identity(2);
        let cert = find_connecting_map(&id, &id, 1e-6, 5000).unwrap();
        assert!(cert.verdict.feasible());
        assert!(cert.residual <= 1e-10, "residual {}", cert.residual);
        // The found map acts as the identity channel.
        let m = cert.connecting_map.to_kraus().unwrap();
        assert!(m.choi_distance(&id).unwrap() < 1e-5);
    }

    #[test]
    fn amplitude_damping_quarter_is_degradable_with_closed_form_oracle() {
        let gamma = 0.25;
        let n = standard::amplitude_damping(gamma).unwrap();
        // Closed form: the degrading map is amplitude damping with parameter
        // (1-2γ)/(1-γ); composing it after the channel reproduces the
        // complementary channel exactly.
        let d_oracle = standard::amplitude_damping((1.0 - 2.0 * gamma) / (1.0 - gamma)).unwrap();
        let composed = compose(&d_oracle, &n).unwrap();
        let comp = n.complementary().unwrap();
        assert!(composed.choi_distance(&comp).unwrap() < 1e-12);

        let cert = is_degradable(&n, 1e-6).unwrap();
        assert_eq!(cert.verdict, Verdict::Degradable);
        assert!(cert.residual <= 1e-6, "residual {}", cert.residual);
    }

    #[test]
    fn amplitude_damping_extreme_is_not_degradable() {
        let n = standard::amplitude_damping(0.8).unwrap();
        let cert = is_degradable(&n, 1e-6).unwrap();
        assert_eq!(cert.verdict, Verdict::InfeasibleAtTolerance);
        assert!(cert.residual > 1e-6);
    }

    #[test]
    fn identity_is_degradable_but_not_antidegradable() {
        let id = standard::identity(2);
        let cert = is_degradable(&id, 1e-6).unwrap();
        assert_eq!(cert.verdict, Verdict::Degradable);
        let anti = is_antidegradable(&id, 1e-6).unwrap();
        assert_eq!(anti.verdict, Verdict::InfeasibleAtTolerance);
        assert!(anti.residual > 1.0);
    }

    #[test]
    fn half_erasure_is_both_degradable_and_antidegradable() {
        let n = standard::erasure(0.5, 2).unwrap();
        let deg = is_degradable(&n, 1e-6).unwrap();
        assert_eq!(deg.verdict, Verdict::Degradable, "residual {}", deg.residual);
        let anti = is_antidegradable(&n, 1e-6).unwrap();
        assert_eq!(anti.verdict, Verdict::AntiDegradable, "residual {}", anti.residual);
    }

    #[test]
    fn amplitude_damping_three_quarters_is_antidegradable_with_oracle() {
        let gamma: f64 = 0.75;
        let n = standard::amplitude_damping(gamma).unwrap();
        // From the complementary side the closed-form map has parameter
        // (2γ-1)/γ: composing after N_AE (≅ AD(1-γ)) reproduces N_AB.
        let m_oracle = standard::amplitude_damping((2.0 * gamma - 1.0) / gamma).unwrap();
        let comp = n.complementary().unwrap();
        let composed = compose(&m_oracle, &comp).unwrap();
        assert!(composed.choi_distance(&n).unwrap() < 1e-12);

        let cert = is_antidegradable(&n, 1e-6).unwrap();
        assert_eq!(cert.verdict, Verdict::AntiDegradable);
        assert!(cert.residual <= 1e-6);
    }

    #[test]
    fn partial_degradability_with_identity_reduces_to_degradability() {
        let n = standard::amplitude_damping(0.25).unwrap();
        let d_env = n.complementary().unwrap().d_out();
        let ident = standard::identity(d_env);
        let pd = is_partially_degradable(&n, &ident, 1e-6).unwrap();
        assert_eq!(pd.verdict, Verdict::PdFeasible);
        assert!(pd.degradation_map.is_some());

        // Anti-degradable-but-not-degradable channel stays infeasible.
        let bad = standard::amplitude_damping(0.8).unwrap();
        let d_env2 = bad.complementary().unwrap().d_out();
        let pd2 = is_partially_degradable(&bad, &standard::identity(d_env2), 1e-6).unwrap();
        assert_eq!(pd2.verdict, Verdict::InfeasibleAtTolerance);
    }

    #[test]
    fn trace_and_replace_degradation_is_always_feasible() {
        let n = standard::amplitude_damping(0.8).unwrap();
        let d_env = n.complementary().unwrap().d_out();
        let d = standard::replace(d_env, 2).unwrap();
        let pd = is_partially_degradable(&n, &d, 1e-6).unwrap();
        assert_eq!(pd.verdict, Verdict::PdFeasible, "residual {}", pd.residual);
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let a = standard::identity(2);
        let b = standard::identity(3);
        assert!(find_connecting_map(&a, &b, 1e-6, 100).is_err());
        let d_wrong = standard::identity(5);
        assert!(is_partially_degradable(&a, &d_wrong, 1e-6).is_err());
    }

    #[test]
    fn monotone_after_warmup_and_restart_consistency() {
        let n = standard::amplitude_damping(0.35).unwrap();
        let comp = n.complementary().unwrap();
        let base = find_connecting_map(&n, &comp, 1e-6, 4000).unwrap();
        for w in base.diagnostics.residual_history.windows(2).skip(10) {
            assert!(w[1] <= w[0] * (1.0 + 1e-9), "history must be non-increasing");
        }
        // Convexity: random restarts land on the same residual.
        let mut rng = Rng::new(99);
        for _ in 0..5 {
            let init = rng.choi_cptp(n.d_out(), comp.d_out());
            let cert = find_connecting_map_with(
                &n,
                &comp,
                &FeasibilityOptions {
                    tol: 1e-6,
                    max_iters: 4000,
                    init: Some(init),
                },
            )
            .unwrap();
            assert!(
                (cert.residual - base.residual).abs() < 1e-5,
                "restart residual {} vs {}",
                cert.residual,
                base.residual
            );
        }
    }

    #[test]
    fn degradable_composition_reproduces_complementary() {
        let n = standard::amplitude_damping(0.2).unwrap();
        let tol = 1e-6;
        let cert = is_degradable(&n, tol).unwrap();
        assert_eq!(cert.verdict, Verdict::Degradable);
        let d = cert.connecting_map.to_kraus().unwrap();
        let composed = compose(&d, &n).unwrap();
        let comp = n.complementary().unwrap();
        assert!(composed.choi_distance(&comp).unwrap() <= 2.0 * tol);
    }

    #[test]
    fn search_finds_identity_class_solution_for_degradable_channel() {
        let n = standard::amplitude_damping(0.25).unwrap();
        let d_env = n.complementary().unwrap().d_out();
        let cert = search_degradation_map(&n, d_env, 1e-6, 2, 4000).unwrap();
        assert_eq!(cert.verdict, Verdict::PdFeasible, "residual {}", cert.residual);
        assert!(cert.degradation_map.is_some());
    }

    #[test]
    fn search_with_trivial_environment_is_always_feasible() {
        let n = standard::amplitude_damping(0.8).unwrap();
        let cert = search_degradation_map(&n, 1, 1e-6, 1, 2000).unwrap();
        assert_eq!(cert.verdict, Verdict::PdFeasible);
        assert!(cert.residual <= 1e-8);
    }

    #[test]
    fn search_result_is_consistent_with_direct_check() {
        let mut rng = Rng::new(123);
        let n = rng.kraus_channel(3, 3, 2);
        let cert = search_degradation_map(&n, 2, 1e-6, 2, 2000).unwrap();
        let d = cert
            .degradation_map
            .as_ref()
            .expect("search returns a degradation map")
            .to_kraus()
            .unwrap();
        let direct = is_partially_degradable(&n, &d, 1e-6).unwrap();
        assert!(
            direct.residual <= cert.residual + 1e-6,
            "direct {} vs search {}",
            direct.residual,
            cert.residual
        );
    }
}
