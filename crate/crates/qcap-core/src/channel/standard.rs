//! Constructors for the common channel families used across the crate.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::{c64, ComplexMatrix};
use crate::state::QuantumState;

use super::{ChoiMatrix, KrausChannel};

/// Identity channel on dimension `d`.
pub fn identity(d: usize) -> KrausChannel {
    KrausChannel::trusted(d, d, vec![ComplexMatrix::identity(d)], super::CPTP_TOL)
}

/// Qubit dephasing `{√(1−p) I, √p Z}`.
pub fn dephasing(p: f64) -> Result<KrausChannel> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParams {
            reason: "dephasing probability must be in [0, 1]",
        });
    }
    let k0 = ComplexMatrix::identity(2).scale_re((1.0 - p).sqrt());
    let k1 = ComplexMatrix::diag_real(&[p.sqrt(), -p.sqrt()]);
    KrausChannel::new(2, 2, vec![k0, k1])
}

/// Depolarizing channel `ρ ↦ (1−p)ρ + p I/d` via Heisenberg-Weyl operators.
pub fn depolarizing(d: usize, p: f64) -> Result<KrausChannel> {
    if d < 2 {
        return Err(Error::InvalidParams {
            reason: "depolarizing needs dimension >= 2",
        });
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParams {
            reason: "depolarizing probability must be in [0, 1]",
        });
    }
    let dd = d as f64;
    let omega = core::f64::consts::TAU / dd;
    let mut ops = Vec::with_capacity(d * d);
    for a in 0..d {
        for b in 0..d {
            // W_{ab} = X^a Z^b with X|j⟩ = |j+1 mod d⟩, Z|j⟩ = ω^j |j⟩.
            let weight = if a == 0 && b == 0 {
                (1.0 - p + p / (dd * dd)).sqrt()
            } else {
                p.sqrt() / dd
            };
            let w = ComplexMatrix::from_fn(d, d, |o, i| {
                if o == (i + a) % d {
                    let phase = omega * (b * i) as f64;
                    c64(phase.cos(), phase.sin()) * weight
                } else {
                    c64(0.0, 0.0)
                }
            });
            ops.push(w);
        }
    }
    KrausChannel::new(d, d, ops)
}

/// Qubit amplitude damping with decay probability `γ`.
pub fn amplitude_damping(gamma: f64) -> Result<KrausChannel> {
    if !(0.0..=1.0).contains(&gamma) {
        return Err(Error::InvalidParams {
            reason: "damping parameter must be in [0, 1]",
        });
    }
    let k0 = ComplexMatrix::diag_real(&[1.0, (1.0 - gamma).sqrt()]);
    let mut k1 = ComplexMatrix::zeros(2, 2);
    k1.set(0, 1, c64(gamma.sqrt(), 0.0));
    KrausChannel::new(2, 2, vec![k0, k1])
}

/// Erasure channel on dimension `d`: with probability `p` the input is
/// replaced by a flag state `|d⟩`; output dimension is `d+1`.
pub fn erasure(p: f64, d: usize) -> Result<KrausChannel> {
    if d < 2 {
        return Err(Error::InvalidParams {
            reason: "erasure needs dimension >= 2",
        });
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParams {
            reason: "erasure probability must be in [0, 1]",
        });
    }
    let keep = ComplexMatrix::from_fn(d + 1, d, |o, i| {
        if o == i {
            c64((1.0 - p).sqrt(), 0.0)
        } else {
            c64(0.0, 0.0)
        }
    });
    let mut ops = vec![keep];
    for j in 0..d {
        let mut k = ComplexMatrix::zeros(d + 1, d);
        k.set(d, j, c64(p.sqrt(), 0.0));
        ops.push(k);
    }
    KrausChannel::new(d, d + 1, ops)
}

/// Trace-and-replace channel: discards the input and prepares `|0⟩⟨0|` on a
/// `d_out`-dimensional output.
pub fn replace(d_in: usize, d_out: usize) -> Result<KrausChannel> {
    if d_in == 0 || d_out == 0 {
        return Err(Error::InvalidParams {
            reason: "replace needs positive dimensions",
        });
    }
    let ops = (0..d_in)
        .map(|i| {
            let mut k = ComplexMatrix::zeros(d_out, d_in);
            k.set(0, i, c64(1.0, 0.0));
            k
        })
        .collect();
    KrausChannel::new(d_in, d_out, ops)
}

/// Trace-and-replace with an arbitrary fixed replacement state.
pub fn replace_with_state(d_in: usize, target: &QuantumState) -> Result<KrausChannel> {
    let eig = crate::linalg::herm_eig(&target.matrix().hermitize())?;
    let d_out = target.dim();
    let mut ops = Vec::new();
    for (k, &lam) in eig.eigenvalues.iter().enumerate() {
        if lam <= 1e-12 {
            continue;
        }
        let col = eig.eigenvectors.column(k);
        for i in 0..d_in {
            let mut op = ComplexMatrix::zeros(d_out, d_in);
            for (o, &amp) in col.iter().enumerate() {
                op.set(o, i, amp * lam.sqrt());
            }
            ops.push(op);
        }
    }
    KrausChannel::new(d_in, d_out, ops)
}

/// Qutrit channel whose complementary channel has the tiles bound-entangled
/// state (after a local marginal filter) as its normalized Choi state.
///
/// The construction is validated at runtime: the Choi must be CPTP, and the
/// resulting complementary Choi state must be PPT yet realignment-detected
/// entangled. Failure of any check is reported as `ConstructionFailed`.
pub fn tiles_complement() -> Result<KrausChannel> {
    let rho = crate::entanglement::tiles_state();
    // Filter the A marginal to the identity so the state becomes a valid
    // unnormalized Choi matrix of a trace-preserving map.
    let sigma = rho
        .matrix()
        .partial_trace((3, 3), crate::linalg::Subsystem::B)
        .expect("tiles state is 3x3-bipartite");
    let inv_half = crate::linalg::herm_map(&sigma, |x| {
        if x > 1e-12 {
            1.0 / x.sqrt()
        } else {
            0.0
        }
    })?;
    let f = inv_half.kron(&ComplexMatrix::identity(3));
    let j = &(&f * rho.matrix()) * &f.dagger();
    let choi = ChoiMatrix::new(j, 3, 3).map_err(|_| Error::ConstructionFailed {
        reason: "filtered tiles state is not a CPTP Choi matrix",
        value: 0.0,
    })?;
    let to_env = choi.to_kraus().map_err(|_| Error::ConstructionFailed {
        reason: "filtered tiles Choi has no Kraus decomposition",
        value: 0.0,
    })?;
    let channel = to_env.complementary()?;
    let evidence = crate::entanglement::classify_complementary(&channel, 1e-9)?;
    if evidence.class != crate::entanglement::ComplementaryClass::PptEntangled {
        return Err(Error::ConstructionFailed {
            reason: "complementary Choi state is not PPT-entangled",
            value: evidence.realignment_value,
        });
    }
    Ok(channel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::compose;
    use crate::random::Rng;

    #[test]
    fn identity_channel() {
        let ch = identity(2);
        assert_eq!(ch.num_operators(), 1);
        assert!(ch.trace_preservation_residual() < 1e-15);
    }

    #[test]
    fn dephasing_kraus_form() {
        // {√0.9 I, √0.1 Z}, checked through its action on Bloch components.
        let ch = dephasing(0.1).unwrap();
        let mut rng = Rng::new(50);
        let rho = rng.density_matrix(2, 2);
        let out = ch.apply_matrix(&rho);
        // Diagonal untouched, coherences scaled by 1-2p.
        assert!((out.get(0, 0) - rho.get(0, 0)).norm() < 1e-12);
        assert!((out.get(0, 1) - rho.get(0, 1) * 0.8).norm() < 1e-12);
    }

    #[test]
    fn erasure_structure() {
        let ch = erasure(0.5, 2).unwrap();
        assert_eq!(ch.d_out(), 3);
        assert_eq!(ch.num_operators(), 3);
        let rho = QuantumState::maximally_mixed(2);
        let out = ch.apply(&rho).unwrap();
        assert!((out.matrix().get(2, 2).re - 0.5).abs() < 1e-12);
    }

    #[test]
    fn replace_discards_input() {
        let ch = replace(3, 2).unwrap();
        let mut rng = Rng::new(51);
        let rho = rng.density_matrix(3, 2);
        let out = ch.apply_matrix(&rho);
        assert!((out.get(0, 0).re - 1.0).abs() < 1e-12);
        assert!(out.get(1, 1).norm() < 1e-12);
    }

    #[test]
    fn replace_with_mixed_state_target() {
        let target = QuantumState::maximally_mixed(2);
        let ch = replace_with_state(3, &target).unwrap();
        let mut rng = Rng::new(52);
        let rho = rng.density_matrix(3, 3);
        let out = ch.apply_matrix(&rho);
        assert!((&out - target.matrix()).frobenius_norm() < 1e-12);
    }

    #[test]
    fn amplitude_damping_composition_law() {
        // AD(η₂) ∘ AD(η₁) = AD(1 − (1−η₁)(1−η₂)).
        let (g1, g2) = (0.3, 0.25);
        let lhs = compose(
            &amplitude_damping(g2).unwrap(),
            &amplitude_damping(g1).unwrap(),
        )
        .unwrap();
        let rhs = amplitude_damping(1.0 - (1.0 - g1) * (1.0 - g2)).unwrap();
        assert!(lhs.choi_distance(&rhs).unwrap() < 1e-12);
    }

    #[test]
    fn depolarizing_qutrit_action() {
        let p = 0.4;
        let ch = depolarizing(3, p).unwrap();
        let mut rng = Rng::new(53);
        let rho = rng.density_matrix(3, 3);
        let got = ch.apply_matrix(&rho);
        let expect =
            &rho.scale_re(1.0 - p) + &ComplexMatrix::identity(3).scale_re(p / 3.0);
        assert!((&got - &expect).frobenius_norm() < 1e-12);
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        assert!(dephasing(1.5).is_err());
        assert!(erasure(-0.1, 2).is_err());
        assert!(depolarizing(1, 0.5).is_err());
        assert!(amplitude_damping(2.0).is_err());
    }

    #[test]
    fn tiles_complement_constructs_and_validates() {
        let ch = tiles_complement().unwrap();
        assert_eq!(ch.d_in(), 3);
        assert!(ch.trace_preservation_residual() < 1e-9);
        let comp = ch.complementary().unwrap();
        assert_eq!(comp.d_out(), 3);
    }
}
