//! Information quantities of channels — coherent information, Holevo
//! quantities, private information, η, Δ — and their multi-restart maximizers.
//!
//! Every maximized quantity is a lower bound ("best found"); the optimizers
//! are local ascent with deterministic restart seeding, never certified
//! global.

mod optimize;

pub use optimize::{
    compute_delta, compute_delta_pair, compute_delta_with_dmap, maximize_coherent_information,
    maximize_coherent_pair, maximize_eta, maximize_private_information,
    maximize_private_information_pair, q1_multicopy, CoherentOptimum, DeltaResult, EtaOptimum,
    OptimizerConfig, PrivateOptimum, RestartDiag,
};

use crate::channel::KrausChannel;
use crate::error::{Error, Result};
use crate::linalg::entropy_of_matrix;
use crate::state::{Ensemble, HierarchicalEnsemble, QuantumState};

/// Which logical channel a conditional quantity is taken through.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// The channel output (Bob).
    B,
    /// The environment (Eve), i.e. the complementary channel.
    E,
}

fn check_input_dim(n: &KrausChannel, dim: usize) -> Result<()> {
    if n.d_in() != dim {
        return Err(Error::DimensionMismatch {
            context: "channel input dimension",
            expected: n.d_in(),
            got: dim,
        });
    }
    Ok(())
}

/// Coherent information `I_coh(ρ, N) = S(B) − S(E)` in bits.
pub fn coherent_information(n: &KrausChannel, rho: &QuantumState) -> Result<f64> {
    check_input_dim(n, rho.dim())?;
    let comp = n.complementary()?;
    let sb = entropy_of_matrix(&n.apply_matrix(rho.matrix()))?;
    let se = entropy_of_matrix(&comp.apply_matrix(rho.matrix()))?;
    Ok(sb - se)
}

/// Holevo information `χ = S(N(ρ̄)) − Σ_i p_i S(N(ρ_i))` in bits.
pub fn holevo_information(n: &KrausChannel, ensemble: &Ensemble) -> Result<f64> {
    check_input_dim(n, ensemble.dim())?;
    let avg = entropy_of_matrix(&n.apply_matrix(&ensemble.average_matrix()))?;
    let mut members = 0.0;
    for (p, state) in ensemble.iter() {
        members += p * entropy_of_matrix(&n.apply_matrix(state.matrix()))?;
    }
    Ok(avg - members)
}

/// Private information at a fixed hierarchical input:
/// `I(A':B) − I(A':E)` with both mutual informations read as Holevo
/// quantities of the coarse ensemble `{p(x'), ρ^{x'}}`. May be negative.
pub fn private_information_value(n: &KrausChannel, h: &HierarchicalEnsemble) -> Result<f64> {
    check_input_dim(n, h.dim())?;
    let comp = n.complementary()?;
    let coarse = h.coarse();
    Ok(holevo_information(n, &coarse)? - holevo_information(&comp, &coarse)?)
}

/// Conditional Holevo quantity `I(A:side|A') = Σ_x' p(x') χ(inner at x')`.
pub fn conditional_holevo(n: &KrausChannel, h: &HierarchicalEnsemble, side: Side) -> Result<f64> {
    check_input_dim(n, h.dim())?;
    let channel = match side {
        Side::B => n.clone(),
        Side::E => n.complementary()?,
    };
    let mut total = 0.0;
    for (p, inner) in h.outer_probs().iter().zip(h.inner()) {
        total += p * holevo_information(&channel, inner)?;
    }
    Ok(total)
}

/// The weighting parameter `η = I(A:B|A') − I(A:E|A')` at a fixed input.
pub fn eta_value(n: &KrausChannel, h: &HierarchicalEnsemble) -> Result<f64> {
    Ok(conditional_holevo(n, h, Side::B)? - conditional_holevo(n, h, Side::E)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::standard;
    use crate::linalg::c64;
    use crate::random::Rng;
    use alloc::vec;
    use alloc::vec::Vec;

    fn binary_entropy(p: f64) -> f64 {
        if p <= 0.0 || p >= 1.0 {
            0.0
        } else {
            -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
        }
    }

    #[test]
    fn coherent_information_examples() {
        let id = standard::identity(2);
        let mixed = QuantumState::maximally_mixed(2);
        assert!((coherent_information(&id, &mixed).unwrap() - 1.0).abs() < 1e-12);

        let erasure = standard::erasure(0.5, 2).unwrap();
        let mut rng = Rng::new(70);
        for _ in 0..5 {
            let rho = rng.state(2, 2);
            assert!(coherent_information(&erasure, &rho).unwrap().abs() < 1e-9);
        }

        let deph = standard::dephasing(0.1).unwrap();
        let expect = 1.0 - binary_entropy(0.1);
        assert!((coherent_information(&deph, &mixed).unwrap() - expect).abs() < 1e-9);
        assert!((expect - 0.531004).abs() < 1e-6);
    }

    #[test]
    fn erasure_three_quarters_has_negative_coherent_information() {
        let erasure = standard::erasure(0.75, 2).unwrap();
        let mixed = QuantumState::maximally_mixed(2);
        let got = coherent_information(&erasure, &mixed).unwrap();
        assert!((got + 0.5).abs() < 1e-9, "expected (1-p)-p = -0.5, got {got}");
    }

    #[test]
    fn holevo_information_examples() {
        let id = standard::identity(2);
        let bits = Ensemble::new(
            vec![0.5, 0.5],
            vec![
                QuantumState::basis(2, 0).unwrap(),
                QuantumState::basis(2, 1).unwrap(),
            ],
        )
        .unwrap();
        assert!((holevo_information(&id, &bits).unwrap() - 1.0).abs() < 1e-12);

        let mut rng = Rng::new(71);
        let single = Ensemble::single(rng.state(2, 2));
        let ch = rng.kraus_channel(2, 3, 2);
        assert_eq!(holevo_information(&ch, &single).unwrap(), 0.0);

        // Dephasing on |±⟩: outputs are binary-symmetric mixtures.
        let deph = standard::dephasing(0.1).unwrap();
        let s = 1.0 / 2f64.sqrt();
        let plus = QuantumState::pure(&[c64(s, 0.0), c64(s, 0.0)]).unwrap();
        let minus = QuantumState::pure(&[c64(s, 0.0), c64(-s, 0.0)]).unwrap();
        let ens = Ensemble::new(vec![0.5, 0.5], vec![plus, minus]).unwrap();
        let expect = 1.0 - binary_entropy(0.1);
        assert!((holevo_information(&deph, &ens).unwrap() - expect).abs() < 1e-9);
    }

    #[test]
    fn holevo_information_is_nonnegative() {
        let mut rng = Rng::new(72);
        for trial in 0..30 {
            let d: usize = 2 + trial % 2;
            let d_out = 2 + trial % 3;
            let rank = (1 + trial % 3).max(d.div_ceil(d_out));
            let ch = rng.kraus_channel(d, d_out, rank);
            let ens = rng.pure_ensemble(d, 1 + trial % 4);
            assert!(holevo_information(&ch, &ens).unwrap() >= -1e-9);
        }
    }

    #[test]
    fn private_information_examples() {
        // Identity with coarse bit ensemble (trivial inner).
        let id = standard::identity(2);
        let h = HierarchicalEnsemble::from_pure_outer(
            vec![0.5, 0.5],
            vec![
                QuantumState::basis(2, 0).unwrap(),
                QuantumState::basis(2, 1).unwrap(),
            ],
        )
        .unwrap();
        assert!((private_information_value(&id, &h).unwrap() - 1.0).abs() < 1e-9);

        // 50% erasure: B and E statistics identical.
        let erasure = standard::erasure(0.5, 2).unwrap();
        let mut rng = Rng::new(73);
        let random_h = rng.hierarchical(2, 3, 2);
        assert!(private_information_value(&erasure, &random_h).unwrap().abs() < 1e-9);

        // Single coarse symbol carries nothing, exactly.
        let trivial = HierarchicalEnsemble::new(vec![1.0], vec![rng.pure_ensemble(2, 3)]).unwrap();
        let ch = rng.kraus_channel(2, 2, 2);
        assert_eq!(private_information_value(&ch, &trivial).unwrap(), 0.0);
    }

    #[test]
    fn conditional_holevo_examples() {
        let mut rng = Rng::new(74);
        let ch = rng.kraus_channel(2, 2, 2);
        // All inner ensembles single-member.
        let h = HierarchicalEnsemble::from_pure_outer(
            rng.probabilities(3),
            (0..3).map(|_| rng.pure_state(2)).collect::<Vec<_>>(),
        )
        .unwrap();
        assert_eq!(conditional_holevo(&ch, &h, Side::B).unwrap(), 0.0);
        assert_eq!(eta_value(&ch, &h).unwrap(), 0.0);

        // m' = 1 equals the Holevo information of the flattened ensemble.
        let h1 = HierarchicalEnsemble::new(vec![1.0], vec![rng.pure_ensemble(2, 4)]).unwrap();
        let cond = conditional_holevo(&ch, &h1, Side::B).unwrap();
        let flat = holevo_information(&ch, &h1.flatten()).unwrap();
        assert!((cond - flat).abs() < 1e-12);
    }

    #[test]
    fn chain_rule_on_dephasing() {
        let deph = standard::dephasing(0.2).unwrap();
        let mut rng = Rng::new(75);
        for _ in 0..10 {
            let h = rng.hierarchical(2, 3, 2);
            let full = holevo_information(&deph, &h.flatten()).unwrap();
            let coarse = holevo_information(&deph, &h.coarse()).unwrap();
            let cond = conditional_holevo(&deph, &h, Side::B).unwrap();
            assert!((full - coarse - cond).abs() < 1e-9);
        }
    }

    #[test]
    fn eta_identity_against_coherent_and_private_values() {
        // I_coh(ρ̄) − P(h) = η(h) whenever the fine-grained states are pure.
        let deph = standard::dephasing(0.3).unwrap();
        let mut rng = Rng::new(76);
        for _ in 0..10 {
            let h = rng.hierarchical(2, 4, 3);
            let q = coherent_information(&deph, &h.average_state()).unwrap();
            let p = private_information_value(&deph, &h).unwrap();
            let eta = eta_value(&deph, &h).unwrap();
            assert!((q - p - eta).abs() < 1e-9, "identity violated: {q} {p} {eta}");
        }
    }

    #[test]
    fn eta_nonnegative_for_degradable_channel() {
        let ad = standard::amplitude_damping(0.25).unwrap();
        let mut rng = Rng::new(77);
        for _ in 0..50 {
            let h = rng.hierarchical(2, 3, 2);
            assert!(eta_value(&ad, &h).unwrap() >= -1e-9);
        }
    }

    #[test]
    fn coherent_information_as_holevo_difference_on_pure_ensembles() {
        let mut rng = Rng::new(78);
        for trial in 0..50 {
            let d = 2 + trial % 2;
            let ch = rng.kraus_channel(d, 2 + trial % 2, 1 + trial % 3);
            let comp = ch.complementary().unwrap();
            let ens = rng.pure_ensemble(d, 1 + trial % 5);
            let icoh = coherent_information(&ch, &ens.average_state()).unwrap();
            let chi_b = holevo_information(&ch, &ens).unwrap();
            let chi_e = holevo_information(&comp, &ens).unwrap();
            assert!(
                (icoh - (chi_b - chi_e)).abs() < 1e-9,
                "identity violated at trial {trial}"
            );
        }
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let ch = standard::identity(3);
        let rho = QuantumState::maximally_mixed(2);
        assert!(coherent_information(&ch, &rho).is_err());
    }
}
