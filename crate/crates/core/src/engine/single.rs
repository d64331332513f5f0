use super::{ExperimentSpec, Interaction};
use crate::bae::{ancilla_states_closed_form, ancilla_states_numeric, overlap_re, u_free, RotationAngle};
use crate::error::{validation, Error, Result};
use crate::qlin::{partial_trace, von_neumann_entropy, StateVector};

/// Smallest finite-difference step accepted by the numeric rates.
pub const MIN_FD_STEP: f64 = 1e-12;

/// Tolerance band around the regime thresholds 0 and 1.
const REGIME_TOL: f64 = 1e-9;

fn require_single(spec: &ExperimentSpec) -> Result<()> {
    spec.validate()?;
    if spec.n_interactions != 1 {
        return Err(validation(format!(
            "single-interaction experiment needs n_interactions = 1, got {}",
            spec.n_interactions
        )));
    }
    Ok(())
}

/// Joint state just after the evaluation, before the second leg.
fn after_interaction(spec: &ExperimentSpec) -> Result<StateVector> {
    let psi = StateVector::basis(4, 0)?.apply_single(&u_free(spec.b_first), 0)?;
    psi.apply_pair(&spec.interaction.unitary(&spec.params)?, 0, 1)
}

/// Survival of `|0_b⟩` after the second leg `b12`, with or without the evaluation.
pub(super) fn survival_after(spec: &ExperimentSpec, b12: f64, interact: bool) -> Result<f64> {
    let psi = if interact {
        after_interaction(spec)?
    } else {
        StateVector::basis(4, 0)?.apply_single(&u_free(spec.b_first), 0)?
    };
    psi.apply_single(&u_free(RotationAngle(b12)), 0)?
        .qubit_probability(0, false)
}

/// `(U_b(B₁₂) ⊗ I) U_ba (U_b(B₀₁) ⊗ I) |0_b, 0_a⟩` with `B₁₂ = b_total - b_first`.
pub fn evolve_single_interaction(spec: &ExperimentSpec) -> Result<StateVector> {
    require_single(spec)?;
    let b12 = RotationAngle(spec.b_total.0 - spec.b_first.0);
    after_interaction(spec)?.apply_single(&u_free(b12), 0)
}

/// Survival of `|0_b⟩` under free rotation only: `cos² B`.
pub fn prob_innocent_free(b_total: RotationAngle) -> f64 {
    let c = b_total.0.cos();
    c * c
}

/// The free survival written leg by leg,
/// `cos²B₁cos²B₂ + sin²B₁sin²B₂ - 2 cosB₁cosB₂sinB₁sinB₂`.
pub fn prob_innocent_free_expanded(b01: f64, b12: f64) -> f64 {
    prob_innocent_closed_form(b01, b12, 1.0)
}

/// Survival after one evaluation whose pointer states overlap by `Re⟨ν|η⟩ = overlap`.
pub fn prob_innocent_closed_form(b01: f64, b12: f64, overlap: f64) -> f64 {
    let (s1, c1) = b01.sin_cos();
    let (s2, c2) = b12.sin_cos();
    c1 * c1 * c2 * c2 + s1 * s1 * s2 * s2 - 2.0 * c1 * c2 * s1 * s2 * overlap
}

/// `⟨ψ|U_I† (|0_b⟩⟨0_b| ⊗ I) U_I|ψ⟩` by direct evolution.
pub fn prob_innocent_with_interaction(spec: &ExperimentSpec) -> Result<f64> {
    evolve_single_interaction(spec)?.qubit_probability(0, false)
}

/// `Re⟨ν|η⟩` of the evaluation in `spec`, when the evaluation preserves belief populations.
pub fn pointer_overlap(spec: &ExperimentSpec) -> Result<f64> {
    spec.params.validate()?;
    let (nu, eta) = match spec.interaction {
        Interaction::BeliefAction if spec.params.gamma == 0.0 => ancilla_states_closed_form(&spec.params)?,
        _ => ancilla_states_numeric(&spec.interaction.unitary(&spec.params)?)?,
    };
    overlap_re(&nu, &eta)
}

/// Rate of change of the survival right after the evaluation:
/// `-2 cos B₀₁ sin B₀₁ · overlap`.
pub fn transition_rate_analytic(b_first: RotationAngle, overlap: f64) -> f64 {
    let (s, c) = b_first.0.sin_cos();
    -2.0 * c * s * overlap
}

/// Finite-difference derivative of the survival with respect to the second leg,
/// at the boundary `B₁₂ → 0⁺`. Uses the second-order one-sided stencil.
///
/// `spec.n_interactions` selects the evaluated curve: 0 for free evolution, 1
/// for a single evaluation at `b_first`.
pub fn transition_rate_numeric(spec: &ExperimentSpec, h: f64) -> Result<f64> {
    transition_rate_numeric_at(spec, 0.0, h)
}

/// As [`transition_rate_numeric`], at second-leg angle `b12 ≥ 0`: central
/// differences where `b12 ≥ h`, one-sided forward differences closer to the boundary.
pub fn transition_rate_numeric_at(spec: &ExperimentSpec, b12: f64, h: f64) -> Result<f64> {
    if !(h.is_finite() && h >= MIN_FD_STEP) {
        return Err(validation(format!(
            "finite-difference step must be at least {MIN_FD_STEP:e}, got {h}"
        )));
    }
    if !(b12.is_finite() && b12 >= 0.0) {
        return Err(validation(format!(
            "second-leg angle must be finite and non-negative, got {b12}"
        )));
    }
    spec.validate()?;
    let interact = match spec.n_interactions {
        0 => false,
        1 => true,
        n => {
            return Err(validation(format!(
                "transition rate needs 0 or 1 interactions, got {n}"
            )))
        }
    };
    let f = |x: f64| survival_after(spec, x, interact);
    if b12 >= h {
        Ok((f(b12 + h)? - f(b12 - h)?) / (2.0 * h))
    } else {
        Ok((-3.0 * f(b12)? + 4.0 * f(b12 + h)? - f(b12 + 2.0 * h)?) / (2.0 * h))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// Identical pointers: no entanglement, no slowdown.
    NoEffect,
    /// Partially distinguishable pointers: slowed transition.
    PartialZeno,
    /// Orthogonal pointers: the rate vanishes right after the evaluation.
    Frozen,
    /// Negative overlap: the survival increases after the evaluation.
    Enhancement,
}

pub fn regime_classify(overlap: f64) -> Result<Regime> {
    if !(overlap.is_finite() && (-1.0 - REGIME_TOL..=1.0 + REGIME_TOL).contains(&overlap)) {
        return Err(validation(format!("overlap must lie in [-1, 1], got {overlap}")));
    }
    Ok(if (overlap - 1.0).abs() <= REGIME_TOL {
        Regime::NoEffect
    } else if overlap.abs() <= REGIME_TOL {
        Regime::Frozen
    } else if overlap > 0.0 {
        Regime::PartialZeno
    } else {
        Regime::Enhancement
    })
}

/// Von Neumann entropy (nats) of the belief right after the evaluation.
pub fn entanglement_at_interaction(spec: &ExperimentSpec) -> Result<f64> {
    require_single(spec)?;
    let rho = partial_trace(&after_interaction(spec)?, 0, &[2, 2])?;
    von_neumann_entropy(&rho).map_err(|e| Error::Numerical(e.to_string()))
}
