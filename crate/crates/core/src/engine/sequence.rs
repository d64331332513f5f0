use super::{ExperimentSpec, Mode};
use crate::bae::{u_free, RotationAngle};
use crate::error::{Error, Result};
use crate::qlin::{kron, partial_trace, von_neumann_entropy, ComplexMatrix, DensityOperator, StateVector};

/// Outcome of a run with `n` evaluations.
#[derive(Debug, Clone, PartialEq)]
pub struct ZenoResult {
    pub n: usize,
    /// `⟨0_b|ρ_b|0_b⟩` after the final leg.
    pub survival: f64,
    /// Belief entropy (nats) right after each evaluation.
    pub entropy_trace: Vec<f64>,
    pub mode: Mode,
    /// Reduced belief state after the final leg.
    pub belief: DensityOperator,
}

impl ZenoResult {
    /// Mean of the entropy trace; 0 when there were no evaluations.
    pub fn entropy_mean(&self) -> f64 {
        if self.entropy_trace.is_empty() {
            0.0
        } else {
            self.entropy_trace.iter().sum::<f64>() / self.entropy_trace.len() as f64
        }
    }
}

/// Rotates the belief through `n_interactions + 1` legs, coupling it to a
/// fresh `|0_a⟩` ancilla after each of the first `n_interactions` legs.
pub fn zeno_sequence(spec: &ExperimentSpec) -> Result<ZenoResult> {
    spec.validate()?;
    let legs = spec.leg_angles();
    let unitaries = (0..spec.n_interactions)
        .map(|k| spec.interaction.unitary(spec.params_at(k)))
        .collect::<Result<Vec<_>>>()?;
    let (belief, entropy_trace) = match spec.mode {
        Mode::PureState => run_pure(spec, &legs, &unitaries)?,
        Mode::Channel => run_channel(&legs, &unitaries)?,
    };
    let survival = belief.population(0).clamp(0.0, 1.0);
    Ok(ZenoResult {
        n: spec.n_interactions,
        survival,
        entropy_trace,
        mode: spec.mode,
        belief,
    })
}

fn run_pure(spec: &ExperimentSpec, legs: &[f64], unitaries: &[ComplexMatrix]) -> Result<(DensityOperator, Vec<f64>)> {
    let qubits = spec.n_interactions + 1;
    if qubits > spec.max_qubits {
        return Err(Error::Sizing {
            requested: 1usize.checked_shl(qubits as u32).unwrap_or(usize::MAX),
            cap: 1usize.checked_shl(spec.max_qubits as u32).unwrap_or(usize::MAX),
        });
    }
    let fresh = StateVector::basis(2, 0)?;
    let mut psi = StateVector::basis(2, 0)?;
    let mut entropies = Vec::with_capacity(unitaries.len());
    for (k, u) in unitaries.iter().enumerate() {
        psi = psi.apply_single(&u_free(RotationAngle(legs[k])), 0)?;
        psi = psi.kron_with_limit(&fresh, usize::MAX)?;
        let ancilla = psi.num_qubits() - 1;
        psi = psi.apply_pair(u, 0, ancilla)?;
        let rho_b = partial_trace(&psi, 0, &[2, psi.dim() / 2])?;
        entropies.push(von_neumann_entropy(&rho_b)?);
    }
    psi = psi.apply_single(&u_free(RotationAngle(legs[unitaries.len()])), 0)?;
    Ok((partial_trace(&psi, 0, &[2, psi.dim() / 2])?, entropies))
}

fn run_channel(legs: &[f64], unitaries: &[ComplexMatrix]) -> Result<(DensityOperator, Vec<f64>)> {
    let fresh = DensityOperator::pure(&StateVector::basis(2, 0)?);
    let mut rho = fresh.clone();
    let mut entropies = Vec::with_capacity(unitaries.len());
    for (k, u) in unitaries.iter().enumerate() {
        rho = rho.conjugate_by(&u_free(RotationAngle(legs[k])))?;
        let joint = DensityOperator::new(kron(rho.matrix(), fresh.matrix())?)?;
        rho = partial_trace(&joint.conjugate_by(u)?, 0, &[2, 2])?;
        entropies.push(von_neumann_entropy(&rho)?);
    }
    rho = rho.conjugate_by(&u_free(RotationAngle(legs[unitaries.len()])))?;
    Ok((rho, entropies))
}

/// Survival under `n` projective measurements of the belief between `n + 1`
/// equal legs of `b_total`, as a two-state Markov chain.
///
/// Without post-selection the outcomes are unread; with it, only runs that
/// found `|0_b⟩` at every measurement (and at the end) count.
pub fn projective_baseline(n: usize, b_total: RotationAngle, post_select: bool) -> f64 {
    let theta = b_total.0 / (n + 1) as f64;
    let stay = theta.cos().powi(2);
    let flip = theta.sin().powi(2);
    if post_select {
        (0..=n).fold(1.0, |p, _| p * stay)
    } else {
        (0..=n).fold(1.0, |p, _| p * stay + (1.0 - p) * flip)
    }
}
