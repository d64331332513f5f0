//! Experiments on the belief qubit: a single evaluation between two evidence
//! legs, probability curves over the rotation angle, and sequences of
//! evaluations with fresh ancillas.

mod sequence;
mod single;
mod sweep;

use std::f64::consts::FRAC_PI_2;

pub use sequence::{projective_baseline, zeno_sequence, ZenoResult};
pub use single::{
    entanglement_at_interaction, evolve_single_interaction, pointer_overlap, prob_innocent_closed_form,
    prob_innocent_free, prob_innocent_free_expanded, prob_innocent_with_interaction, regime_classify,
    transition_rate_analytic, transition_rate_numeric, transition_rate_numeric_at, Regime, MIN_FD_STEP,
};
pub use sweep::{curve_sweep, interaction_jump, CurveSample, Phase};

use crate::bae::{checked_generator, interaction_unitary, ModelParams, RotationAngle};
use crate::error::{validation, Result};
use crate::qlin::{matexp_hermitian, ComplexMatrix, MAX_QUBITS};

/// How a sequence of evaluations is simulated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Exact joint state of belief plus every ancilla.
    PureState,
    /// Belief density operator; each ancilla is traced out right after it interacts.
    Channel,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::PureState => "pure_state",
            Mode::Channel => "channel",
        }
    }
}

/// The two-qubit coupling applied at each evaluation.
#[derive(Debug, Clone, PartialEq)]
pub enum Interaction {
    /// `exp(-i (H_α + H_β) t')` from the model parameters.
    BeliefAction,
    /// Copies the belief basis value into the ancilla (a CNOT), leaving
    /// orthogonal pointer states: the fully dephasing limit.
    IdealDephasing,
    /// A caller-supplied Hermitian generator, evolved for `t'`.
    Generator(ComplexMatrix),
}

impl Interaction {
    pub fn unitary(&self, params: &ModelParams) -> Result<ComplexMatrix> {
        match self {
            Interaction::BeliefAction => interaction_unitary(params),
            Interaction::IdealDephasing => Ok(cnot()),
            Interaction::Generator(h) => {
                params.validate()?;
                matexp_hermitian(&checked_generator(h.clone())?, params.t_prime)
            }
        }
    }
}

fn cnot() -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(4, 4);
    for (r, c) in [(0, 0), (1, 1), (2, 3), (3, 2)] {
        m[(r, c)] = num_complex::Complex64::new(1.0, 0.0);
    }
    m
}

/// Everything needed to run one experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub params: ModelParams,
    pub interaction: Interaction,
    /// Rotation before the (first) evaluation.
    pub b_first: RotationAngle,
    /// Total rotation over the whole run.
    pub b_total: RotationAngle,
    pub grid_points: usize,
    pub n_interactions: usize,
    pub mode: Mode,
    /// Explicit per-leg rotations for a sequence (`n_interactions + 1` entries);
    /// `None` splits `b_total` evenly.
    pub step_angles: Option<Vec<f64>>,
    /// Per-evaluation model parameters (`n_interactions` entries); `None` reuses `params`.
    pub step_params: Option<Vec<ModelParams>>,
    /// Qubit budget for pure-state sequences.
    pub max_qubits: usize,
}

impl ExperimentSpec {
    pub fn new(params: ModelParams, b_first: f64, b_total: f64) -> Self {
        Self {
            params,
            interaction: Interaction::BeliefAction,
            b_first: RotationAngle(b_first),
            b_total: RotationAngle(b_total),
            grid_points: 400,
            n_interactions: 1,
            mode: Mode::PureState,
            step_angles: None,
            step_params: None,
            max_qubits: MAX_QUBITS,
        }
    }

    /// `γ = 0, μ₀ = 0.3, μ₁ = 0.6, t' = π/2`, evaluation at 0.2, run to 0.6.
    pub fn fig1() -> Self {
        let p = ModelParams {
            mu0: 0.3,
            mu1: 0.6,
            gamma: 0.0,
            t_prime: FRAC_PI_2,
        };
        Self::new(p, 0.2, 0.6)
    }

    /// `γ = 2.09, μ₀ = μ₁ = 1.4, t' = π/2`, evaluation at 0.2, run to 0.8.
    pub fn fig2() -> Self {
        let p = ModelParams {
            mu0: 1.4,
            mu1: 1.4,
            gamma: 2.09,
            t_prime: FRAC_PI_2,
        };
        Self::new(p, 0.2, 0.8)
    }

    pub fn with_interaction(mut self, interaction: Interaction) -> Self {
        self.interaction = interaction;
        self
    }

    pub fn with_interactions(mut self, n: usize, mode: Mode) -> Self {
        self.n_interactions = n;
        self.mode = mode;
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        let (b1, bt) = (self.b_first.0, self.b_total.0);
        if !b1.is_finite() || !bt.is_finite() {
            return Err(validation("rotation angles must be finite"));
        }
        if !(0.0 <= b1 && b1 <= bt) {
            return Err(validation(format!(
                "need 0 <= b_first <= b_total, got b_first={b1}, b_total={bt}"
            )));
        }
        if self.grid_points < 2 {
            return Err(validation(format!(
                "grid_points must be at least 2, got {}",
                self.grid_points
            )));
        }
        if let Some(angles) = &self.step_angles {
            if angles.len() != self.n_interactions + 1 {
                return Err(validation(format!(
                    "step_angles needs {} entries, got {}",
                    self.n_interactions + 1,
                    angles.len()
                )));
            }
            if angles.iter().any(|a| !a.is_finite()) {
                return Err(validation("step_angles must be finite"));
            }
        }
        if let Some(steps) = &self.step_params {
            if steps.len() != self.n_interactions {
                return Err(validation(format!(
                    "step_params needs {} entries, got {}",
                    self.n_interactions,
                    steps.len()
                )));
            }
            steps.iter().try_for_each(ModelParams::validate)?;
        }
        Ok(())
    }

    /// Parameters for evaluation `k` of a sequence.
    pub(crate) fn params_at(&self, k: usize) -> &ModelParams {
        self.step_params.as_ref().and_then(|s| s.get(k)).unwrap_or(&self.params)
    }

    /// Rotations for the `n_interactions + 1` free legs of a sequence.
    pub(crate) fn leg_angles(&self) -> Vec<f64> {
        match &self.step_angles {
            Some(a) => a.clone(),
            None => {
                let legs = self.n_interactions + 1;
                vec![self.b_total.0 / legs as f64; legs]
            }
        }
    }
}
