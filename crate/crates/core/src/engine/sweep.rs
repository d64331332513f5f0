use super::single::prob_innocent_free;
use super::ExperimentSpec;
use crate::bae::{u_free, RotationAngle};
use crate::error::{validation, Result};
use crate::qlin::StateVector;

/// Grid points closer than this to the evaluation angle are replaced by the boundary pair.
const BOUNDARY_MERGE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phase {
    PreInteraction,
    /// Same angle as the preceding pre-interaction sample, just after the evaluation.
    PostInteractionBoundary,
    PostInteraction,
}

impl Phase {
    pub fn as_str(self) -> &'static str {
        match self {
            Phase::PreInteraction => "pre",
            Phase::PostInteractionBoundary => "boundary",
            Phase::PostInteraction => "post",
        }
    }
}

/// One point of the survival-versus-angle curves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveSample {
    pub b: RotationAngle,
    pub p_free: f64,
    pub p_interaction: f64,
    pub phase: Phase,
}

/// Survival probabilities with and without the evaluation on a uniform grid
/// over `[0, b_total]`.
///
/// With one evaluation, two samples are emitted at `b_first`: one just before
/// and one just after it, so a jump across the evaluation stays visible.
/// With zero evaluations both curves are the free curve.
pub fn curve_sweep(spec: &ExperimentSpec) -> Result<Vec<CurveSample>> {
    spec.validate()?;
    if spec.n_interactions > 1 {
        return Err(validation(format!(
            "curve sweep supports at most one interaction, got {}",
            spec.n_interactions
        )));
    }
    let (b1, bt) = (spec.b_first.0, spec.b_total.0);
    let last = (spec.grid_points - 1) as f64;
    let grid = (0..spec.grid_points).map(|k| if k as f64 == last { bt } else { bt * k as f64 / last });

    let free = |b: f64| prob_innocent_free(RotationAngle(b));
    let sample = |b: f64, p_interaction: f64, phase| CurveSample {
        b: RotationAngle(b),
        p_free: free(b),
        p_interaction: p_interaction.clamp(0.0, 1.0),
        phase,
    };

    if spec.n_interactions == 0 {
        return Ok(grid.map(|b| sample(b, free(b), Phase::PreInteraction)).collect());
    }

    let before = StateVector::basis(4, 0)?.apply_single(&u_free(spec.b_first), 0)?;
    let after = before.apply_pair(&spec.interaction.unitary(&spec.params)?, 0, 1)?;
    let post = |b: f64| -> Result<f64> {
        after
            .apply_single(&u_free(RotationAngle(b - b1)), 0)?
            .qubit_probability(0, false)
    };

    let mut out = Vec::with_capacity(spec.grid_points + 2);
    let mut boundary_done = false;
    for b in grid {
        if (b - b1).abs() <= BOUNDARY_MERGE_TOL {
            continue;
        }
        if b > b1 && !boundary_done {
            push_boundary(&mut out, b1, &before, &after, sample)?;
            boundary_done = true;
        }
        if b < b1 {
            out.push(sample(b, free(b), Phase::PreInteraction));
        } else {
            out.push(sample(b, post(b)?, Phase::PostInteraction));
        }
    }
    if !boundary_done {
        push_boundary(&mut out, b1, &before, &after, sample)?;
    }
    Ok(out)
}

fn push_boundary(
    out: &mut Vec<CurveSample>,
    b1: f64,
    before: &StateVector,
    after: &StateVector,
    sample: impl Fn(f64, f64, Phase) -> CurveSample,
) -> Result<()> {
    out.push(sample(b1, before.qubit_probability(0, false)?, Phase::PreInteraction));
    out.push(sample(
        b1,
        after.qubit_probability(0, false)?,
        Phase::PostInteractionBoundary,
    ));
    Ok(())
}

/// Survival just before and just after the single evaluation in `spec`.
pub fn interaction_jump(spec: &ExperimentSpec) -> Result<(f64, f64)> {
    spec.validate()?;
    let before = StateVector::basis(4, 0)?.apply_single(&u_free(spec.b_first), 0)?;
    let after = before.apply_pair(&spec.interaction.unitary(&spec.params)?, 0, 1)?;
    Ok((before.qubit_probability(0, false)?, after.qubit_probability(0, false)?))
}
