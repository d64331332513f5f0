use num_complex::Complex64;

use super::eigen::eigvalsh;
use super::matrix::ComplexMatrix;
use super::state::StateVector;
use super::{C_ZERO, ENTROPY_FLOOR, NORM_TOL};
use crate::error::{validation, Error, Result};

/// Hermitian, positive semidefinite, unit-trace matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    m: ComplexMatrix,
}

impl DensityOperator {
    /// Validates Hermiticity, unit trace and a non-negative spectrum, all within 1e-10.
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(validation("density operator must be square"));
        }
        let defect = m.hermiticity_defect();
        if defect.is_nan() || defect > NORM_TOL {
            return Err(validation(format!(
                "density operator not Hermitian (defect {defect:.3e})"
            )));
        }
        let tr = m.trace();
        if !((tr.re - 1.0).abs() <= NORM_TOL && tr.im.abs() <= NORM_TOL) {
            return Err(validation(format!("density operator trace is {tr}, expected 1")));
        }
        let min = eigvalsh(&m)?.first().copied().unwrap_or(0.0);
        if min < -NORM_TOL {
            return Err(validation(format!(
                "density operator has negative eigenvalue {min:.3e}"
            )));
        }
        Ok(Self { m })
    }

    /// `|ψ⟩⟨ψ|`
    pub fn pure(psi: &StateVector) -> Self {
        let a = psi.amplitudes();
        let n = a.len();
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = a[i] * a[j].conj();
            }
        }
        Self { m }
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        let mut m = ComplexMatrix::identity(dim);
        m = m.scale(Complex64::new(1.0 / dim as f64, 0.0));
        Self { m }
    }

    pub fn dim(&self) -> usize {
        self.m.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.m
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.m
    }

    /// Diagonal entry `⟨i|ρ|i⟩`.
    pub fn population(&self, i: usize) -> f64 {
        self.m[(i, i)].re
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        eigvalsh(&self.m)
    }

    /// `U ρ U†`, re-validated.
    pub fn conjugate_by(&self, u: &ComplexMatrix) -> Result<Self> {
        let m = u.conjugate(&self.m)?;
        Self::new(m).map_err(|e| Error::Numerical(format!("unitary conjugation broke the state: {e}")))
    }

    pub fn purity(&self) -> f64 {
        // tr ρ² = Σ |ρ_ij|² for Hermitian ρ
        self.m.as_slice().iter().map(|z| z.norm_sqr()).sum()
    }
}

/// Either representation accepted by [`partial_trace`].
#[derive(Debug, Clone, Copy)]
pub enum QuantumState<'a> {
    Pure(&'a StateVector),
    Mixed(&'a DensityOperator),
}

impl<'a> From<&'a StateVector> for QuantumState<'a> {
    fn from(s: &'a StateVector) -> Self {
        QuantumState::Pure(s)
    }
}

impl<'a> From<&'a DensityOperator> for QuantumState<'a> {
    fn from(r: &'a DensityOperator) -> Self {
        QuantumState::Mixed(r)
    }
}

/// Reduced density operator of factor `keep` of a state on `dims[0] ⊗ dims[1] ⊗ ...`.
pub fn partial_trace<'a>(state: impl Into<QuantumState<'a>>, keep: usize, dims: &[usize]) -> Result<DensityOperator> {
    let state = state.into();
    let total = match state {
        QuantumState::Pure(s) => s.dim(),
        QuantumState::Mixed(r) => r.dim(),
    };
    if dims.is_empty() || dims.contains(&0) {
        return Err(validation("factor dimensions must be non-empty and positive"));
    }
    let product = dims.iter().try_fold(1usize, |acc, &d| acc.checked_mul(d));
    if product != Some(total) {
        return Err(validation(format!(
            "factor dimensions {dims:?} do not multiply to the state dimension {total}"
        )));
    }
    if keep >= dims.len() {
        return Err(validation(format!(
            "subsystem {keep} out of range for {} factors",
            dims.len()
        )));
    }
    let d = dims[keep];
    let inner: usize = dims[keep + 1..].iter().product();
    let outer = total / (d * inner);
    let index = |o: usize, k: usize, i: usize| (o * d + k) * inner + i;

    let mut red = ComplexMatrix::zeros(d, d);
    match state {
        QuantumState::Pure(s) => {
            let a = s.amplitudes();
            for r in 0..d {
                for c in r..d {
                    let mut acc = C_ZERO;
                    for o in 0..outer {
                        for i in 0..inner {
                            acc += a[index(o, r, i)] * a[index(o, c, i)].conj();
                        }
                    }
                    red[(r, c)] = acc;
                    red[(c, r)] = acc.conj();
                }
            }
        }
        QuantumState::Mixed(rho) => {
            let m = rho.matrix();
            for r in 0..d {
                for c in 0..d {
                    let mut acc = C_ZERO;
                    for o in 0..outer {
                        for i in 0..inner {
                            acc += m[(index(o, r, i), index(o, c, i))];
                        }
                    }
                    red[(r, c)] = acc;
                }
            }
        }
    }
    DensityOperator::new(red).map_err(|e| Error::Numerical(format!("partial trace failed: {e}")))
}

/// Von Neumann entropy in nats, ignoring eigenvalues at or below 1e-12.
pub fn von_neumann_entropy(rho: &DensityOperator) -> Result<f64> {
    let s: f64 = rho
        .eigenvalues()?
        .into_iter()
        .filter(|&l| l > ENTROPY_FLOOR)
        .map(|l| -l * l.ln())
        .sum();
    Ok(s.clamp(0.0, (rho.dim() as f64).ln()))
}

/// Trace distance `½ ‖ρ - σ‖₁`.
pub fn trace_distance(rho: &DensityOperator, sigma: &DensityOperator) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(validation("trace distance needs equal dimensions"));
    }
    let diff = rho.matrix() - sigma.matrix();
    Ok(0.5 * eigvalsh(&diff)?.iter().map(|l| l.abs()).sum::<f64>())
}
