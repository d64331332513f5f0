use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use super::{C_ONE, C_ZERO, MAX_DIM, NORM_TOL};
use crate::error::{validation, Error, Result};

/// Unit-norm amplitude vector over a register of qubits.
///
/// Qubit 0 is the most significant bit of the basis index, so a register
/// `belief ⊗ ancilla_1 ⊗ ... ⊗ ancilla_n` stores `|b, a_1, ..., a_n⟩` at
/// index `b·2ⁿ + a_1·2ⁿ⁻¹ + ... + a_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amps: Vec<Complex64>,
}

impl StateVector {
    /// Wraps amplitudes, requiring a power-of-two length and unit norm within 1e-10.
    pub fn new(amps: Vec<Complex64>) -> Result<Self> {
        let dim = amps.len();
        if dim == 0 || !dim.is_power_of_two() {
            return Err(validation(format!(
                "state dimension {dim} is not a positive power of two"
            )));
        }
        if dim > MAX_DIM {
            return Err(Error::Sizing {
                requested: dim,
                cap: MAX_DIM,
            });
        }
        let s = Self { amps };
        let drift = (s.norm_sqr() - 1.0).abs();
        if drift.is_nan() || drift > NORM_TOL {
            return Err(validation(format!(
                "state is not normalised (|‖ψ‖² - 1| = {drift:.3e})"
            )));
        }
        Ok(s)
    }

    /// Rescales arbitrary non-zero amplitudes to unit norm.
    pub fn normalized(amps: Vec<Complex64>) -> Result<Self> {
        let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(validation("cannot normalise a zero or non-finite vector"));
        }
        Self::new(amps.into_iter().map(|z| z / norm).collect())
    }

    /// Computational basis state `|index⟩` in dimension `dim`.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(validation(format!(
                "basis index {index} out of range for dimension {dim}"
            )));
        }
        let mut amps = vec![C_ZERO; dim];
        amps[index] = C_ONE;
        Self::new(amps)
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn num_qubits(&self) -> usize {
        self.amps.len().trailing_zeros() as usize
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(validation(format!(
                "dimension mismatch in inner product: {} vs {}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum())
    }

    /// Tensor product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Result<Self> {
        self.kron_with_limit(other, MAX_DIM)
    }

    pub fn kron_with_limit(&self, other: &Self, max_dim: usize) -> Result<Self> {
        let dim = self
            .dim()
            .checked_mul(other.dim())
            .filter(|&d| d <= max_dim)
            .ok_or(Error::Sizing {
                requested: self.dim().saturating_mul(other.dim()),
                cap: max_dim,
            })?;
        let mut amps = Vec::with_capacity(dim);
        for a in &self.amps {
            amps.extend(other.amps.iter().map(|b| a * b));
        }
        self.renormalised(amps)
    }

    /// Applies a full-dimension unitary.
    pub fn evolve(&self, u: &ComplexMatrix) -> Result<Self> {
        if u.rows() != self.dim() {
            return Err(validation(format!(
                "operator of size {}x{} cannot act on dimension {}",
                u.rows(),
                u.cols(),
                self.dim()
            )));
        }
        self.renormalised(u.apply(&self.amps)?)
    }

    /// Applies a 2x2 gate to one qubit of the register.
    pub fn apply_single(&self, gate: &ComplexMatrix, qubit: usize) -> Result<Self> {
        let n = self.num_qubits();
        if gate.rows() != 2 || gate.cols() != 2 {
            return Err(validation("single-qubit gate must be 2x2"));
        }
        if qubit >= n {
            return Err(validation(format!("qubit {qubit} out of range for {n} qubits")));
        }
        let stride = 1usize << (n - 1 - qubit);
        let g = [gate[(0, 0)], gate[(0, 1)], gate[(1, 0)], gate[(1, 1)]];
        let mut out = self.amps.clone();
        for base in 0..self.dim() {
            if base & stride != 0 {
                continue;
            }
            let (a0, a1) = (self.amps[base], self.amps[base | stride]);
            out[base] = g[0] * a0 + g[1] * a1;
            out[base | stride] = g[2] * a0 + g[3] * a1;
        }
        self.renormalised(out)
    }

    /// Applies a 4x4 gate to the ordered qubit pair `(first, second)`; `first`
    /// indexes the more significant factor of the gate.
    pub fn apply_pair(&self, gate: &ComplexMatrix, first: usize, second: usize) -> Result<Self> {
        let n = self.num_qubits();
        if gate.rows() != 4 || gate.cols() != 4 {
            return Err(validation("two-qubit gate must be 4x4"));
        }
        if first >= n || second >= n || first == second {
            return Err(validation(format!(
                "invalid qubit pair ({first},{second}) for {n} qubits"
            )));
        }
        let hi = 1usize << (n - 1 - first);
        let lo = 1usize << (n - 1 - second);
        let mut out = self.amps.clone();
        for base in 0..self.dim() {
            if base & (hi | lo) != 0 {
                continue;
            }
            let idx = [base, base | lo, base | hi, base | hi | lo];
            let v = idx.map(|i| self.amps[i]);
            for (r, &dst) in idx.iter().enumerate() {
                out[dst] = (0..4).map(|c| gate[(r, c)] * v[c]).sum();
            }
        }
        self.renormalised(out)
    }

    /// Probability that `qubit` reads `value` in the computational basis.
    pub fn qubit_probability(&self, qubit: usize, value: bool) -> Result<f64> {
        let n = self.num_qubits();
        if qubit >= n {
            return Err(validation(format!("qubit {qubit} out of range for {n} qubits")));
        }
        let bit = 1usize << (n - 1 - qubit);
        Ok(self
            .amps
            .iter()
            .enumerate()
            .filter(|(i, _)| (i & bit != 0) == value)
            .map(|(_, z)| z.norm_sqr())
            .sum())
    }

    /// Unitary evolution output must stay normalised; drift beyond the
    /// tolerance signals a non-unitary operator or a numerical failure.
    fn renormalised(&self, amps: Vec<Complex64>) -> Result<Self> {
        let ns: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
        let drift = (ns - 1.0).abs();
        if drift.is_nan() || drift > NORM_TOL {
            return Err(Error::Numerical(format!(
                "normalisation drift {drift:.3e} exceeds {NORM_TOL:e}"
            )));
        }
        Ok(Self { amps })
    }
}
