//! Dense complex linear algebra for small qubit registers.

mod density;
mod eigen;
mod matrix;
mod state;

use num_complex::Complex64;

pub use density::{partial_trace, trace_distance, von_neumann_entropy, DensityOperator, QuantumState};
pub use eigen::{eigvalsh, matexp_hermitian};
pub use matrix::{kron, kron_with_limit, ComplexMatrix};
pub use state::StateVector;

/// Default number of qubits a pure-state register may hold.
pub const MAX_QUBITS: usize = 21;
/// Largest joint dimension, `2^MAX_QUBITS`.
pub const MAX_DIM: usize = 1 << MAX_QUBITS;

/// Hermiticity gate for generators handed to the exponential.
pub const HERMITIAN_TOL: f64 = 1e-9;
/// Unitarity, trace and normalisation tolerance.
pub const NORM_TOL: f64 = 1e-10;
/// Eigenvalues at or below this are dropped from entropy sums.
pub const ENTROPY_FLOOR: f64 = 1e-12;
/// Jacobi stops once the off-diagonal Frobenius norm falls below this (relative to max(1, ‖S‖)).
pub const JACOBI_OFF_TOL: f64 = 1e-13;

pub(crate) const C_ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const C_ONE: Complex64 = Complex64::new(1.0, 0.0);
