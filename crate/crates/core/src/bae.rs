//! Belief-action model objects: the evidence-driven belief rotation and the
//! two-qubit generators coupling belief to intention-to-act.
//!
//! Two-qubit operators act on `belief ⊗ ancilla` with basis index
//! `2·b + a`, i.e. rows `|0_b,0_a⟩, |0_b,1_a⟩, |1_b,0_a⟩, |1_b,1_a⟩`.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::error::{validation, Error, Result};
use crate::qlin::{matexp_hermitian, ComplexMatrix, StateVector, HERMITIAN_TOL, NORM_TOL};

/// Utility and coupling knobs of the belief-action generator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub mu0: f64,
    pub mu1: f64,
    pub gamma: f64,
    /// Interaction duration; the generator blocks have eigenvalues ±1, so π/2 is a quarter period.
    pub t_prime: f64,
}

impl ModelParams {
    pub fn new(mu0: f64, mu1: f64, gamma: f64, t_prime: f64) -> Result<Self> {
        let p = Self {
            mu0,
            mu1,
            gamma,
            t_prime,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("mu0", self.mu0),
            ("mu1", self.mu1),
            ("gamma", self.gamma),
            ("t_prime", self.t_prime),
        ] {
            if !v.is_finite() {
                return Err(validation(format!("{name} must be finite, got {v}")));
            }
        }
        if self.t_prime < 0.0 {
            return Err(validation(format!(
                "t_prime must be non-negative, got {}",
                self.t_prime
            )));
        }
        Ok(())
    }
}

/// Belief rotation angle in radians. Periodic; any finite value is allowed.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct RotationAngle(pub f64);

impl RotationAngle {
    pub fn radians(self) -> f64 {
        self.0
    }
}

impl From<f64> for RotationAngle {
    fn from(b: f64) -> Self {
        RotationAngle(b)
    }
}

/// Strength-of-evidence parameters for the angular displacement sum.
#[derive(Debug, Clone, PartialEq)]
pub struct EvidenceSchedule {
    pub alpha: f64,
    pub beta: f64,
    pub strengths: Vec<f64>,
}

impl EvidenceSchedule {
    /// `alpha = 0.2, beta = 0`, unit strengths: one evidence step rotates by 0.2.
    pub fn demo(len: usize) -> Self {
        Self {
            alpha: 0.2,
            beta: 0.0,
            strengths: vec![1.0; len],
        }
    }
}

/// `exp(-i σx b) = cos b·I - i sin b·σx`
pub fn u_free(b: RotationAngle) -> ComplexMatrix {
    let (s, c) = b.0.sin_cos();
    let diag = Complex64::new(c, 0.0);
    let off = Complex64::new(0.0, -s);
    ComplexMatrix::from_vec(2, 2, vec![diag, off, off, diag]).expect("2x2")
}

/// Angular displacement between the judgments at evidence indices `m` and `n`:
/// `α Σ_{j=m+1..n} a_j exp(-β (j-m-1)²)`, with `a_j = strengths[j-1]`.
pub fn angular_displacement(s: &EvidenceSchedule, m: usize, n: usize) -> Result<RotationAngle> {
    if m > n || n > s.strengths.len() {
        return Err(validation(format!(
            "evidence range m={m}, n={n} invalid for {} evidence strengths",
            s.strengths.len()
        )));
    }
    let sum: f64 = (m + 1..=n)
        .map(|j| {
            let k = (j - m - 1) as f64;
            // 0·inf would poison the leading term when beta is infinite
            let decay = if k == 0.0 { 1.0 } else { (-s.beta * k * k).exp() };
            s.strengths[j - 1] * decay
        })
        .sum();
    Ok(RotationAngle(s.alpha * sum))
}

fn utility_block(mu: f64) -> [f64; 4] {
    let norm = (1.0 + mu * mu).sqrt();
    // mu/sqrt(1+mu²) overflows to NaN for |mu| > ~1e154; use the limit
    let (diag, off) = if norm.is_finite() {
        (mu / norm, 1.0 / norm)
    } else {
        (mu.signum(), 0.0)
    };
    [diag, off, off, -diag]
}

/// Utility-driven generator: block-diagonal over the belief index, each block
/// `(1/√(1+μ²))·[[μ, 1], [1, -μ]]` with eigenvalues ±1.
pub fn h_alpha(mu0: f64, mu1: f64) -> ComplexMatrix {
    let b0 = utility_block(mu0);
    let b1 = utility_block(mu1);
    #[rustfmt::skip]
    let data = [
        b0[0], b0[1], 0.0,   0.0,
        b0[2], b0[3], 0.0,   0.0,
        0.0,   0.0,   b1[0], b1[1],
        0.0,   0.0,   b1[2], b1[3],
    ];
    ComplexMatrix::from_real(4, 4, &data).expect("4x4")
}

/// The utility generator with the asymmetric belief-0 block
/// `[[μ₀, μ₀], [1, -μ₀]]/√(1+μ₀²)`. It is not Hermitian unless `μ₀ = 1`, so
/// [`checked_generator`] rejects it; kept for validation tests.
pub fn h_alpha_asymmetric(mu0: f64, mu1: f64) -> ComplexMatrix {
    let mut h = h_alpha(mu0, mu1);
    h[(0, 1)] = Complex64::new(mu0 / (1.0 + mu0 * mu0).sqrt(), 0.0);
    h
}

/// Cognitive-dissonance generator, coupling the belief index to the action index.
pub fn h_beta(gamma: f64) -> ComplexMatrix {
    let g = gamma * FRAC_1_SQRT_2;
    #[rustfmt::skip]
    let data = [
        -g,  0.0, -g,  0.0,
        0.0,  g,  0.0, -g,
        -g,  0.0,  g,  0.0,
        0.0, -g,  0.0, -g,
    ];
    ComplexMatrix::from_real(4, 4, &data).expect("4x4")
}

pub fn h_total(p: &ModelParams) -> ComplexMatrix {
    &h_alpha(p.mu0, p.mu1) + &h_beta(p.gamma)
}

/// Accepts a user-supplied two-qubit generator only if it is 4x4, finite and Hermitian.
pub fn checked_generator(h: ComplexMatrix) -> Result<ComplexMatrix> {
    if h.rows() != 4 || h.cols() != 4 {
        return Err(validation(format!(
            "interaction generator must be 4x4, got {}x{}",
            h.rows(),
            h.cols()
        )));
    }
    if h.as_slice().iter().any(|z| !z.is_finite()) {
        return Err(validation("interaction generator has non-finite entries"));
    }
    let defect = h.hermiticity_defect();
    if defect > HERMITIAN_TOL {
        return Err(Error::Numerical(format!(
            "interaction generator is not Hermitian (defect {defect:.3e})"
        )));
    }
    Ok(h)
}

/// `exp(-i H t')` with `H = h_total(p)`.
pub fn interaction_unitary(p: &ModelParams) -> Result<ComplexMatrix> {
    p.validate()?;
    matexp_hermitian(&h_total(p), p.t_prime)
}

/// Polar angle of the utility block's +1 eigenvector, `arctan(1/μ)` taken on
/// the branch `(0, π)` so that `cos θ = μ/√(1+μ²)` also holds for `μ < 0`.
pub fn utility_angle(mu: f64) -> f64 {
    1.0f64.atan2(mu)
}

fn pointer_state(theta: f64, t: f64) -> Result<StateVector> {
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let e_minus = Complex64::from_polar(1.0, -t);
    let e_plus = Complex64::from_polar(1.0, t);
    let a0 = e_minus * c * c + e_plus * s * s;
    let a1 = (e_minus - e_plus) * c * s;
    StateVector::new(vec![a0, a1])
}

/// Closed-form ancilla states `(ν_a, η_a)` reached from `|0_a⟩` when the belief
/// is `|0_b⟩` or `|1_b⟩`. Valid only for `gamma = 0`.
pub fn ancilla_states_closed_form(p: &ModelParams) -> Result<(StateVector, StateVector)> {
    p.validate()?;
    if p.gamma != 0.0 {
        return Err(Error::Precondition(format!(
            "closed-form ancilla states need gamma = 0 (got {}); use interaction_unitary instead",
            p.gamma
        )));
    }
    Ok((
        pointer_state(utility_angle(p.mu0), p.t_prime)?,
        pointer_state(utility_angle(p.mu1), p.t_prime)?,
    ))
}

/// Ancilla states read off a numerically exponentiated interaction. Fails with
/// a precondition error when the interaction moves belief population, since
/// the pointer states are then undefined.
pub fn ancilla_states_numeric(u: &ComplexMatrix) -> Result<(StateVector, StateVector)> {
    if u.rows() != 4 || u.cols() != 4 {
        return Err(validation("interaction unitary must be 4x4"));
    }
    let leak = [(2, 0), (3, 0), (0, 2), (1, 2)]
        .iter()
        .map(|&(r, c)| u[(r, c)].norm())
        .fold(0.0, f64::max);
    if leak > NORM_TOL {
        return Err(Error::Precondition(format!(
            "interaction is not belief-preserving (leak {leak:.3e}); pointer states undefined"
        )));
    }
    let nu = StateVector::new(vec![u[(0, 0)], u[(1, 0)]])?;
    let eta = StateVector::new(vec![u[(2, 2)], u[(3, 2)]])?;
    Ok((nu, eta))
}

/// `Re⟨ν|η⟩`
pub fn overlap_re(nu: &StateVector, eta: &StateVector) -> Result<f64> {
    Ok(nu.inner(eta)?.re.clamp(-1.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlin::eigvalsh;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn fig1() -> ModelParams {
        ModelParams::new(0.3, 0.6, 0.0, FRAC_PI_2).unwrap()
    }

    #[test]
    fn params_reject_negative_time_and_non_finite_values() {
        assert!(ModelParams::new(0.3, 0.6, 0.0, -0.1).is_err());
        assert!(ModelParams::new(f64::NAN, 0.6, 0.0, 1.0).is_err());
        assert!(ModelParams::new(0.3, 0.6, f64::INFINITY, 1.0).is_err());
    }

    #[test]
    fn u_free_examples() {
        assert_eq!(u_free(RotationAngle(0.0)), ComplexMatrix::identity(2));
        let psi = u_free(RotationAngle(0.2))
            .apply(&[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)])
            .unwrap();
        assert!((psi[0] - Complex64::new(0.2f64.cos(), 0.0)).norm() < 1e-16);
        assert!((psi[1] - Complex64::new(0.0, -(0.2f64.sin()))).norm() < 1e-16);
        let flip = u_free(RotationAngle(FRAC_PI_2))
            .apply(&[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)])
            .unwrap();
        assert!(flip[0].norm() < 1e-16);
        assert!((flip[1] - Complex64::new(0.0, -1.0)).norm() < 1e-16);
    }

    #[test]
    fn angular_displacement_examples() {
        let s = EvidenceSchedule {
            alpha: 1.0,
            beta: 0.0,
            strengths: vec![1.0; 3],
        };
        assert_eq!(angular_displacement(&s, 2, 2).unwrap().0, 0.0);
        assert_eq!(angular_displacement(&s, 0, 3).unwrap().0, 3.0);

        let s = EvidenceSchedule {
            alpha: 0.7,
            beta: 1e6,
            strengths: vec![0.4, 2.0, 5.0],
        };
        for n in 1..=3 {
            assert!((angular_displacement(&s, 0, n).unwrap().0 - 0.7 * 0.4).abs() < 1e-12);
        }
        assert!((angular_displacement(&s, 1, 3).unwrap().0 - 0.7 * 2.0).abs() < 1e-12);
    }

    #[test]
    fn angular_displacement_with_decay() {
        // 0.5·(1 + 2e^{-0.3} + 3e^{-1.2}) for m=0, n=3
        let s = EvidenceSchedule {
            alpha: 0.5,
            beta: 0.3,
            strengths: vec![1.0, 2.0, 3.0],
        };
        let want = 0.5 * (1.0 + 2.0 * (-0.3f64).exp() + 3.0 * (-1.2f64).exp());
        assert!((angular_displacement(&s, 0, 3).unwrap().0 - want).abs() < 1e-15);
    }

    #[test]
    fn angular_displacement_range_errors() {
        let s = EvidenceSchedule::demo(2);
        assert!(angular_displacement(&s, 2, 1).is_err());
        assert!(angular_displacement(&s, 0, 3).is_err());
        assert!((angular_displacement(&s, 0, 1).unwrap().0 - 0.2).abs() < 1e-15);
    }

    #[test]
    fn h_alpha_blocks() {
        let h = h_alpha(0.0, 0.0);
        let sx_blocks = ComplexMatrix::from_real(
            4,
            4,
            &[
                0.0, 1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 1.0, 0.0,
            ],
        )
        .unwrap();
        assert_eq!(h, sx_blocks);

        let h = h_alpha(0.3, 0.6);
        assert!((h[(0, 0)].re - 0.287348).abs() < 1e-6);
        assert!((h[(0, 1)].re - 0.957826).abs() < 1e-6);
        assert!((h[(1, 1)].re + 0.287348).abs() < 1e-6);
        for &(r, c) in &[(0, 2), (0, 3), (1, 2), (1, 3), (2, 0), (3, 1)] {
            assert_eq!(h[(r, c)], Complex64::new(0.0, 0.0));
        }
    }

    #[test]
    fn h_alpha_spectrum_is_plus_minus_one() {
        for &mu in &[-4.0, -0.5, 0.0, 0.3, 1.4, 1e3] {
            let vals = eigvalsh(&h_alpha(mu, mu)).unwrap();
            for (v, want) in vals.iter().zip([-1.0, -1.0, 1.0, 1.0]) {
                assert!((v - want).abs() < 1e-12, "mu={mu}: {vals:?}");
            }
        }
    }

    #[test]
    fn h_beta_sign_pattern() {
        assert_eq!(h_beta(0.0), ComplexMatrix::zeros(4, 4));
        let h = h_beta(2f64.sqrt());
        let minus = [(0, 0), (0, 2), (2, 0), (1, 3), (3, 1), (3, 3)];
        let plus = [(1, 1), (2, 2)];
        for i in 0..4 {
            for j in 0..4 {
                let want = if minus.contains(&(i, j)) {
                    -1.0
                } else if plus.contains(&(i, j)) {
                    1.0
                } else {
                    0.0
                };
                assert!((h[(i, j)].re - want).abs() < 1e-15 && h[(i, j)].im == 0.0, "({i},{j})");
            }
        }
    }

    #[test]
    fn generators_are_exactly_hermitian() {
        let p = ModelParams::new(1.4, 1.4, 2.09, FRAC_PI_2).unwrap();
        for h in [h_alpha(0.3, -7.0), h_beta(2.09), h_total(&p)] {
            assert_eq!(h.hermiticity_defect(), 0.0);
        }
        let zero_gamma = ModelParams { gamma: 0.0, ..p };
        assert_eq!(h_total(&zero_gamma), h_alpha(1.4, 1.4));
    }

    #[test]
    fn asymmetric_utility_generator_is_rejected() {
        assert!(checked_generator(h_alpha(0.3, 0.6)).is_ok());
        let err = checked_generator(h_alpha_asymmetric(0.3, 0.6)).unwrap_err();
        assert!(matches!(err, Error::Numerical(_)), "{err}");
        assert!(checked_generator(ComplexMatrix::identity(2)).is_err());
    }

    #[test]
    fn closed_form_trivial_cases() {
        let p = ModelParams::new(0.3, 0.6, 0.0, 0.0).unwrap();
        let (nu, eta) = ancilla_states_closed_form(&p).unwrap();
        let zero = StateVector::basis(2, 0).unwrap();
        assert!((nu.inner(&zero).unwrap().re - 1.0).abs() < 1e-15);
        assert!((eta.inner(&zero).unwrap().re - 1.0).abs() < 1e-15);

        let p = ModelParams::new(0.8, 0.8, 0.0, 1.1).unwrap();
        let (nu, eta) = ancilla_states_closed_form(&p).unwrap();
        assert_eq!(nu, eta);
    }

    #[test]
    fn closed_form_requires_zero_gamma() {
        let p = ModelParams::new(1.4, 1.4, 2.09, FRAC_PI_2).unwrap();
        assert!(matches!(ancilla_states_closed_form(&p), Err(Error::Precondition(_))));
        let u = interaction_unitary(&p).unwrap();
        assert!(matches!(ancilla_states_numeric(&u), Err(Error::Precondition(_))));
    }

    #[test]
    fn closed_form_matches_numeric_exponential_at_fig1() {
        let p = fig1();
        let (nu, eta) = ancilla_states_closed_form(&p).unwrap();
        let (nu_n, eta_n) = ancilla_states_numeric(&interaction_unitary(&p).unwrap()).unwrap();
        for (a, b) in nu
            .amplitudes()
            .iter()
            .zip(nu_n.amplitudes())
            .chain(eta.amplitudes().iter().zip(eta_n.amplitudes()))
        {
            assert!((a - b).norm() < 1e-12);
        }
        let r = overlap_re(&nu, &eta).unwrap();
        assert!(r > 0.0 && r < 1.0);
        // independent: at a quarter period the pointers are (cos θ, sin θ) up to a phase
        let want = (utility_angle(0.3) - utility_angle(0.6)).cos();
        assert!((r - want).abs() < 1e-12);
    }

    #[test]
    fn negative_utilities_reach_orthogonal_pointers() {
        let p = ModelParams::new(1.0, -1.0, 0.0, FRAC_PI_2).unwrap();
        let (nu, eta) = ancilla_states_closed_form(&p).unwrap();
        assert!(overlap_re(&nu, &eta).unwrap().abs() < 1e-15);
        let (nu_n, eta_n) = ancilla_states_numeric(&interaction_unitary(&p).unwrap()).unwrap();
        assert!(overlap_re(&nu_n, &eta_n).unwrap().abs() < 1e-12);
        assert!((utility_angle(-1.0) - 3.0 * PI / 4.0).abs() < 1e-15);
    }

    #[test]
    fn overlap_examples() {
        let a = StateVector::basis(2, 0).unwrap();
        let b = StateVector::basis(2, 1).unwrap();
        assert_eq!(overlap_re(&a, &a).unwrap(), 1.0);
        assert_eq!(overlap_re(&a, &b).unwrap(), 0.0);
        assert!(overlap_re(&a, &StateVector::basis(4, 0).unwrap()).is_err());
    }
}
