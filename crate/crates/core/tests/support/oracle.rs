//! Brute-force reference for two-qubit runs, sharing no code with the crate:
//! nalgebra 4x4 matrices, Taylor-series exponentials with scaling and squaring,
//! explicit Kronecker products.
#![allow(dead_code)]

use nalgebra::{Matrix2, Matrix4, Vector4};
use num_complex::Complex64;

pub type M4 = Matrix4<Complex64>;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn h_alpha(mu0: f64, mu1: f64) -> M4 {
    let mut h = M4::zeros();
    for (off, mu) in [(0, mu0), (2, mu1)] {
        let n = (1.0 + mu * mu).sqrt();
        h[(off, off)] = c(mu / n);
        h[(off, off + 1)] = c(1.0 / n);
        h[(off + 1, off)] = c(1.0 / n);
        h[(off + 1, off + 1)] = c(-mu / n);
    }
    h
}

pub fn h_beta(gamma: f64) -> M4 {
    let g = gamma / 2f64.sqrt();
    let mut h = M4::zeros();
    for (i, j) in [(0, 0), (0, 2), (2, 0), (1, 3), (3, 1), (3, 3)] {
        h[(i, j)] = c(-g);
    }
    for (i, j) in [(1, 1), (2, 2)] {
        h[(i, j)] = c(g);
    }
    h
}

/// `exp(a)` by scaling and squaring around a truncated Taylor series.
pub fn expm(a: &M4) -> M4 {
    let norm: f64 = a.iter().map(|z| z.norm()).sum();
    let mut squarings = 0;
    let mut scale = 1.0;
    while norm * scale > 0.25 {
        scale *= 0.5;
        squarings += 1;
    }
    let a = a * c(scale);
    let mut term = M4::identity();
    let mut sum = M4::identity();
    for k in 1..40 {
        term = term * a * c(1.0 / k as f64);
        sum += term;
    }
    for _ in 0..squarings {
        sum = sum * sum;
    }
    sum
}

pub fn interaction(mu0: f64, mu1: f64, gamma: f64, t_prime: f64) -> M4 {
    let h = h_alpha(mu0, mu1) + h_beta(gamma);
    expm(&(h * Complex64::new(0.0, -t_prime)))
}

pub fn belief_rotation(b: f64) -> M4 {
    let (s, co) = b.sin_cos();
    let u = Matrix2::new(c(co), Complex64::new(0.0, -s), Complex64::new(0.0, -s), c(co));
    u.kronecker(&Matrix2::identity())
}

pub fn belief_survival(psi: &Vector4<Complex64>) -> f64 {
    psi[0].norm_sqr() + psi[1].norm_sqr()
}

/// Survival of `|0_b⟩` before the evaluation, right after it, and after the second leg.
pub fn single_run(mu0: f64, mu1: f64, gamma: f64, t_prime: f64, b01: f64, b12: f64) -> (f64, f64, f64) {
    let psi0 = Vector4::new(c(1.0), c(0.0), c(0.0), c(0.0));
    let psi1 = belief_rotation(b01) * psi0;
    let psi2 = interaction(mu0, mu1, gamma, t_prime) * psi1;
    let psi3 = belief_rotation(b12) * psi2;
    (belief_survival(&psi1), belief_survival(&psi2), belief_survival(&psi3))
}

/// `Re⟨ν|η⟩` read from the columns of the exponentiated utility generator.
pub fn pointer_overlap(mu0: f64, mu1: f64, t_prime: f64) -> f64 {
    let u = interaction(mu0, mu1, 0.0, t_prime);
    (u[(0, 0)].conj() * u[(2, 2)] + u[(1, 0)].conj() * u[(3, 2)]).re
}

// Values produced by this oracle (and independently by scipy.linalg.expm)
// before the crate was implemented.
pub const FIG1_OVERLAP: f64 = 0.969_168_531_093_622_3;
pub const FIG1_P_INTERACTION_AT_0_6: f64 = 0.685_485_287_627_673;
pub const FIG2_P_BEFORE: f64 = 0.960_530_497_001_442_6;
pub const FIG2_P_AFTER: f64 = 0.866_369_448_463_228_6;
pub const FIG2_P_INTERACTION_AT_0_8: f64 = 0.618_088_316_435_488_7;
