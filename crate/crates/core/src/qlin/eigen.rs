//! Cyclic Jacobi diagonalisation of Hermitian matrices through their real
//! symmetric embedding `[[Re H, -Im H], [Im H, Re H]]`.
//!
//! Every eigenvalue of an `n x n` Hermitian matrix appears twice in the
//! `2n x 2n` embedding, so the complex spectrum is read off pairwise.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use super::{HERMITIAN_TOL, JACOBI_OFF_TOL};
use crate::error::{validation, Error, Result};

const MAX_SWEEPS: usize = 100;

/// Dense symmetric matrix stored row-major.
#[derive(Debug, Clone)]
pub(crate) struct RealSymmetric {
    n: usize,
    a: Vec<f64>,
}

/// Eigen-decomposition `S = V diag(values) Vᵀ` of a real symmetric matrix.
#[derive(Debug, Clone)]
pub(crate) struct RealEigen {
    pub n: usize,
    pub values: Vec<f64>,
    /// Column `k` is the eigenvector for `values[k]`; row-major storage.
    pub vectors: Vec<f64>,
}

impl RealSymmetric {
    /// Real embedding of a Hermitian matrix, after checking Hermiticity.
    pub fn embed(h: &ComplexMatrix) -> Result<Self> {
        if !h.is_square() {
            return Err(validation(format!(
                "expected a square matrix, got {}x{}",
                h.rows(),
                h.cols()
            )));
        }
        let defect = h.hermiticity_defect();
        if defect.is_nan() || defect > HERMITIAN_TOL {
            return Err(validation(format!(
                "matrix is not Hermitian (defect {defect:.3e} > {HERMITIAN_TOL:e})"
            )));
        }
        let n = h.rows();
        let m = 2 * n;
        let mut a = vec![0.0; m * m];
        for i in 0..n {
            for j in 0..n {
                // symmetrise so tiny Hermiticity defects cannot break Jacobi
                let z = 0.5 * (h[(i, j)] + h[(j, i)].conj());
                a[i * m + j] = z.re;
                a[(i + n) * m + (j + n)] = z.re;
                a[i * m + (j + n)] = -z.im;
                a[(i + n) * m + j] = z.im;
            }
        }
        Ok(Self { n: m, a })
    }

    fn off_norm(&self) -> f64 {
        let n = self.n;
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += self.a[i * n + j] * self.a[i * n + j];
                }
            }
        }
        s.sqrt()
    }

    pub fn jacobi(mut self) -> Result<RealEigen> {
        let n = self.n;
        let mut v = vec![0.0; n * n];
        for i in 0..n {
            v[i * n + i] = 1.0;
        }
        let scale = self.a.iter().map(|x| x * x).sum::<f64>().sqrt().max(1.0);
        if !scale.is_finite() {
            return Err(Error::Numerical("non-finite matrix entries".into()));
        }
        let mut sweeps = 0;
        while self.off_norm() > JACOBI_OFF_TOL * scale {
            if sweeps == MAX_SWEEPS {
                return Err(Error::Numerical(format!(
                    "Jacobi eigensolver did not converge in {MAX_SWEEPS} sweeps (off-diagonal norm {:.3e})",
                    self.off_norm()
                )));
            }
            sweeps += 1;
            for p in 0..n {
                for q in (p + 1)..n {
                    self.rotate(&mut v, p, q);
                }
            }
        }
        let values = (0..n).map(|i| self.a[i * n + i]).collect();
        Ok(RealEigen { n, values, vectors: v })
    }

    /// One Jacobi rotation annihilating `a[p][q]`.
    fn rotate(&mut self, v: &mut [f64], p: usize, q: usize) {
        let n = self.n;
        let apq = self.a[p * n + q];
        if apq == 0.0 {
            return;
        }
        let app = self.a[p * n + p];
        let aqq = self.a[q * n + q];
        let theta = (aqq - app) / (2.0 * apq);
        let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
        let t = if theta == 0.0 { 1.0 } else { t };
        let c = 1.0 / (t * t + 1.0).sqrt();
        let s = t * c;

        for k in 0..n {
            let akp = self.a[k * n + p];
            let akq = self.a[k * n + q];
            self.a[k * n + p] = c * akp - s * akq;
            self.a[k * n + q] = s * akp + c * akq;
        }
        for k in 0..n {
            let apk = self.a[p * n + k];
            let aqk = self.a[q * n + k];
            self.a[p * n + k] = c * apk - s * aqk;
            self.a[q * n + k] = s * apk + c * aqk;
        }
        self.a[p * n + q] = 0.0;
        self.a[q * n + p] = 0.0;
        for k in 0..n {
            let vkp = v[k * n + p];
            let vkq = v[k * n + q];
            v[k * n + p] = c * vkp - s * vkq;
            v[k * n + q] = s * vkp + c * vkq;
        }
    }
}

impl RealEigen {
    /// `V diag(f(values)) Vᵀ`
    pub fn apply_fn(&self, f: impl Fn(f64) -> f64) -> Vec<f64> {
        let n = self.n;
        let fv: Vec<f64> = self.values.iter().map(|&x| f(x)).collect();
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let s: f64 = (0..n)
                    .map(|k| self.vectors[i * n + k] * fv[k] * self.vectors[j * n + k])
                    .sum();
                out[i * n + j] = s;
                out[j * n + i] = s;
            }
        }
        out
    }
}

/// Ascending eigenvalues of a Hermitian matrix.
pub fn eigvalsh(h: &ComplexMatrix) -> Result<Vec<f64>> {
    let eig = RealSymmetric::embed(h)?.jacobi()?;
    let mut vals = eig.values;
    vals.sort_by(f64::total_cmp);
    Ok(vals.chunks_exact(2).map(|p| 0.5 * (p[0] + p[1])).collect())
}

/// `exp(-i h t)` for Hermitian `h`, via the spectral decomposition of `h`.
///
/// In the real embedding, multiplication by `i` is the block matrix
/// `J = [[0, -I], [I, 0]]`, which commutes with the embedded `h`. Hence the
/// embedding of `exp(-i h t)` is `cos(S t) - J sin(S t)`, whose top-left and
/// bottom-left blocks are the real and imaginary parts of the result.
pub fn matexp_hermitian(h: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
    if !t.is_finite() {
        return Err(validation(format!("evolution time must be finite, got {t}")));
    }
    let eig = RealSymmetric::embed(h)?.jacobi()?;
    let m = eig.n;
    let n = m / 2;
    let cos = eig.apply_fn(|x| (x * t).cos());
    let sin = eig.apply_fn(|x| (x * t).sin());
    // (cos - J sin) top-left = C11 + S21, bottom-left = C21 - S11
    let mut out = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let re = cos[i * m + j] + sin[(i + n) * m + j];
            let im = cos[(i + n) * m + j] - sin[i * m + j];
            out[(i, j)] = Complex64::new(re, im);
        }
    }
    Ok(out)
}
