use num_complex::Complex64;

use super::operator::{Cost, LinearOperator};
use crate::error::{Error, Result};
use crate::linalg::{Tridiagonal, TridiagonalLu};
use crate::specfun::PadeCoefficients;

/// Damping ε = 0.05 k^{1/3}.
pub fn default_damping(k: f64) -> f64 {
    0.05 * k.cbrt()
}

/// Rotated-Padé Galerkin matrix of √(X − k²):
/// v ↦ ik (C₀ M v + Σ_j A_j X (B_j X − (k + iε)² M)⁻¹ M v).
pub struct SqrtPreconditioner {
    pub k: f64,
    pub eps: f64,
    pub coeffs: PadeCoefficients,
    x: Tridiagonal<f64>,
    m: Tridiagonal<f64>,
    shifted: Vec<TridiagonalLu<Complex64>>,
}

pub fn build_pade_sqrt(
    x: &Tridiagonal<f64>,
    m: &Tridiagonal<f64>,
    k: f64,
    coeffs: &PadeCoefficients,
    eps: f64,
) -> Result<SqrtPreconditioner> {
    if !(k > 0.0) {
        return Err(Error::InvalidParameter(format!("Padé square root needs k > 0, got {k}")));
    }
    if x.dim() != m.dim() {
        return Err(Error::Dimension(x.dim(), m.dim()));
    }
    let kappa2 = Complex64::new(k, eps).powi(2);
    let xc = x.to_complex();
    let mc = m.to_complex();
    let shifted = coeffs
        .b_rot
        .iter()
        .map(|&bj| Tridiagonal::combine(bj, &xc, -kappa2, &mc).factor())
        .collect::<Result<Vec<_>>>()?;
    Ok(SqrtPreconditioner { k, eps, coeffs: coeffs.clone(), x: x.clone(), m: m.clone(), shifted })
}

impl LinearOperator for SqrtPreconditioner {
    fn dim(&self) -> usize {
        self.m.dim()
    }

    fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let mv = self.m.apply(v);
        let mut acc: Vec<Complex64> = mv.iter().map(|z| z * self.coeffs.c0_rot).collect();
        for (lu, aj) in self.shifted.iter().zip(&self.coeffs.a_rot) {
            let w = self.x.apply(&lu.solve(&mv));
            for (a, wi) in acc.iter_mut().zip(w) {
                *a += aj * wi;
            }
        }
        let ik = Complex64::new(0.0, self.k);
        acc.into_iter().map(|z| ik * z).collect()
    }

    fn cost(&self) -> Cost {
        let n = self.dim() as f64;
        let np = self.shifted.len();
        Cost {
            sparse_matvecs: 1 + np,
            sparse_solves: np,
            flops: n * (3.0 + 8.0 * np as f64),
            ..Default::default()
        }
    }
}
