//! Rotated Padé approximants of √(1 + z).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PadeCoefficients {
    pub order: usize,
    pub theta: f64,
    pub c0: f64,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub c0_rot: Complex64,
    pub a_rot: Vec<Complex64>,
    pub b_rot: Vec<Complex64>,
}

/// Unrotated real approximant R_{N_p}(z) = 1 + Σ a_j z / (1 + b_j z).
fn real_pade(a: &[f64], b: &[f64], z: Complex64) -> Complex64 {
    let mut s = Complex64::new(1.0, 0.0);
    for (aj, bj) in a.iter().zip(b) {
        s += aj * z / (1.0 + bj * z);
    }
    s
}

pub fn pade_coefficients(order: usize, theta: f64) -> Result<PadeCoefficients> {
    if order == 0 {
        return Err(Error::InvalidParameter("Padé order must be at least 1".into()));
    }
    if !(theta > -std::f64::consts::PI && theta < std::f64::consts::PI) {
        return Err(Error::InvalidParameter(format!("branch angle {theta} outside (−π, π)")));
    }
    let m = (2 * order + 1) as f64;
    let a: Vec<f64> = (1..=order)
        .map(|j| 2.0 / m * (j as f64 * std::f64::consts::PI / m).sin().powi(2))
        .collect();
    let b: Vec<f64> = (1..=order)
        .map(|j| (j as f64 * std::f64::consts::PI / m).cos().powi(2))
        .collect();
    let rot = Complex64::from_polar(1.0, -theta);
    let half = Complex64::from_polar(1.0, 0.5 * theta);
    let beta = rot - 1.0;
    let c0_rot = half * real_pade(&a, &b, beta);
    let mut a_rot = Vec::with_capacity(order);
    let mut b_rot = Vec::with_capacity(order);
    for (aj, bj) in a.iter().zip(&b) {
        let d = 1.0 + bj * beta;
        a_rot.push(half.conj() * aj / (d * d));
        b_rot.push(rot * bj / d);
    }
    Ok(PadeCoefficients { order, theta, c0: 1.0, a, b, c0_rot, a_rot, b_rot })
}

/// C_0 + Σ A_j z / (1 + B_j z).
pub fn pade_sqrt_scalar(z: Complex64, coeffs: &PadeCoefficients) -> Result<Complex64> {
    let mut s = coeffs.c0_rot;
    for (j, (aj, bj)) in coeffs.a_rot.iter().zip(&coeffs.b_rot).enumerate() {
        let d = 1.0 + bj * z;
        if d.norm() <= 1e-14 * (1.0 + (bj * z).norm()) {
            return Err(Error::PadePole { term: j + 1 });
        }
        s += aj * z / d;
    }
    Ok(s)
}

/// √(1 + z) on the branch rotated by θ: e^{iθ/2} √((1 + z) e^{−iθ}).
pub fn rotated_sqrt(z: Complex64, theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, 0.5 * theta) * ((1.0 + z) * Complex64::from_polar(1.0, -theta)).sqrt()
}

/// Error bound 2√r |γ(r, θ)|^{2N_p+1}, γ = (√r e^{iθ/2} − 1)/(√r e^{iθ/2} + 1), r = |1 + z|.
pub fn classical_bound(z: Complex64, theta: f64, order: usize) -> f64 {
    let r = (1.0 + z).norm();
    let s = Complex64::from_polar(r.sqrt(), 0.5 * theta);
    let gamma = ((s - 1.0) / (s + 1.0)).norm();
    2.0 * r.sqrt() * gamma.powi(2 * order as i32 + 1)
}

/// Sharp bound 2|w| |γ|^m / (1 − |γ|^m) with w the rotated principal root and
/// γ = (w − 1)/(w + 1), plus a roundoff floor.
pub fn sharp_bound(z: Complex64, theta: f64, order: usize) -> f64 {
    let w = ((1.0 + z) * Complex64::from_polar(1.0, -theta)).sqrt();
    let g = ((w - 1.0) / (w + 1.0)).norm().powi(2 * order as i32 + 1);
    2.0 * w.norm() * g / (1.0 - g) + 1e-14 * (1.0 + w.norm()) * (order as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn order_one_closed_form() {
        let c = pade_coefficients(1, 0.0).unwrap();
        assert!((c.a[0] - 0.5).abs() < 1e-15);
        assert!((c.b[0] - 0.25).abs() < 1e-15);
    }

    #[test]
    fn zero_rotation_is_identity() {
        for np in [1, 5, 15, 60] {
            let c = pade_coefficients(np, 0.0).unwrap();
            assert!((c.c0_rot - 1.0).norm() < 1e-14);
            for j in 0..np {
                assert!((c.a_rot[j] - c.a[j]).norm() < 1e-14);
                assert!((c.b_rot[j] - c.b[j]).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(pade_coefficients(0, 0.1).is_err());
        assert!(pade_coefficients(3, PI).is_err());
    }

    #[test]
    fn scalar_examples() {
        let c = pade_coefficients(15, PI / 3.0).unwrap();
        let z = Complex64::new(0.0, 0.0);
        let v = pade_sqrt_scalar(z, &c).unwrap();
        assert!((v - 1.0).norm() <= classical_bound(z, PI / 3.0, 15) + 1e-15);
        let z = Complex64::new(3.0, 0.0);
        let v = pade_sqrt_scalar(z, &c).unwrap();
        assert!((v - 2.0).norm() <= classical_bound(z, PI / 3.0, 15) + 1e-15);
        let z = Complex64::new(-2.0, 0.0);
        let v = pade_sqrt_scalar(z, &c).unwrap();
        let exact = rotated_sqrt(z, PI / 3.0);
        assert!((exact - Complex64::new(0.0, 1.0)).norm() < 1e-14);
        assert!((v - exact).norm() <= sharp_bound(z, PI / 3.0, 15));
    }

    #[test]
    fn sharp_bound_holds_on_grid() {
        for &r in &[0.25, 1.0, 4.0, 16.0, 100.0] {
            for &theta in &[PI / 6.0, PI / 3.0, PI / 2.0] {
                for &np in &[5, 15, 50] {
                    let c = pade_coefficients(np, theta).unwrap();
                    for phase in [0.0, 0.7, 2.0, PI] {
                        let z = Complex64::from_polar(r, phase) - 1.0;
                        let v = pade_sqrt_scalar(z, &c).unwrap();
                        let err = (v - rotated_sqrt(z, theta)).norm();
                        assert!(err <= sharp_bound(z, theta, np), "r={r} θ={theta} Np={np} φ={phase}: {err}");
                    }
                }
            }
        }
    }
}
