use std::f64::consts::PI;

use num_complex::Complex64;

use super::bessel::{bessel01, j0_y0, j0_y0_regular, EULER_GAMMA};
use crate::error::{Error, Result};

/// Fundamental solution of −Δ − k² in the plane.
pub fn green_kernel(k: f64, r: f64) -> Result<Complex64> {
    if r <= 0.0 {
        return Err(Error::SingularKernel);
    }
    Ok(green_unchecked(k, r))
}

#[inline]
pub(crate) fn green_unchecked(k: f64, r: f64) -> Complex64 {
    if k == 0.0 {
        Complex64::new(-r.ln() / (2.0 * PI), 0.0)
    } else {
        let (j0, y0) = j0_y0(k * r);
        Complex64::new(-0.25 * y0, 0.25 * j0)
    }
}

/// G_k(r) + ln(r)/(2π), with its limit at r = 0.
pub fn smooth_remainder(k: f64, r: f64) -> Complex64 {
    if k == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    if r == 0.0 {
        return Complex64::new(-(EULER_GAMMA + (0.5 * k).ln()) / (2.0 * PI), 0.25);
    }
    let (a, b) = log_split(k, r);
    // a ln r + b + ln r/(2π), with a + 1/(2π) = (1 − J0)/(2π) = O(r²)
    (a + 1.0 / (2.0 * PI)) * r.ln() + b
}

/// Split G_k(r) = a(r) ln r + b(r) with a, b smooth (even) in r.
#[inline]
pub fn log_split(k: f64, r: f64) -> (f64, Complex64) {
    if k == 0.0 {
        return (-1.0 / (2.0 * PI), Complex64::new(0.0, 0.0));
    }
    let (j0, y0r) = j0_y0_regular(k * r);
    let a = -j0 / (2.0 * PI);
    let b = Complex64::new(-(0.5 * k).ln() / (2.0 * PI) * j0 - 0.25 * y0r, 0.25 * j0);
    (a, b)
}

/// dG_k/dr.
pub fn green_radial_derivative(k: f64, r: f64) -> Complex64 {
    if k == 0.0 {
        Complex64::new(-1.0 / (2.0 * PI * r), 0.0)
    } else {
        let b = bessel01(k * r);
        // (i/4) d/dr H0(kr) = −(ik/4) (J1 + i Y1)
        Complex64::new(0.25 * k * b.y1, -0.25 * k * b.j1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laplace_values() {
        assert!(green_kernel(0.0, 1.0).unwrap().norm() < 1e-16);
        let g = green_kernel(0.0, (-2.0 * PI).exp()).unwrap();
        assert!((g.re - 1.0).abs() < 1e-14);
        assert!(matches!(green_kernel(1.0, 0.0), Err(Error::SingularKernel)));
    }

    #[test]
    fn helmholtz_value() {
        let g = green_kernel(1.0, 1.0).unwrap();
        let expect = Complex64::new(0.0, 0.25) * Complex64::new(0.7651976865579666, 0.08825696421567696);
        assert!((g - expect).norm() < 1e-14);
        assert!((g.re + 0.0220642).abs() < 1e-7 && (g.im - 0.1912994).abs() < 1e-7);
    }

    #[test]
    fn remainder_limit_and_continuity() {
        let lim = smooth_remainder(1.0, 0.0);
        let expect = Complex64::new(-(EULER_GAMMA + 0.5f64.ln()) / (2.0 * PI), 0.25);
        assert!((lim - expect).norm() < 1e-15);
        assert!((smooth_remainder(1.0, 1e-8) - lim).norm() < 1e-12);
        assert!((smooth_remainder(1.0, 1e-6) - smooth_remainder(1.0, 2e-6)).norm() < 1e-5);
        let r = 0.7;
        let direct = green_kernel(3.0, r).unwrap() + r.ln() / (2.0 * PI);
        assert!((smooth_remainder(3.0, r) - direct).norm() < 1e-14);
    }

    #[test]
    fn radial_derivative_by_differences() {
        for &(k, r) in &[(0.0, 0.3), (2.0, 0.4), (5.0, 3.1), (1.0, 30.0)] {
            let h = 1e-6;
            let fd = (green_unchecked(k, r + h) - green_unchecked(k, r - h)) / (2.0 * h);
            assert!((fd - green_radial_derivative(k, r)).norm() < 1e-8);
        }
    }
}
