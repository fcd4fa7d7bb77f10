//! Mathieu characteristic values from truncated Fourier tridiagonal matrices.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    /// ce_n, n ≥ 0
    Even,
    /// se_n, n ≥ 1
    Odd,
}

/// Symmetric tridiagonal matrix (diagonal, off-diagonal) of size `size`
/// for the family containing the n-th function, and the index inside it.
fn family(parity: Parity, n: usize, q: f64, size: usize) -> (Vec<f64>, Vec<f64>, usize) {
    let mut diag = vec![0.0; size];
    let mut off = vec![q; size.saturating_sub(1)];
    let index;
    match (parity, n % 2) {
        (Parity::Even, 0) => {
            for (r, d) in diag.iter_mut().enumerate() {
                *d = (2 * r) as f64 * (2 * r) as f64;
            }
            if size > 1 {
                off[0] = std::f64::consts::SQRT_2 * q;
            }
            index = n / 2;
        }
        (Parity::Even, _) => {
            for (r, d) in diag.iter_mut().enumerate() {
                *d = (2 * r + 1) as f64 * (2 * r + 1) as f64;
            }
            diag[0] += q;
            index = (n - 1) / 2;
        }
        (Parity::Odd, 1) => {
            for (r, d) in diag.iter_mut().enumerate() {
                *d = (2 * r + 1) as f64 * (2 * r + 1) as f64;
            }
            diag[0] -= q;
            index = (n - 1) / 2;
        }
        (Parity::Odd, _) => {
            for (r, d) in diag.iter_mut().enumerate() {
                *d = (2 * r + 2) as f64 * (2 * r + 2) as f64;
            }
            index = (n - 2) / 2;
        }
    }
    if off.is_empty() {
        off.clear();
    }
    (diag, off, index)
}

/// Number of eigenvalues of the symmetric tridiagonal matrix below `x`.
pub(crate) fn sturm_count(diag: &[f64], off: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut d = diag[0] - x;
    if d < 0.0 {
        count += 1;
    }
    for i in 1..diag.len() {
        let denom = if d == 0.0 { f64::EPSILON * (off[i - 1].abs() + 1.0) } else { d };
        d = diag[i] - x - off[i - 1] * off[i - 1] / denom;
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

/// k-th smallest eigenvalue (0-based) of a symmetric tridiagonal matrix.
pub(crate) fn tridiagonal_eigenvalue(diag: &[f64], off: &[f64], k: usize) -> f64 {
    let n = diag.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let r = if i > 0 { off[i - 1].abs() } else { 0.0 } + if i + 1 < n { off[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - r);
        hi = hi.max(diag[i] + r);
    }
    for _ in 0..300 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if sturm_count(diag, off, mid) > k {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Characteristic value a_n(q) (even parity) or b_n(q) (odd parity).
pub fn mathieu_char(parity: Parity, n: usize, q: f64) -> Result<f64> {
    if parity == Parity::Odd && n == 0 {
        return Err(Error::InvalidParameter("odd Mathieu functions start at n = 1".into()));
    }
    if q < 0.0 {
        return Err(Error::InvalidParameter(format!("q = {q} must be nonnegative")));
    }
    let size = 64 + n;
    let (d, e, idx) = family(parity, n, q, size);
    let a = tridiagonal_eigenvalue(&d, &e, idx);
    let (d2, e2, _) = family(parity, n, q, 2 * size);
    let b = tridiagonal_eigenvalue(&d2, &e2, idx);
    let diff = (a - b).abs();
    if diff > 1e-10 * (1.0 + b.abs()) {
        return Err(Error::MathieuTruncation { n, q, diff });
    }
    Ok(b)
}

/// Eigenvalue of −(ω∂)² − k²ω² on the flat segment for the mode that
/// reduces to T_n at k = 0: a_n(q) − 2q with q = k²/4.
pub fn dirichlet_mode_eigenvalue(n: usize, k: f64) -> Result<f64> {
    let q = 0.25 * k * k;
    Ok(mathieu_char(Parity::Even, n, q)? - 2.0 * q)
}

/// Large-n expansion of `dirichlet_mode_eigenvalue`: n² − k²/2 + k⁴/(32(n²−1)).
pub fn dirichlet_mode_asymptotic(n: usize, k: f64) -> f64 {
    let n2 = (n * n) as f64;
    n2 - 0.5 * k * k + k.powi(4) / (32.0 * (n2 - 1.0))
}
