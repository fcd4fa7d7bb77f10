//! Unrestarted GMRES with left preconditioning.

use std::path::Path;
use std::time::Instant;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::norm2;
use crate::precond::LinearOperator;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GmresConfig {
    pub tol: f64,
    pub max_iter: usize,
    /// Evaluate ‖Ax − b‖/‖b‖ after every iteration (one extra product with A each).
    pub track_true_residual: bool,
}

impl Default for GmresConfig {
    fn default() -> Self {
        Self { tol: 1e-8, max_iter: 500, track_true_residual: false }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    pub iterations: usize,
    /// ‖M(Ax_j − b)‖/‖Mb‖, starting with the initial guess x₀ = 0.
    pub relative_residual_history: Vec<f64>,
    /// ‖Ax_j − b‖/‖b‖ per iteration when tracked.
    pub true_residual_history: Vec<f64>,
    pub final_true_residual: f64,
    pub converged: bool,
    pub breakdown: bool,
    pub dof_count: usize,
    pub wall_time: f64,
    pub config: GmresConfig,
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn axpy(alpha: Complex64, x: &[Complex64], y: &mut [Complex64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

fn relative_true_residual(a: &dyn LinearOperator, x: &[Complex64], b: &[Complex64], bnorm: f64) -> f64 {
    let ax = a.apply(x);
    let r: Vec<Complex64> = ax.iter().zip(b).map(|(p, q)| p - q).collect();
    norm2(&r) / bnorm
}

/// Solves A x = b by GMRES on M A x = M b.
pub fn gmres(
    a: &dyn LinearOperator,
    b: &[Complex64],
    m: &dyn LinearOperator,
    cfg: &GmresConfig,
) -> Result<(Vec<Complex64>, SolveReport)> {
    let n = b.len();
    if a.dim() != n {
        return Err(Error::Dimension(a.dim(), n));
    }
    if m.dim() != n {
        return Err(Error::Dimension(m.dim(), n));
    }
    let start = Instant::now();
    let zero = Complex64::new(0.0, 0.0);
    let mut report = SolveReport {
        iterations: 0,
        relative_residual_history: vec![1.0],
        true_residual_history: Vec::new(),
        final_true_residual: 0.0,
        converged: false,
        breakdown: false,
        dof_count: n,
        wall_time: 0.0,
        config: *cfg,
    };
    let bnorm = norm2(b);
    let r0 = m.apply(b);
    let beta = norm2(&r0);
    if bnorm == 0.0 || beta == 0.0 {
        report.relative_residual_history = vec![0.0];
        report.converged = true;
        report.wall_time = start.elapsed().as_secs_f64();
        return Ok((vec![zero; n], report));
    }
    if cfg.track_true_residual {
        report.true_residual_history.push(1.0);
    }
    let mut basis: Vec<Vec<Complex64>> = vec![r0.iter().map(|z| z / beta).collect()];
    // columns of the rotated Hessenberg matrix (upper triangular part)
    let mut r_cols: Vec<Vec<Complex64>> = Vec::new();
    let mut rotations: Vec<(f64, Complex64)> = Vec::new();
    let mut g = vec![Complex64::new(beta, 0.0)];
    let solution = |r_cols: &Vec<Vec<Complex64>>, g: &[Complex64], basis: &Vec<Vec<Complex64>>| {
        let j = r_cols.len();
        let mut y = vec![zero; j];
        for i in (0..j).rev() {
            let mut s = g[i];
            for l in i + 1..j {
                s -= r_cols[l][i] * y[l];
            }
            y[i] = s / r_cols[i][i];
        }
        let mut x = vec![zero; n];
        for (yi, v) in y.iter().zip(basis) {
            axpy(*yi, v, &mut x);
        }
        x
    };
    for j in 0..cfg.max_iter {
        let mut w = m.apply(&a.apply(&basis[j]));
        let before = norm2(&w);
        let mut h = vec![zero; j + 2];
        for (i, v) in basis.iter().enumerate() {
            let c = dot(v, &w);
            h[i] = c;
            axpy(-c, v, &mut w);
        }
        let mut after = norm2(&w);
        if after * 1e3 < before {
            for (i, v) in basis.iter().enumerate() {
                let c = dot(v, &w);
                h[i] += c;
                axpy(-c, v, &mut w);
            }
            after = norm2(&w);
        }
        h[j + 1] = Complex64::new(after, 0.0);
        for (i, &(c, s)) in rotations.iter().enumerate() {
            let t = c * h[i] + s * h[i + 1];
            h[i + 1] = -s.conj() * h[i] + c * h[i + 1];
            h[i] = t;
        }
        let (a0, b0) = (h[j], after);
        let (c, s, r) = if a0.norm() == 0.0 {
            (0.0, Complex64::new(1.0, 0.0), Complex64::new(b0, 0.0))
        } else {
            let nrm = a0.norm().hypot(b0);
            let phase = a0 / a0.norm();
            (a0.norm() / nrm, phase * b0 / nrm, phase * nrm)
        };
        rotations.push((c, s));
        h[j] = r;
        h.truncate(j + 1);
        r_cols.push(h);
        let gj = g[j];
        g.push(-s.conj() * gj);
        g[j] = c * gj;
        let res = g[j + 1].norm() / beta;
        report.iterations = j + 1;
        report.relative_residual_history.push(res);
        let happy = after <= 1e-14 * before;
        if cfg.track_true_residual {
            let x = solution(&r_cols, &g, &basis);
            report.true_residual_history.push(relative_true_residual(a, &x, b, bnorm));
        }
        if res <= cfg.tol {
            report.converged = true;
            break;
        }
        if happy {
            report.breakdown = true;
            break;
        }
        basis.push(w.iter().map(|z| z / after).collect());
    }
    let x = solution(&r_cols, &g, &basis);
    report.final_true_residual = relative_true_residual(a, &x, b, bnorm);
    report.converged = *report.relative_residual_history.last().unwrap() <= cfg.tol;
    report.wall_time = start.elapsed().as_secs_f64();
    Ok((x, report))
}

impl SolveReport {
    /// Columns: iteration, preconditioned residual, true residual.
    pub fn write_history_csv(&self, path: &Path) -> Result<()> {
        let mut w = csv::Writer::from_path(path).map_err(|e| Error::InvalidParameter(e.to_string()))?;
        let err = |e: csv::Error| Error::InvalidParameter(e.to_string());
        w.write_record(["iteration", "preconditioned_residual", "true_residual"]).map_err(err)?;
        let n = self.relative_residual_history.len();
        for (i, r) in self.relative_residual_history.iter().enumerate() {
            let t = match self.true_residual_history.get(i) {
                Some(v) => format!("{v:e}"),
                None if i + 1 == n => format!("{:e}", self.final_true_residual),
                None => String::new(),
            };
            w.write_record([i.to_string(), format!("{r:e}"), t]).map_err(err)?;
        }
        w.flush()?;
        Ok(())
    }
}
