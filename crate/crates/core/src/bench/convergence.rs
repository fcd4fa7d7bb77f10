use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;
use serde::Serialize;

use super::scenario::ManufacturedCase;
use super::Check;
use crate::assembly::{
    assemble_hypersingular_weighted, assemble_rhs, assemble_single_layer_weighted, Continuity, GalerkinSpace, Weight,
};
use crate::error::Result;
use crate::geometry::{graded_mesh, Arc};
use crate::precond::{DenseInverse, LinearOperator};
use crate::quadrature::gauss_legendre;
use crate::specfun::{ChebyshevKind, ChebyshevSeries};
use crate::precond::BoundaryCondition;

const SERIES_TERMS: usize = 8192;

/// Eigenvalues of S_{0,ω} on T_n for the segment [−1, 1].
pub fn single_layer_eigenvalue(n: usize) -> f64 {
    if n == 0 {
        0.5 * LN_2
    } else {
        0.5 / n as f64
    }
}

/// Chebyshev-T coefficients of √(1 − x²).
pub fn omega_coefficients(terms: usize) -> Vec<f64> {
    (0..terms)
        .map(|n| match n {
            0 => 2.0 / PI,
            _ if n % 2 == 1 => 0.0,
            _ => {
                let m2 = (n * n) as f64;
                -4.0 / (PI * (m2 - 1.0))
            }
        })
        .collect()
}

/// Coefficients of T₂ · Σ c_n T_n.
fn times_t2(c: &[f64]) -> Vec<f64> {
    let mut d = vec![0.0; c.len()];
    for (n, &v) in c.iter().enumerate() {
        if n + 2 < d.len() {
            d[n + 2] += 0.5 * v;
        }
        d[n.abs_diff(2)] += 0.5 * v;
    }
    d
}

/// Right-hand side and closed-form solution of a manufactured problem.
pub struct Manufactured {
    pub bc: BoundaryCondition,
    /// Data u as a Chebyshev series in t.
    pub data: ChebyshevSeries,
    /// Exact solution as a function of (t, √(1 − t²)).
    pub exact: fn(f64, f64) -> f64,
    pub exact_derivative: fn(f64, f64) -> f64,
}

pub fn manufactured(case: ManufacturedCase) -> Manufactured {
    match case {
        ManufacturedCase::DirOmega | ManufacturedCase::DirOmega3 => {
            let mut c = omega_coefficients(SERIES_TERMS + 2);
            if case == ManufacturedCase::DirOmega3 {
                let d = times_t2(&c);
                c = c.iter().zip(&d).map(|(a, b)| 0.5 * (a - b)).collect();
            }
            c.truncate(SERIES_TERMS);
            let data: Vec<f64> = c.iter().enumerate().map(|(n, v)| single_layer_eigenvalue(n) * v).collect();
            let (exact, exact_derivative): (fn(f64, f64) -> f64, fn(f64, f64) -> f64) =
                if case == ManufacturedCase::DirOmega {
                    (|_, s| s, |t, s| -t / s)
                } else {
                    (|_, s| s * s * s, |t, s| -3.0 * t * s)
                };
            Manufactured {
                bc: BoundaryCondition::Dirichlet,
                data: ChebyshevSeries::from_real(ChebyshevKind::First, &data),
                exact,
                exact_derivative,
            }
        }
        ManufacturedCase::NeuU2 => Manufactured {
            bc: BoundaryCondition::Neumann,
            data: ChebyshevSeries::from_real(ChebyshevKind::Second, &[0.0, 0.0, 1.0]),
            // N_{0,ω} U_n = (n + 1)/2 U_n
            exact: |t, _| 2.0 / 3.0 * (4.0 * t * t - 1.0),
            exact_derivative: |t, _| 2.0 / 3.0 * 8.0 * t,
        },
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceRow {
    pub n: usize,
    pub h: f64,
    /// L²_{1/ω} (Dirichlet) or L²_ω (Neumann) relative error.
    pub error: f64,
    /// U¹ relative error (Neumann only).
    pub error_u1: Option<f64>,
    /// Slope against the previous row.
    pub slope: Option<f64>,
    pub slope_u1: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceStudy {
    pub case: ManufacturedCase,
    pub rows: Vec<ConvergenceRow>,
    /// Least-squares slope over the finest four meshes.
    pub slope: f64,
    pub slope_u1: Option<f64>,
}

pub const DEFAULT_MESHES: [usize; 5] = [32, 64, 128, 256, 512];

fn least_squares_slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

/// Solves the manufactured problem on cosine meshes of the flat segment and
/// measures the error against the closed form.
pub fn convergence_study(case: ManufacturedCase, meshes: &[usize]) -> Result<ConvergenceStudy> {
    let arc = Arc::flat_segment();
    let m = manufactured(case);
    let mut rows: Vec<ConvergenceRow> = Vec::new();
    for &n in meshes {
        let weight = match m.bc {
            BoundaryCondition::Dirichlet => Weight::InvOmega,
            BoundaryCondition::Neumann => Weight::Omega,
        };
        let space = GalerkinSpace::new(&arc, graded_mesh(&arc, n)?, Continuity::Continuous, weight)?;
        let a = match m.bc {
            BoundaryCondition::Dirichlet => assemble_single_layer_weighted(&space, 0.0)?,
            BoundaryCondition::Neumann => assemble_hypersingular_weighted(&space, 0.0)?,
        };
        let data = &m.data;
        let b = assemble_rhs(&space, |t, _, _| data.eval(t));
        let x = DenseInverse::new(&a.to_dense_complex())?.apply(&b);
        let (error, error_u1) = errors(&space, &x, &m);
        let h = PI / n as f64;
        let (slope, slope_u1) = match rows.last() {
            Some(prev) => (
                Some((error / prev.error).ln() / (h / prev.h).ln()),
                error_u1.zip(prev.error_u1).map(|(e, p)| (e / p).ln() / (h / prev.h).ln()),
            ),
            None => (None, None),
        };
        rows.push(ConvergenceRow { n, h, error, error_u1, slope, slope_u1 });
    }
    let tail = &rows[rows.len().saturating_sub(4)..];
    let slope = least_squares_slope(&tail.iter().map(|r| (r.h.ln(), r.error.ln())).collect::<Vec<_>>());
    let slope_u1 = tail
        .iter()
        .map(|r| r.error_u1.map(|e| (r.h.ln(), e.ln())))
        .collect::<Option<Vec<_>>>()
        .map(|p| least_squares_slope(&p));
    Ok(ConvergenceStudy { case, rows, slope, slope_u1 })
}

/// Relative errors in the norm of the space and, for the Neumann case, in U¹.
fn errors(space: &GalerkinSpace, x: &[Complex64], m: &Manufactured) -> (f64, Option<f64>) {
    let gl = gauss_legendre(20);
    let (mut e2, mut u2, mut e1, mut u1) = (0.0, 0.0, 0.0, 0.0);
    for p in 0..space.panels() {
        let h = space.width(p);
        let [i, j] = space.dofs(p);
        for (node, w) in gl.nodes.iter().zip(&gl.weights) {
            let nd = space.node(p, 0.5 * h * (node + 1.0));
            let dw = 0.5 * h * w;
            let uh = x[i] * nd.phi[0] + x[j] * nd.phi[1];
            let duh = x[i] * nd.dphi[0] + x[j] * nd.dphi[1];
            let u = (m.exact)(nd.t, nd.s);
            let du = (m.exact_derivative)(nd.t, nd.s);
            let e = uh - u;
            match m.bc {
                // (1/ω) dt = dτ
                BoundaryCondition::Dirichlet => {
                    e2 += e.norm_sqr() * dw;
                    u2 += u * u * dw;
                }
                // ω dt = sin²τ dτ; U¹ form (−t v + (1 − t²) v′)² dτ
                BoundaryCondition::Neumann => {
                    let s2 = nd.s * nd.s;
                    e2 += e.norm_sqr() * s2 * dw;
                    u2 += u * u * s2 * dw;
                    let de = duh - du;
                    e1 += (e * (-nd.t) + de * s2).norm_sqr() * dw;
                    u1 += (-nd.t * u + s2 * du).powi(2) * dw;
                }
            }
        }
    }
    let l2 = (e2 / u2).sqrt();
    match m.bc {
        BoundaryCondition::Dirichlet => (l2, None),
        BoundaryCondition::Neumann => (l2, Some((e1 / u1).sqrt())),
    }
}

impl ConvergenceStudy {
    pub fn checks(&self) -> Vec<Check> {
        let mut out = Vec::new();
        let (target, tol) = match self.case {
            ManufacturedCase::DirOmega => (1.5, 0.15),
            ManufacturedCase::DirOmega3 => (2.0, 0.15),
            ManufacturedCase::NeuU2 => (2.0, 0.2),
        };
        out.push(Check::new(
            format!("{:?} slope {target} ± {tol}", self.case),
            (self.slope - target).abs() <= tol,
            format!("measured {:.3}", self.slope),
        ));
        if let Some(s) = self.slope_u1 {
            out.push(Check::new("U1 slope 1.0 ± 0.2", (s - 1.0).abs() <= 0.2, format!("measured {s:.3}")));
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,h,error,slope,error_u1,slope_u1\n");
        let opt = |v: Option<f64>| v.map(|x| format!("{x:.6e}")).unwrap_or_default();
        for r in &self.rows {
            s.push_str(&format!(
                "{},{:.6e},{:.6e},{},{},{}\n",
                r.n,
                r.h,
                r.error,
                opt(r.slope),
                opt(r.error_u1),
                opt(r.slope_u1)
            ));
        }
        s
    }
}
