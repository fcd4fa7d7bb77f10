use serde::Serialize;

use super::run::Problem;
use super::scenario::{GeometrySpec, RhsSpec, Scenario, WavenumberSpec};
use super::Check;
use crate::error::Result;
use crate::precond::{BoundaryCondition, PreconditionerConfig, PreconditionerKind};

pub const DEFAULT_PADE_ORDERS: [usize; 9] = [1, 2, 5, 10, 15, 20, 30, 40, 50];

/// Spiral, Dirichlet, k|Γ| = 200π, u_D = e^{ikx}.
pub fn default_pade_scenario() -> Scenario {
    let mut sc = Scenario::new(
        GeometrySpec::Spiral,
        BoundaryCondition::Dirichlet,
        WavenumberSpec::kl_over_pi(200.0),
        RhsSpec::PlaneWave { angle: 0.0 },
    );
    sc.name = "pade-sweep".into();
    sc
}

#[derive(Debug, Clone, Serialize)]
pub struct PadeRow {
    pub np: usize,
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct PadeSweep {
    pub n: usize,
    pub k: f64,
    pub rows: Vec<PadeRow>,
    pub unpreconditioned: Option<PadeRow>,
}

/// Iteration count of the square-root preconditioned solve against the
/// number of Padé terms, with θ and ε held fixed.
pub fn pade_sensitivity(base: &Scenario, orders: &[usize], with_unpreconditioned: bool) -> Result<PadeSweep> {
    let problem = Problem::build(base)?;
    let mut rows = Vec::new();
    for &np in orders {
        let cfg = PreconditionerConfig { kind: PreconditionerKind::Sqrt, np, ..base.preconditioner };
        let sol = problem.solve(&cfg, &base.solver)?;
        rows.push(PadeRow { np, iterations: sol.report.iterations, converged: sol.report.converged });
    }
    let unpreconditioned = if with_unpreconditioned {
        let sol = problem.solve(&PreconditionerConfig::of_kind(PreconditionerKind::None), &base.solver)?;
        Some(PadeRow { np: 0, iterations: sol.report.iterations, converged: sol.report.converged })
    } else {
        None
    };
    Ok(PadeSweep { n: problem.n(), k: problem.k, rows, unpreconditioned })
}

impl PadeSweep {
    pub fn iterations(&self, np: usize) -> Option<usize> {
        self.rows.iter().find(|r| r.np == np).map(|r| r.iterations)
    }

    pub fn checks(&self) -> Vec<Check> {
        let mut out = Vec::new();
        if let (Some(a), Some(b)) = (self.iterations(20), self.iterations(50)) {
            out.push(Check::new("|iters(20) - iters(50)| <= 2", a.abs_diff(b) <= 2, format!("{a} vs {b}")));
        }
        if let (Some(a), Some(b)) = (self.iterations(15), self.iterations(50)) {
            out.push(Check::new("|iters(15) - iters(50)| <= 2", a.abs_diff(b) <= 2, format!("{a} vs {b}")));
        }
        if let (Some(a), Some(b)) = (self.iterations(5), self.iterations(50)) {
            out.push(Check::new("iters(5) > iters(50)", a > b, format!("{a} vs {b}")));
        }
        if let Some(r) = self.rows.iter().find(|r| r.np == 1) {
            out.push(Check::new("Np = 1 converges", r.converged, format!("{} iterations", r.iterations)));
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("np,iterations,converged\n");
        for r in self.rows.iter().chain(&self.unpreconditioned) {
            let np = if r.np == 0 { "none".to_string() } else { r.np.to_string() };
            s.push_str(&format!("{np},{},{}\n", r.iterations, r.converged));
        }
        s
    }
}
