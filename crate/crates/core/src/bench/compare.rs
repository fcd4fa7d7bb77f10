use num_complex::Complex64;
use serde::Serialize;

use super::convergence::single_layer_eigenvalue;
use super::run::Problem;
use super::scenario::{Formulation, GeometrySpec, MeshSpec, RhsSpec, Scenario, WavenumberSpec};
use super::tables::{Bound, Table, TableRow};
use super::Check;
use crate::assembly::GalerkinSpace;
use crate::error::Result;
use crate::krylov::GmresConfig;
use crate::precond::{BoundaryCondition, PreconditionerConfig, PreconditionerKind};

#[derive(Debug, Clone, Serialize)]
pub struct ComparisonRow {
    pub kind: PreconditionerKind,
    pub kl_over_pi: f64,
    pub n: usize,
    pub iterations: usize,
    pub converged: bool,
    /// Estimated multiply-adds of one preconditioner application.
    pub apply_flops: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Comparison {
    pub rows: Vec<ComparisonRow>,
}

/// Flat-segment Dirichlet problem with u_D = e^{ikx} and N = 5k|Γ|.
pub fn default_comparison_scenario() -> Scenario {
    let mut sc = Scenario::new(
        GeometrySpec::FlatSegment,
        BoundaryCondition::Dirichlet,
        WavenumberSpec::kl_over_pi(50.0),
        RhsSpec::PlaneWave { angle: 0.0 },
    );
    sc.name = "compare".into();
    sc
}

/// Iteration counts of several preconditioners over a frequency sweep; the
/// system is assembled once per frequency.
pub fn compare_preconditioners(
    base: &Scenario,
    kinds: &[PreconditionerKind],
    kl_over_pi: &[f64],
) -> Result<Comparison> {
    let mut rows = Vec::new();
    for &klp in kl_over_pi {
        let mut sc = base.clone();
        sc.wavenumber = WavenumberSpec::kl_over_pi(klp);
        sc.name = format!("{}_kL={klp}pi", base.name);
        let problem = Problem::build(&sc)?;
        for &kind in kinds {
            let cfg = PreconditionerConfig { kind, ..base.preconditioner };
            let sol = problem.solve(&cfg, &base.solver)?;
            rows.push(ComparisonRow {
                kind,
                kl_over_pi: klp,
                n: problem.n(),
                iterations: sol.report.iterations,
                converged: sol.report.converged,
                apply_flops: sol.preconditioner_cost.flops,
            });
        }
    }
    Ok(Comparison { rows })
}

impl Comparison {
    fn counts(&self, kind: PreconditionerKind) -> Vec<usize> {
        self.rows.iter().filter(|r| r.kind == kind).map(|r| r.iterations).collect()
    }

    pub fn checks(&self) -> Vec<Check> {
        let pk = self.counts(PreconditionerKind::Sqrt);
        let p0 = self.counts(PreconditionerKind::SqrtLaplace);
        let mut out = Vec::new();
        if pk.len() >= 2 {
            let spread = pk.iter().max().unwrap() - pk.iter().min().unwrap();
            out.push(Check::new("P_k spread <= 5", spread <= 5, format!("counts {pk:?}")));
            if p0.len() >= 2 {
                let growth = *p0.last().unwrap() as i64 - p0[0] as i64;
                out.push(Check::new(
                    "P'_0 growth >= 2x P_k spread",
                    growth >= 2 * spread as i64,
                    format!("P'_0 counts {p0:?}, P_k counts {pk:?}"),
                ));
            }
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("kind,kL_over_pi,n,iterations,converged,apply_flops\n");
        for r in &self.rows {
            let kind = serde_json::to_value(r.kind).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
            s.push_str(&format!(
                "{kind},{},{},{},{},{:.4e}\n",
                r.kl_over_pi, r.n, r.iterations, r.converged, r.apply_flops
            ));
        }
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GradedRow {
    pub method: String,
    pub beta: Option<f64>,
    pub iterations: Option<usize>,
    pub converged: Option<bool>,
    /// Relative S₀-energy error against the reference solution.
    pub error: Option<f64>,
    pub reference_iterations: usize,
    pub reference_error: f64,
    pub status: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct GradedStudy {
    pub k: f64,
    pub n: usize,
    pub reference_n: usize,
    pub rows: Vec<GradedRow>,
}

const REFERENCE_GRADED: [(usize, f64); 5] = [(10, 0.088), (12, 0.020), (13, 0.0066), (17, 0.0036), (21, 0.0030)];
const REFERENCE_WEIGHTED: (usize, f64) = (7, 2.2e-5);

fn graded_scenario(k: f64, n: usize, mesh: Option<f64>) -> Scenario {
    let mut sc = Scenario::new(
        GeometrySpec::FlatSegment,
        BoundaryCondition::Dirichlet,
        WavenumberSpec::k(k),
        RhsSpec::PlaneWave { angle: 0.0 },
    );
    sc.n = Some(n);
    match mesh {
        Some(beta) => {
            sc.name = format!("graded_beta={beta}");
            sc.formulation = Formulation::Standard;
            sc.mesh = MeshSpec::Beta { beta };
            sc.preconditioner = PreconditionerConfig::of_kind(PreconditionerKind::StandardSqrt);
        }
        None => sc.name = format!("graded_weighted_N={n}"),
    }
    sc
}

const MIDPOINTS: usize = 16384;
const MODES: usize = 4096;

/// Samples of ω·λ at the τ-midpoints, where λ is the density of the space
/// (α/ω for the weighted space).
fn weighted_samples(space: &GalerkinSpace, x: &[Complex64]) -> Vec<Complex64> {
    let weighted = space.weight != crate::assembly::Weight::Unit;
    (0..MIDPOINTS)
        .map(|j| {
            let tau = (j as f64 + 0.5) * std::f64::consts::PI / MIDPOINTS as f64;
            let t = -tau.cos();
            let v = space.evaluate(x, t);
            if weighted {
                v
            } else {
                v * space.arc.weight_omega(t)
            }
        })
        .collect()
}

/// √⟨S₀λ, λ⟩ on the unit segment from the Chebyshev coefficients of ωλ,
/// using S_{0,ω}T_n = σ_n T_n.
fn energy_norm(g: &[Complex64]) -> f64 {
    let mut coef = vec![Complex64::new(0.0, 0.0); MODES];
    for (j, gj) in g.iter().enumerate() {
        let tau = (j as f64 + 0.5) * std::f64::consts::PI / MIDPOINTS as f64;
        let c1 = tau.cos();
        let (mut prev, mut cur) = (c1, 1.0);
        for a in coef.iter_mut() {
            *a += gj * cur;
            let next = 2.0 * c1 * cur - prev;
            prev = cur;
            cur = next;
        }
    }
    let pi = std::f64::consts::PI;
    let mut e = 0.0;
    for (n, a) in coef.iter().enumerate() {
        let (scale, norm) = if n == 0 { (1.0, pi) } else { (2.0, 0.5 * pi) };
        let c = a * (scale / MIDPOINTS as f64);
        e += single_layer_eigenvalue(n) * c.norm_sqr() * norm;
    }
    e.sqrt()
}

/// Standard Galerkin with P'_k on β-graded meshes versus the weighted method,
/// at wavenumber k on the unit segment [−1, 1], with errors against a
/// weighted solution on a mesh `refine` times finer.
pub fn graded_study(k: f64, n: usize, betas: &[f64], refine: usize) -> Result<GradedStudy> {
    let accurate = GmresConfig { tol: 1e-12, max_iter: 1000, ..Default::default() };
    let reference_n = n * refine;
    let reference = Problem::build(&graded_scenario(k, reference_n, None))?;
    let ref_sol = reference.solve(&PreconditionerConfig::default(), &accurate)?;
    let ref_samples = weighted_samples(&reference.space, &ref_sol.density);
    let ref_norm = energy_norm(&ref_samples);

    let mut rows = Vec::new();
    let mut run = |method: String, beta: Option<f64>, reference: (usize, f64)| -> Result<()> {
        let sc = graded_scenario(k, n, beta);
        let mut row = GradedRow {
            method,
            beta,
            iterations: None,
            converged: None,
            error: None,
            reference_iterations: reference.0,
            reference_error: reference.1,
            status: "ok".into(),
        };
        let problem = Problem::build(&sc)?;
        match problem.solve(&sc.preconditioner, &sc.solver) {
            Ok(sol) => {
                row.iterations = Some(sol.report.iterations);
                row.converged = Some(sol.report.converged);
                let fine = problem.solve(&sc.preconditioner, &accurate)?;
                let g: Vec<Complex64> = weighted_samples(&problem.space, &fine.density)
                    .iter()
                    .zip(&ref_samples)
                    .map(|(a, b)| a - b)
                    .collect();
                row.error = Some(energy_norm(&g) / ref_norm);
            }
            Err(e) => row.status = format!("preconditioner failed: {e}"),
        }
        rows.push(row);
        Ok(())
    };
    for (i, &beta) in betas.iter().enumerate() {
        let reference = REFERENCE_GRADED.get(i).copied().unwrap_or((0, f64::NAN));
        let method = if beta == 1.0 { "uniform".to_string() } else { format!("graded beta={beta}") };
        run(method, Some(beta), reference)?;
    }
    run("weighted".into(), None, REFERENCE_WEIGHTED)?;
    Ok(GradedStudy { k, n, reference_n, rows })
}

impl GradedStudy {
    fn row(&self, beta: Option<f64>) -> Option<&GradedRow> {
        self.rows.iter().find(|r| r.beta == beta)
    }

    pub fn checks(&self) -> Vec<Check> {
        let mut out = Vec::new();
        let weighted = self.row(None);
        if let (Some(w), Some(u)) = (weighted.and_then(|r| r.error), self.row(Some(1.0)).and_then(|r| r.error)) {
            out.push(Check::new(
                "weighted error <= uniform error / 100",
                w <= u / 100.0,
                format!("weighted {w:.3e}, uniform {u:.3e}"),
            ));
        }
        let wi = weighted.and_then(|r| r.iterations);
        if let (Some(w), Some(b5)) = (wi, self.row(Some(5.0)).and_then(|r| r.iterations)) {
            out.push(Check::new("weighted iterations <= beta=5 iterations", w <= b5, format!("{w} vs {b5}")));
            if let Some(b1) = self.row(Some(1.0)).and_then(|r| r.iterations) {
                out.push(Check::new("iterations grow from beta=1 to beta=5", b5 > b1, format!("{b1} -> {b5}")));
            }
        }
        out
    }

    pub fn to_table(&self) -> Table {
        let rows = self
            .rows
            .iter()
            .map(|r| TableRow {
                table: "graded-compare".into(),
                row: r.method.clone(),
                variant: if r.beta.is_some() { "standard-sqrt".into() } else { "sqrt".into() },
                n: self.n,
                k: self.k,
                reference: r.reference_iterations.to_string(),
                measured: r.iterations,
                converged: r.converged,
                reference_error: Some(r.reference_error),
                error: r.error,
                bound: Bound::AtMostTwice,
                status: r.status.clone(),
                wall_time: 0.0,
            })
            .collect();
        Table { id: "graded-compare".into(), rows }
    }
}
