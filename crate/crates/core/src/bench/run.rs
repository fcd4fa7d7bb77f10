use std::path::Path;
use std::time::Instant;

use num_complex::Complex64;
use serde::Serialize;

use super::convergence::manufactured;
use super::scenario::{Formulation, GeometrySpec, MeshSpec, RhsSpec, Scenario};
use crate::assembly::{
    assemble_hypersingular_weighted, assemble_rhs, assemble_single_layer_standard, assemble_single_layer_weighted,
    plane_wave, plane_wave_normal_derivative, Continuity, GalerkinSpace, OperatorMatrix, Weight,
};
use crate::error::{Error, Result};
use crate::geometry::{beta_graded_mesh, graded_mesh, Arc};
use crate::krylov::{gmres, GmresConfig, SolveReport};
use crate::precond::{build_preconditioner, BoundaryCondition, Cost, LinearOperator, PreconditionerConfig};

/// Assembled system of a scenario, reusable across preconditioners.
pub struct Problem {
    pub scenario: Scenario,
    pub arc: Arc,
    pub k: f64,
    pub space: GalerkinSpace,
    pub matrix: OperatorMatrix,
    pub rhs: Vec<Complex64>,
    pub assembly_time: f64,
}

#[derive(Debug, Clone)]
pub struct Solution {
    pub density: Vec<Complex64>,
    pub report: SolveReport,
    pub preconditioner_time: f64,
    pub preconditioner_cost: Cost,
}

fn context(name: &str) -> impl Fn(Error) -> Error + '_ {
    move |e| Error::Scenario(format!("{name}: {e}"))
}

impl Problem {
    pub fn build(scenario: &Scenario) -> Result<Self> {
        Self::build_inner(scenario).map_err(context(&scenario.name))
    }

    fn build_inner(sc: &Scenario) -> Result<Self> {
        let arc = sc.geometry.build()?;
        let k = sc.wavenumber.resolve(arc.length())?;
        let n = sc.mesh_size(&arc, k)?;
        let weight = match (sc.formulation, sc.bc) {
            (Formulation::Weighted, BoundaryCondition::Dirichlet) => Weight::InvOmega,
            (Formulation::Weighted, BoundaryCondition::Neumann) => Weight::Omega,
            (Formulation::Standard, BoundaryCondition::Dirichlet) => Weight::Unit,
            (Formulation::Standard, BoundaryCondition::Neumann) => {
                return Err(Error::Scenario("the standard formulation is Dirichlet only".into()));
            }
        };
        let mesh = match sc.mesh {
            MeshSpec::Cosine => graded_mesh(&arc, n)?,
            MeshSpec::Beta { beta } => beta_graded_mesh(&arc, n, beta)?,
        };
        let continuity = if sc.discontinuous { Continuity::Discontinuous } else { Continuity::Continuous };
        let space = GalerkinSpace::new(&arc, mesh, continuity, weight)?;
        let start = Instant::now();
        let matrix = match weight {
            Weight::InvOmega => assemble_single_layer_weighted(&space, k)?,
            Weight::Omega => assemble_hypersingular_weighted(&space, k)?,
            Weight::Unit => assemble_single_layer_standard(&space, k)?,
        };
        let assembly_time = start.elapsed().as_secs_f64();
        let rhs = scenario_rhs(sc, &space, k)?;
        Ok(Self { scenario: sc.clone(), arc, k, space, matrix, rhs, assembly_time })
    }

    pub fn n(&self) -> usize {
        self.space.panels()
    }

    pub fn preconditioner(&self, cfg: &PreconditionerConfig) -> Result<Box<dyn LinearOperator>> {
        build_preconditioner(self.scenario.bc, &self.space, self.k, cfg)
    }

    pub fn solve(&self, cfg: &PreconditionerConfig, solver: &GmresConfig) -> Result<Solution> {
        let run = || -> Result<Solution> {
            let start = Instant::now();
            let m = self.preconditioner(cfg)?;
            let preconditioner_time = start.elapsed().as_secs_f64();
            let (density, report) = gmres(&self.matrix, &self.rhs, m.as_ref(), solver)?;
            Ok(Solution { density, report, preconditioner_time, preconditioner_cost: m.cost() })
        };
        run().map_err(context(&self.scenario.name))
    }

    /// Parameter of every degree of freedom.
    pub fn dof_parameters(&self) -> Vec<f64> {
        let t = &self.space.mesh.t;
        match self.space.continuity {
            Continuity::Continuous => t.clone(),
            Continuity::Discontinuous => (0..self.n()).flat_map(|p| [t[p], t[p + 1]]).collect(),
        }
    }
}

fn scenario_rhs(sc: &Scenario, space: &GalerkinSpace, k: f64) -> Result<Vec<Complex64>> {
    let n = space.panels() as f64;
    let rhs = match (sc.rhs, sc.bc) {
        (RhsSpec::PlaneWave { angle }, BoundaryCondition::Dirichlet) => assemble_rhs(space, plane_wave(k, angle)),
        (RhsSpec::PlaneWave { angle }, BoundaryCondition::Neumann) => {
            assemble_rhs(space, plane_wave_normal_derivative(k, angle))
        }
        (RhsSpec::LaplaceTable, bc) => {
            let e = if bc == BoundaryCondition::Dirichlet { -0.5 } else { 0.5 };
            assemble_rhs(space, move |_, x, _| Complex64::new((x[0] * x[0] + 1.0 / (n * n)).powf(e), 0.0))
        }
        (RhsSpec::Constant { value }, _) => assemble_rhs(space, move |_, _, _| Complex64::new(value, 0.0)),
        (RhsSpec::Manufactured { case }, _) => {
            if sc.geometry != GeometrySpec::FlatSegment || k != 0.0 || sc.formulation != Formulation::Weighted {
                return Err(Error::Scenario(
                    "manufactured data needs the weighted formulation on the flat segment with k = 0".into(),
                ));
            }
            let m = manufactured(case);
            if m.bc != sc.bc {
                return Err(Error::Scenario(format!("manufactured case {case:?} has the other boundary condition")));
            }
            let data = m.data;
            assemble_rhs(space, move |t, _, _| data.eval(t))
        }
    };
    Ok(rhs)
}

#[derive(Debug, Clone, Serialize)]
pub struct ScenarioOutcome {
    pub scenario: Scenario,
    pub n: usize,
    pub k: f64,
    pub dof_count: usize,
    pub assembly_time: f64,
    pub preconditioner_time: f64,
    pub preconditioner_cost: Cost,
    pub report: SolveReport,
    #[serde(skip)]
    pub density: Vec<Complex64>,
    #[serde(skip)]
    pub dof_parameters: Vec<f64>,
}

/// Assembles, preconditions and solves one scenario and writes the requested
/// outputs.
pub fn run_scenario(scenario: &Scenario) -> Result<ScenarioOutcome> {
    let problem = Problem::build(scenario)?;
    let sol = problem.solve(&scenario.preconditioner, &scenario.solver)?;
    let outcome = ScenarioOutcome {
        scenario: scenario.clone(),
        n: problem.n(),
        k: problem.k,
        dof_count: problem.space.dof_count(),
        assembly_time: problem.assembly_time,
        preconditioner_time: sol.preconditioner_time,
        preconditioner_cost: sol.preconditioner_cost,
        report: sol.report,
        density: sol.density,
        dof_parameters: problem.dof_parameters(),
    };
    write_outputs(&outcome).map_err(context(&scenario.name))?;
    Ok(outcome)
}

fn write_outputs(o: &ScenarioOutcome) -> Result<()> {
    let out = &o.scenario.outputs;
    let Some(dir) = &out.dir else {
        return Ok(());
    };
    std::fs::create_dir_all(dir)?;
    let name = &o.scenario.name;
    if out.report {
        let text = serde_json::to_string_pretty(o)?;
        write_atomic(&dir.join(format!("{name}.json")), text.as_bytes())?;
    }
    if out.history {
        let path = dir.join(format!("{name}_history.csv"));
        let tmp = tmp_path(&path);
        o.report.write_history_csv(&tmp)?;
        std::fs::rename(tmp, path)?;
    }
    if out.density {
        let mut text = String::from("dof,t,re,im\n");
        for (i, (t, c)) in o.dof_parameters.iter().zip(&o.density).enumerate() {
            text.push_str(&format!("{i},{t:.17e},{:.17e},{:.17e}\n", c.re, c.im));
        }
        write_atomic(&dir.join(format!("{name}_density.csv")), text.as_bytes())?;
    }
    Ok(())
}

fn tmp_path(path: &Path) -> std::path::PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".tmp");
    s.into()
}

/// Writes to a sibling temporary file, then renames.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let tmp = tmp_path(path);
    std::fs::write(&tmp, bytes)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}
