//! Scenario runner for the iteration tables, convergence studies and
//! comparisons.

mod compare;
mod convergence;
mod field;
mod run;
mod scenario;
mod sweep;
mod tables;

use serde::Serialize;

pub use compare::{
    compare_preconditioners, default_comparison_scenario, graded_study, Comparison, ComparisonRow, GradedRow,
    GradedStudy,
};
pub use convergence::{
    convergence_study, manufactured, omega_coefficients, single_layer_eigenvalue, ConvergenceRow, ConvergenceStudy,
    Manufactured, DEFAULT_MESHES,
};
pub use field::{field_map, FieldEvaluator, FieldMap, Grid, MASK_DISTANCE};
pub use run::{run_scenario, write_atomic, Problem, ScenarioOutcome, Solution};
pub use scenario::{
    Formulation, GeometrySpec, ManufacturedCase, MeshSpec, OutputSpec, RhsSpec, Scenario, WavenumberSpec,
};
pub use sweep::{default_pade_scenario, pade_sensitivity, PadeRow, PadeSweep, DEFAULT_PADE_ORDERS};
pub use tables::{iteration_table, iteration_table_limited, run_row, run_row_limited, table_rows, Bound, RowSpec, Table, TableRow, VariantSpec, DESK_SCALE_N, TABLE_IDS};

/// Outcome of one asserted property of a benchmark run.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self { name: name.into(), passed, detail: detail.into() }
    }
}

impl std::fmt::Display for Check {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} {}: {}", self.name, self.detail)
    }
}
