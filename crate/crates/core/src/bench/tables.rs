use std::f64::consts::PI;

use serde::Serialize;

use super::compare::graded_study;
use super::run::Problem;
use super::scenario::{GeometrySpec, RhsSpec, Scenario, WavenumberSpec};
use super::Check;
use crate::error::{Error, Result};
use crate::precond::{BoundaryCondition, PreconditionerConfig, PreconditionerKind};

/// Largest panel count run at desk scale (dense complex storage).
pub const DESK_SCALE_N: usize = 8000;

pub const TABLE_IDS: [&str; 11] = [
    "laplace-dir",
    "laplace-neu",
    "helm-dir",
    "helm-neu",
    "spiral-dir",
    "spiral-neu",
    "vshape-dir",
    "vshape-refine",
    "calderon-dir",
    "calderon-neu",
    "graded-compare",
];

/// How a measured count is compared with the reference one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Bound {
    /// measured ≤ 2 · reference
    AtMostTwice,
    /// measured ≥ reference / 2
    AtLeastHalf,
}

#[derive(Debug, Clone)]
pub struct VariantSpec {
    pub name: String,
    pub preconditioner: PreconditionerConfig,
    /// Reference iteration count: "8", ">500" or "-".
    pub reference: String,
    pub bound: Bound,
}

#[derive(Debug, Clone)]
pub struct RowSpec {
    pub label: String,
    pub scenario: Scenario,
    pub variants: Vec<VariantSpec>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    pub table: String,
    pub row: String,
    pub variant: String,
    pub n: usize,
    pub k: f64,
    pub reference: String,
    pub measured: Option<usize>,
    pub converged: Option<bool>,
    pub reference_error: Option<f64>,
    pub error: Option<f64>,
    pub bound: Bound,
    pub status: String,
    pub wall_time: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Table {
    pub id: String,
    pub rows: Vec<TableRow>,
}

fn variant(name: &str, kind: PreconditionerKind, reference: &str) -> VariantSpec {
    let bound = if kind == PreconditionerKind::None { Bound::AtLeastHalf } else { Bound::AtMostTwice };
    VariantSpec { name: name.into(), preconditioner: PreconditionerConfig::of_kind(kind), reference: reference.into(), bound }
}

fn sqrt_and_none(prec: &str, none: &str) -> Vec<VariantSpec> {
    vec![variant("sqrt", PreconditionerKind::Sqrt, prec), variant("none", PreconditionerKind::None, none)]
}

fn named(mut sc: Scenario, name: String) -> Scenario {
    sc.name = name;
    sc
}

fn frequency_rows(
    id: &str,
    geometry: GeometrySpec,
    bc: BoundaryCondition,
    angle: f64,
    data: &[(f64, Vec<VariantSpec>)],
) -> Vec<RowSpec> {
    data.iter()
        .map(|(klp, variants)| {
            let label = format!("kL={klp}pi");
            let sc = Scenario::new(geometry.clone(), bc, WavenumberSpec::kl_over_pi(*klp), RhsSpec::PlaneWave { angle });
            RowSpec { label: label.clone(), scenario: named(sc, format!("{id}_{label}")), variants: variants.clone() }
        })
        .collect()
}

/// Row definitions of a benchmark table, with reference counts.
pub fn table_rows(id: &str) -> Result<Vec<RowSpec>> {
    let flat = GeometrySpec::FlatSegment;
    let v = |a: &str, b: &str| sqrt_and_none(a, b);
    let rows = match id {
        "laplace-dir" | "laplace-neu" => {
            let bc = if id == "laplace-dir" { BoundaryCondition::Dirichlet } else { BoundaryCondition::Neumann };
            let data: [(usize, &str, &str); 4] = if bc == BoundaryCondition::Dirichlet {
                [(500, "8", "79"), (2000, "8", "128"), (8000, "7", "218"), (32000, "8", "347")]
            } else {
                [(500, "5", "333"), (2000, "5", ">500"), (8000, "7", ">500"), (32000, "6", ">500")]
            };
            data.iter()
                .map(|&(n, p, u)| {
                    let mut sc = Scenario::new(flat.clone(), bc, WavenumberSpec::k(0.0), RhsSpec::LaplaceTable);
                    sc.n = Some(n);
                    let label = format!("N={n}");
                    RowSpec { label: label.clone(), scenario: named(sc, format!("{id}_{label}")), variants: v(p, u) }
                })
                .collect()
        }
        "helm-dir" => frequency_rows(
            id,
            flat,
            BoundaryCondition::Dirichlet,
            0.0,
            &[
                (50.0, v("8", "88")),
                (200.0, v("10", "123")),
                (400.0, v("13", "145")),
                (800.0, v("16", "155")),
                (1600.0, v("20", "199")),
            ],
        ),
        "helm-neu" => frequency_rows(
            id,
            flat,
            BoundaryCondition::Neumann,
            PI / 4.0,
            &[
                (50.0, v("10", ">500")),
                (200.0, v("13", ">500")),
                (400.0, v("14", ">500")),
                (800.0, v("18", "-")),
                (1600.0, v("25", "-")),
            ],
        ),
        "spiral-dir" => frequency_rows(
            id,
            GeometrySpec::Spiral,
            BoundaryCondition::Dirichlet,
            0.0,
            &[
                (50.0, v("19", "93")),
                (200.0, v("24", "136")),
                (400.0, v("27", "160")),
                (800.0, v("30", "190")),
                (1600.0, v("32", "217")),
            ],
        ),
        "spiral-neu" => frequency_rows(
            id,
            GeometrySpec::Spiral,
            BoundaryCondition::Neumann,
            0.0,
            &[
                (50.0, v("22", ">500")),
                (200.0, v("31", ">500")),
                (400.0, v("34", ">500")),
                (800.0, v("35", "-")),
                (1600.0, v("42", "-")),
            ],
        ),
        "vshape-dir" => frequency_rows(
            id,
            GeometrySpec::VShape { angle: PI / 2.0 },
            BoundaryCondition::Dirichlet,
            PI / 2.0,
            &[
                (50.0, v("9", "97")),
                (200.0, v("10", "157")),
                (400.0, v("11", "190")),
                (800.0, v("14", "231")),
                (1600.0, v("18", "-")),
            ],
        ),
        "vshape-refine" => vshape_refine_rows(),
        "calderon-dir" | "calderon-neu" => {
            let (bc, data): (_, [(f64, &str, &str); 4]) = if id == "calderon-dir" {
                (
                    BoundaryCondition::Dirichlet,
                    [(50.0, "15", "8"), (200.0, "15", "10"), (400.0, "15", "13"), (800.0, "15", "16")],
                )
            } else {
                (
                    BoundaryCondition::Neumann,
                    [(50.0, "15", "10"), (200.0, "16", "13"), (400.0, "17", "15"), (800.0, "17", "18")],
                )
            };
            let data: Vec<(f64, Vec<VariantSpec>)> = data
                .iter()
                .map(|&(klp, c, s)| {
                    (
                        klp,
                        vec![
                            variant("calderon", PreconditionerKind::Calderon, c),
                            variant("sqrt", PreconditionerKind::Sqrt, s),
                        ],
                    )
                })
                .collect();
            frequency_rows(id, flat, bc, PI / 4.0, &data)
        }
        "graded-compare" => Vec::new(),
        _ => return Err(Error::Scenario(format!("unknown table id {id}"))),
    };
    Ok(rows)
}

/// k|Γ| = 50 fixed, N/(k|Γ|) from 2.5 to 15, flat segment and three corner
/// angles; N_p = 60.
fn vshape_refine_rows() -> Vec<RowSpec> {
    let columns: [(&str, Option<f64>, [&str; 6]); 4] = [
        ("flat", None, ["8", "7", "7", "7", "7", "7"]),
        ("theta=3pi/4", Some(0.75 * PI), ["9", "8", "8", "8", "8", "8"]),
        ("theta=pi/2", Some(0.5 * PI), ["10", "9", "10", "10", "9", "10"]),
        ("theta=pi/6", Some(PI / 6.0), ["17", "17", "17", "17", "17", "17"]),
    ];
    let ratios = [2.5, 5.0, 7.5, 10.0, 12.5, 15.0];
    let mut rows = Vec::new();
    for (ri, ratio) in ratios.iter().enumerate() {
        for (col, angle, reference) in &columns {
            let geometry = match angle {
                Some(a) => GeometrySpec::VShape { angle: *a },
                None => GeometrySpec::FlatSegment,
            };
            let mut sc = Scenario::new(
                geometry,
                BoundaryCondition::Dirichlet,
                WavenumberSpec::kl(50.0),
                RhsSpec::PlaneWave { angle: PI / 2.0 },
            );
            sc.n = Some((ratio * 50.0_f64).round() as usize);
            sc.preconditioner.np = 60;
            let label = format!("N/kL={ratio}");
            let mut var = variant(col, PreconditionerKind::Sqrt, reference[ri]);
            var.preconditioner.np = 60;
            rows.push(RowSpec {
                label: label.clone(),
                scenario: named(sc, format!("vshape-refine_{label}_{col}")),
                variants: vec![var],
            });
        }
    }
    rows
}

fn parse_reference(s: &str) -> Option<usize> {
    s.trim_start_matches('>').parse().ok()
}

/// Runs all variants of one row on a single assembled system. Rows beyond
/// desk scale are reported as skipped.
pub fn run_row(table: &str, row: &RowSpec) -> Result<Vec<TableRow>> {
    run_row_limited(table, row, DESK_SCALE_N)
}

/// As `run_row`, skipping rows with more than `max_n` panels.
pub fn run_row_limited(table: &str, row: &RowSpec, max_n: usize) -> Result<Vec<TableRow>> {
    let arc = row.scenario.geometry.build()?;
    let k = row.scenario.wavenumber.resolve(arc.length())?;
    let n = row.scenario.mesh_size(&arc, k)?;
    let base = |v: &VariantSpec| TableRow {
        table: table.into(),
        row: row.label.clone(),
        variant: v.name.clone(),
        n,
        k,
        reference: v.reference.clone(),
        measured: None,
        converged: None,
        reference_error: None,
        error: None,
        bound: v.bound,
        status: String::new(),
        wall_time: 0.0,
    };
    if n > max_n {
        let status = if n > DESK_SCALE_N { "skipped: exceeds desk scale" } else { "skipped: above size limit" };
        return Ok(row
            .variants
            .iter()
            .map(|v| TableRow { status: status.into(), ..base(v) })
            .collect());
    }
    let problem = Problem::build(&row.scenario)?;
    let mut out = Vec::new();
    for v in &row.variants {
        let sol = problem.solve(&v.preconditioner, &row.scenario.solver)?;
        out.push(TableRow {
            measured: Some(sol.report.iterations),
            converged: Some(sol.report.converged),
            status: "ok".into(),
            wall_time: sol.report.wall_time + sol.preconditioner_time,
            ..base(v)
        });
    }
    Ok(out)
}

/// Reruns a benchmark table at desk scale.
pub fn iteration_table(id: &str) -> Result<Table> {
    iteration_table_limited(id, DESK_SCALE_N)
}

/// As `iteration_table`, with a lower size cap for quick runs.
pub fn iteration_table_limited(id: &str, max_n: usize) -> Result<Table> {
    let max_n = max_n.min(DESK_SCALE_N);
    if id == "graded-compare" {
        let study = graded_study(10.0 * PI, 80, &[1.0, 2.0, 3.0, 4.0, 5.0], 16)?;
        return Ok(study.to_table());
    }
    let mut rows = Vec::new();
    for row in table_rows(id)? {
        rows.extend(run_row_limited(id, &row, max_n)?);
    }
    Ok(Table { id: id.into(), rows })
}

impl TableRow {
    /// The factor-two rule against the reference count; None when either
    /// side is missing.
    pub fn within_factor_two(&self) -> Option<bool> {
        let reference = parse_reference(&self.reference)? as f64;
        let measured = self.measured? as f64;
        Some(match self.bound {
            Bound::AtMostTwice => self.converged == Some(true) && measured <= 2.0 * reference,
            Bound::AtLeastHalf => self.converged == Some(false) || measured >= 0.5 * reference,
        })
    }
}

impl Table {
    pub fn checks(&self) -> Vec<Check> {
        let mut out: Vec<Check> = self
            .rows
            .iter()
            .filter_map(|r| {
                r.within_factor_two().map(|ok| {
                    Check::new(
                        format!("{} {} {} within 2x of reference", self.id, r.row, r.variant),
                        ok,
                        format!("reference {} measured {}", r.reference, r.measured.unwrap_or(0)),
                    )
                })
            })
            .collect();
        if self.id == "vshape-refine" {
            for col in ["flat", "theta=3pi/4", "theta=pi/2", "theta=pi/6"] {
                let its: Vec<usize> =
                    self.rows.iter().filter(|r| r.variant == col).filter_map(|r| r.measured).collect();
                if let (Some(lo), Some(hi)) = (its.iter().min(), its.iter().max()) {
                    out.push(Check::new(
                        format!("vshape-refine {col} spread <= 3"),
                        hi - lo <= 3,
                        format!("min {lo} max {hi}"),
                    ));
                }
            }
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("table,row,variant,n,k,reference,measured,converged,reference_error,error,status,wall_time\n");
        let f = |v: Option<f64>| v.map(|x| format!("{x:.4e}")).unwrap_or_default();
        for r in &self.rows {
            s.push_str(&format!(
                "{},{},{},{},{:.6},{},{},{},{},{},{},{:.3}\n",
                r.table,
                r.row,
                r.variant,
                r.n,
                r.k,
                r.reference,
                r.measured.map(|m| m.to_string()).unwrap_or_default(),
                r.converged.map(|m| m.to_string()).unwrap_or_default(),
                f(r.reference_error),
                f(r.error),
                r.status,
                r.wall_time
            ));
        }
        s
    }
}
