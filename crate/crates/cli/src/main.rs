use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use screen_bem::bench::{
    compare_preconditioners, convergence_study, default_comparison_scenario, default_pade_scenario, field_map,
    graded_study, iteration_table_limited, pade_sensitivity, run_scenario, write_atomic, Check, Grid, ManufacturedCase,
    Problem, Scenario, DEFAULT_MESHES, DEFAULT_PADE_ORDERS, DESK_SCALE_N, TABLE_IDS,
};
use screen_bem::precond::PreconditionerKind;

/// Benchmarks for weighted boundary elements on open arcs.
#[derive(Parser)]
#[command(name = "screen-bem", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario file (JSON).
    Solve {
        scenario: PathBuf,
        /// Overrides the output directory of the scenario.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Rerun a benchmark iteration table.
    Table {
        /// One of the table ids, or "list".
        id: String,
        /// Skip rows with more panels than this.
        #[arg(long, default_value_t = DESK_SCALE_N)]
        max_n: usize,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convergence study with a manufactured solution.
    Converge {
        /// dir-omega, dir-omega3 or neu-u2
        case: String,
        #[arg(long, value_delimiter = ',')]
        meshes: Option<Vec<usize>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Iteration count against the number of Padé terms.
    PadeSweep {
        /// Scenario file; defaults to the spiral at k|Γ| = 200π.
        #[arg(long)]
        scenario: Option<PathBuf>,
        #[arg(long, value_delimiter = ',')]
        orders: Option<Vec<usize>>,
        /// Also solve without preconditioner.
        #[arg(long)]
        unpreconditioned: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve a scenario and sample the total field on a grid.
    Field {
        scenario: PathBuf,
        /// xmin,xmax,ymin,ymax,nx,ny
        #[arg(long)]
        grid: Grid,
        /// Binary grid output.
        #[arg(long, default_value = "field.bin")]
        out: PathBuf,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Preconditioner comparisons.
    Compare {
        #[command(subcommand)]
        study: CompareStudy,
    },
}

#[derive(Subcommand)]
enum CompareStudy {
    /// Several preconditioners over a frequency sweep.
    Sweep {
        #[arg(long)]
        scenario: Option<PathBuf>,
        #[arg(long, value_delimiter = ',', default_value = "sqrt,sqrt-laplace")]
        kinds: Vec<String>,
        #[arg(long, value_delimiter = ',', default_value = "50,100,200")]
        kl_over_pi: Vec<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Standard Galerkin on β-graded meshes against the weighted method.
    Graded {
        #[arg(long, default_value_t = 10.0 * std::f64::consts::PI)]
        k: f64,
        #[arg(long, default_value_t = 80)]
        n: usize,
        #[arg(long, value_delimiter = ',', default_value = "1,2,3,4,5")]
        betas: Vec<f64>,
        #[arg(long, default_value_t = 16)]
        refine: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => write_atomic(p, text.as_bytes()).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_case(s: &str) -> Result<ManufacturedCase> {
    Ok(match s.to_ascii_lowercase().as_str() {
        "dir-omega" => ManufacturedCase::DirOmega,
        "dir-omega3" => ManufacturedCase::DirOmega3,
        "neu-u2" => ManufacturedCase::NeuU2,
        _ => bail!("unknown case {s}; expected dir-omega, dir-omega3 or neu-u2"),
    })
}

fn parse_kind(s: &str) -> Result<PreconditionerKind> {
    serde_json::from_value(serde_json::Value::String(s.into())).with_context(|| format!("unknown preconditioner {s}"))
}

fn load(path: Option<&PathBuf>, default: fn() -> Scenario) -> Result<Scenario> {
    match path {
        Some(p) => Ok(Scenario::load(p)?),
        None => Ok(default()),
    }
}

/// Runs a command and returns its checks.
fn run(cli: Cli) -> Result<Vec<Check>> {
    match cli.command {
        Command::Solve { scenario, out_dir } => {
            let mut sc = Scenario::load(&scenario)?;
            if let Some(dir) = out_dir {
                sc.outputs.dir = Some(dir);
            }
            let o = run_scenario(&sc)?;
            println!(
                "{}: N = {}, k = {:.6}, iterations = {}, converged = {}, true residual = {:.3e}",
                sc.name, o.n, o.k, o.report.iterations, o.report.converged, o.report.final_true_residual
            );
            Ok(vec![Check::new("converged", o.report.converged, format!("{} iterations", o.report.iterations))])
        }
        Command::Table { id, max_n, out } => {
            if id == "list" {
                for t in TABLE_IDS {
                    println!("{t}");
                }
                return Ok(Vec::new());
            }
            let table = iteration_table_limited(&id, max_n)?;
            emit(&table.to_csv(), out.as_deref())?;
            Ok(table.checks())
        }
        Command::Converge { case, meshes, out } => {
            let study = convergence_study(parse_case(&case)?, meshes.as_deref().unwrap_or(&DEFAULT_MESHES))?;
            emit(&study.to_csv(), out.as_deref())?;
            Ok(study.checks())
        }
        Command::PadeSweep { scenario, orders, unpreconditioned, out } => {
            let sc = load(scenario.as_ref(), default_pade_scenario)?;
            let sweep = pade_sensitivity(&sc, orders.as_deref().unwrap_or(&DEFAULT_PADE_ORDERS), unpreconditioned)?;
            emit(&sweep.to_csv(), out.as_deref())?;
            Ok(sweep.checks())
        }
        Command::Field { scenario, grid, out, csv } => {
            let sc = Scenario::load(&scenario)?;
            let problem = Problem::build(&sc)?;
            let sol = problem.solve(&sc.preconditioner, &sc.solver)?;
            let map = field_map(&problem, &sol.density, &grid)?;
            map.write_binary(&out)?;
            if let Some(p) = csv {
                emit(&map.to_csv(), Some(&p))?;
            }
            let masked = map.total.iter().filter(|v| v.is_none()).count();
            println!("{}: {} x {} grid, {masked} masked, written to {}", sc.name, grid.nx, grid.ny, out.display());
            Ok(Vec::new())
        }
        Command::Compare { study: CompareStudy::Sweep { scenario, kinds, kl_over_pi, out } } => {
            let sc = load(scenario.as_ref(), default_comparison_scenario)?;
            let kinds = kinds.iter().map(|s| parse_kind(s)).collect::<Result<Vec<_>>>()?;
            let cmp = compare_preconditioners(&sc, &kinds, &kl_over_pi)?;
            emit(&cmp.to_csv(), out.as_deref())?;
            Ok(cmp.checks())
        }
        Command::Compare { study: CompareStudy::Graded { k, n, betas, refine, out } } => {
            let study = graded_study(k, n, &betas, refine)?;
            emit(&study.to_table().to_csv(), out.as_deref())?;
            Ok(study.checks())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(checks) => {
            for c in &checks {
                eprintln!("{c}");
            }
            if checks.iter().all(|c| c.passed) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}
