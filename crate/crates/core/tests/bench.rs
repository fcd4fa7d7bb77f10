use std::f64::consts::PI;
use std::path::PathBuf;

use num_complex::Complex64;
use screen_bem::bench::*;
use screen_bem::precond::{BoundaryCondition, PreconditionerKind};

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("screen-bem-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn flat_dirichlet(kl_over_pi: f64) -> Scenario {
    Scenario::new(
        GeometrySpec::FlatSegment,
        BoundaryCondition::Dirichlet,
        WavenumberSpec::kl_over_pi(kl_over_pi),
        RhsSpec::PlaneWave { angle: PI / 4.0 },
    )
}

#[test]
fn scenario_json_roundtrip() {
    let mut sc = Scenario::new(
        GeometrySpec::VShape { angle: PI / 2.0 },
        BoundaryCondition::Neumann,
        WavenumberSpec::kl(50.0),
        RhsSpec::PlaneWave { angle: 0.3 },
    );
    sc.name = "v".into();
    sc.n = Some(126);
    sc.preconditioner.np = 60;
    let back = Scenario::from_json(&sc.to_json()).unwrap();
    assert_eq!(back, sc);

    let minimal = r#"{"geometry": {"kind": "spiral"}, "bc": "dirichlet",
        "wavenumber": {"kL_over_pi": 50}, "rhs": {"kind": "plane-wave", "angle": 0.5}}"#;
    let sc = Scenario::from_json(minimal).unwrap();
    assert_eq!(sc.points_per_wavelength, 5.0);
    assert!(Scenario::from_json(&minimal.replace("\"bc\"", "\"typo\": 1, \"bc\"")).is_err());
}

#[test]
fn wavenumber_needs_exactly_one_value() {
    assert!((WavenumberSpec::kl_over_pi(2.0).resolve(2.0).unwrap() - PI).abs() < 1e-15);
    assert!((WavenumberSpec::kl(6.0).resolve(2.0).unwrap() - 3.0).abs() < 1e-15);
    let both = WavenumberSpec { k: Some(1.0), kl: Some(2.0), kl_over_pi: None };
    assert!(both.resolve(2.0).is_err());
    let none = WavenumberSpec::default();
    assert!(none.resolve(2.0).is_err());
}

#[test]
fn mesh_size_rules() {
    let sc = flat_dirichlet(50.0);
    let arc = sc.geometry.build().unwrap();
    let k = sc.wavenumber.resolve(arc.length()).unwrap();
    assert_eq!(sc.mesh_size(&arc, k).unwrap(), 785);
    let v = Scenario::new(
        GeometrySpec::VShape { angle: PI / 2.0 },
        BoundaryCondition::Dirichlet,
        WavenumberSpec::kl(25.0),
        RhsSpec::PlaneWave { angle: 0.0 },
    );
    let arc = v.geometry.build().unwrap();
    let k = v.wavenumber.resolve(arc.length()).unwrap();
    assert_eq!(v.mesh_size(&arc, k).unwrap(), 126);
    let mut lap = flat_dirichlet(0.0);
    lap.wavenumber = WavenumberSpec::k(0.0);
    assert!(lap.mesh_size(&arc, 0.0).is_err());
}

#[test]
fn laplace_row_small() {
    let rows = table_rows("laplace-dir").unwrap();
    let spec = rows.iter().find(|r| r.label == "N=500").unwrap();
    let problem = Problem::build(&spec.scenario).unwrap();
    assert_eq!(problem.n(), 500);
    let solver = spec.scenario.solver;
    let mut cfg = spec.scenario.preconditioner;
    let pre = problem.solve(&cfg, &solver).unwrap();
    assert!(pre.report.converged && pre.report.iterations <= 12, "{}", pre.report.iterations);
    cfg.kind = PreconditionerKind::None;
    let plain = problem.solve(&cfg, &solver).unwrap();
    assert!(plain.report.iterations >= 50, "{}", plain.report.iterations);
}

#[test]
fn run_scenario_writes_outputs() {
    let dir = scratch("outputs");
    let mut sc = Scenario::new(
        GeometrySpec::FlatSegment,
        BoundaryCondition::Dirichlet,
        WavenumberSpec::k(0.0),
        RhsSpec::Constant { value: 1.0 },
    );
    sc.name = "tiny".into();
    sc.n = Some(2);
    sc.outputs.dir = Some(dir.clone());
    sc.outputs.density = true;
    let o = run_scenario(&sc).unwrap();
    assert!(o.report.converged);
    assert_eq!(o.density.len(), 3);
    assert!(o.density.iter().all(|z| z.re.is_finite() && z.im.is_finite()));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("tiny.json")).unwrap()).unwrap();
    assert_eq!(report["n"], 2);
    assert!(dir.join("tiny_history.csv").exists());
    let density = std::fs::read_to_string(dir.join("tiny_density.csv")).unwrap();
    assert_eq!(density.lines().count(), 4);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn solves_are_reproducible() {
    let sc = flat_dirichlet(10.0);
    let a = run_scenario(&sc).unwrap();
    let b = run_scenario(&sc).unwrap();
    assert_eq!(a.density, b.density);
    assert_eq!(a.report.iterations, b.report.iterations);
}

#[test]
fn invalid_scenarios_are_reported() {
    let mut sc = Scenario::new(
        GeometrySpec::Spiral,
        BoundaryCondition::Dirichlet,
        WavenumberSpec::k(0.0),
        RhsSpec::Manufactured { case: ManufacturedCase::DirOmega },
    );
    sc.n = Some(16);
    sc.name = "bad".into();
    let err = Problem::build(&sc).err().unwrap().to_string();
    assert!(err.contains("bad"), "{err}");
}

#[test]
fn grid_parsing() {
    let g: Grid = "-2,2,-1,1,5,3".parse().unwrap();
    assert_eq!((g.nx, g.ny), (5, 3));
    assert_eq!(g.point(4, 2), [2.0, 1.0]);
    assert!("1,2,3".parse::<Grid>().is_err());
    assert!("2,1,0,1,3,3".parse::<Grid>().is_err());
    assert!("0,1,0,1,0,3".parse::<Grid>().is_err());
}

#[test]
fn field_map_and_binary_roundtrip() {
    let sc = flat_dirichlet(4.0);
    let problem = Problem::build(&sc).unwrap();
    let sol = problem.solve(&sc.preconditioner, &sc.solver).unwrap();
    let grid: Grid = "-2,2,-1,1,9,5".parse().unwrap();
    let map = field_map(&problem, &sol.density, &grid).unwrap();
    assert_eq!(map.total.len(), 45);
    // the middle row is y = 0 and crosses the segment
    let masked = map.total.iter().filter(|v| v.is_none()).count();
    assert_eq!(masked, 5);
    let path = scratch("grid").join("field.bin");
    map.write_binary(&path).unwrap();
    assert_eq!(std::fs::metadata(&path).unwrap().len(), 56 + 45 * 16);
    let (g, values) = FieldMap::read_binary(&path).unwrap();
    assert_eq!(g, grid);
    for (v, w) in values.iter().zip(&map.total) {
        match w {
            Some(w) => assert_eq!(v, w),
            None => assert!(v.re.is_nan() && v.im.is_nan()),
        }
    }
    assert!(map.to_csv().lines().count() == 46);
    std::fs::remove_dir_all(path.parent().unwrap()).unwrap();
}

#[test]
fn scattered_field_properties() {
    let sc = flat_dirichlet(10.0);
    let problem = Problem::build(&sc).unwrap();
    let sol = problem.solve(&sc.preconditioner, &sc.solver).unwrap();

    let zero = vec![Complex64::new(0.0, 0.0); sol.density.len()];
    let ev = FieldEvaluator::new(&problem, &zero).unwrap();
    assert_eq!(ev.scattered([0.3, 0.7]).norm(), 0.0);
    assert!(FieldEvaluator::new(&problem, &zero[1..]).is_err());

    // 2D cylindrical spreading: |u| ~ r^{-1/2}
    let ev = FieldEvaluator::new(&problem, &sol.density).unwrap();
    let dir = [0.6f64, 0.8];
    let near = ev.scattered([50.0 * dir[0], 50.0 * dir[1]]).norm();
    let far = ev.scattered([200.0 * dir[0], 200.0 * dir[1]]).norm();
    let ratio = far / near;
    assert!((ratio - 0.5).abs() < 0.05, "{ratio}");

    // sound-soft: the total field nearly vanishes just off the segment
    let inc = ev.incident([0.0, 0.0]).unwrap();
    assert!((inc.norm() - 1.0).abs() < 1e-15);
    for i in 0..21 {
        let x = -0.9 + 0.09 * i as f64;
        let z = [x, 1e-4];
        let total = ev.scattered(z) + ev.incident(z).unwrap();
        assert!(total.norm() < 0.02, "x = {x}: {}", total.norm());
    }
}

#[test]
fn convergence_rates_on_coarse_meshes() {
    let study = convergence_study(ManufacturedCase::NeuU2, &[32, 64, 128, 256]).unwrap();
    assert_eq!(study.rows.len(), 4);
    for c in study.checks() {
        assert!(c.passed, "{c}");
    }
    assert!(study.to_csv().starts_with("n,h,error"));
}

#[test]
fn manufactured_data() {
    assert!((single_layer_eigenvalue(0) - 0.5 * 2f64.ln()).abs() < 1e-15);
    assert!((single_layer_eigenvalue(4) - 0.125).abs() < 1e-15);
    let c = omega_coefficients(4);
    assert!((c[0] - 2.0 / PI).abs() < 1e-15);
    assert_eq!(c[1], 0.0);
    assert!((c[2] + 4.0 / (3.0 * PI)).abs() < 1e-15);
}

#[test]
fn table_catalogue() {
    assert_eq!(TABLE_IDS.len(), 11);
    for id in TABLE_IDS {
        table_rows(id).unwrap();
    }
    assert!(table_rows("nope").is_err());
    let t = iteration_table_limited("helm-dir", 100).unwrap();
    assert!(t.rows.iter().all(|r| r.status.starts_with("skipped")));
    assert!(t.to_csv().lines().count() > 1);
}
