use faer::Mat;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use screen_bem::assembly::OperatorMatrix;
use screen_bem::krylov::{gmres, GmresConfig};
use screen_bem::precond::{DenseInverse, Identity, LinearOperator};

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn random_vec(n: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    (0..n).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect()
}

#[test]
fn identity_takes_one_iteration() {
    let b = random_vec(20, 1);
    let a = Identity(20);
    let (x, rep) = gmres(&a, &b, &Identity(20), &GmresConfig::default()).unwrap();
    assert_eq!(rep.iterations, 1);
    assert!(rep.relative_residual_history[1] < 1e-15);
    assert!(x.iter().zip(&b).all(|(p, q)| (p - q).norm() < 1e-14));
}

#[test]
fn diagonal_two_by_two() {
    let a = OperatorMatrix::dense_real(Mat::from_fn(2, 2, |i, j| if i == j { (i + 1) as f64 } else { 0.0 }));
    let b = vec![c(1.0), c(1.0)];
    let (x, rep) = gmres(&a, &b, &Identity(2), &GmresConfig::default()).unwrap();
    assert!(rep.converged && rep.iterations <= 2);
    assert!((x[1] - c(0.5)).norm() < 1e-12);
}

#[test]
fn exact_preconditioner_converges_in_one_step() {
    let n = 50;
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    let g = Mat::<f64>::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0));
    let spd = Mat::<f64>::from_fn(n, n, |i, j| {
        (0..n).map(|l| g[(l, i)] * g[(l, j)]).sum::<f64>() + if i == j { n as f64 } else { 0.0 }
    });
    let inv = DenseInverse::new(&Mat::from_fn(n, n, |i, j| c(spd[(i, j)]))).unwrap();
    let a = OperatorMatrix::dense_real(spd);
    let b = random_vec(n, 3);
    let cfg = GmresConfig { tol: 1e-12, ..Default::default() };
    let (_, rep) = gmres(&a, &b, &inv, &cfg).unwrap();
    assert_eq!(rep.iterations, 1);
    assert!(rep.final_true_residual < 1e-12);
}

#[test]
fn zero_rhs_gives_zero_solution() {
    let a = Identity(5);
    let (x, rep) = gmres(&a, &vec![c(0.0); 5], &a, &GmresConfig::default()).unwrap();
    assert_eq!(rep.iterations, 0);
    assert!(rep.converged);
    assert!(x.iter().all(|z| z.norm() == 0.0));
}

#[test]
fn history_is_monotone_and_true_residual_tracks() {
    let n = 80;
    let mut rng = rand::rngs::StdRng::seed_from_u64(11);
    let a = OperatorMatrix::dense_complex(Mat::from_fn(n, n, |i, j| {
        let d = if i == j { 2.0 + i as f64 / n as f64 } else { 0.0 };
        Complex64::new(d + 0.3 * rng.gen_range(-1.0..1.0) / (n as f64).sqrt(), 0.1 * rng.gen_range(-1.0..1.0) / (n as f64).sqrt())
    }));
    let b = random_vec(n, 5);
    let cfg = GmresConfig { track_true_residual: true, ..Default::default() };
    let (_, rep) = gmres(&a, &b, &Identity(n), &cfg).unwrap();
    assert!(rep.converged);
    for w in rep.relative_residual_history.windows(2) {
        assert!(w[1] <= w[0] * (1.0 + 1e-12));
    }
    assert_eq!(rep.true_residual_history.len(), rep.relative_residual_history.len());
    assert!(rep.final_true_residual <= 100.0 * cfg.tol);
    let (_, again) = gmres(&a, &b, &Identity(n), &cfg).unwrap();
    assert_eq!(again.relative_residual_history, rep.relative_residual_history);
}

#[test]
fn iteration_cap_reports_failure() {
    let n = 60;
    let a = OperatorMatrix::dense_real(Mat::from_fn(n, n, |i, j| if i == j { (i + 1) as f64 } else { 0.0 }));
    let b = random_vec(n, 9);
    let cfg = GmresConfig { max_iter: 5, ..Default::default() };
    let (_, rep) = gmres(&a, &b, &Identity(n), &cfg).unwrap();
    assert!(!rep.converged);
    assert_eq!(rep.iterations, 5);
    assert_eq!(rep.relative_residual_history.len(), 6);
}

#[test]
fn dimension_mismatch_is_an_error() {
    assert!(gmres(&Identity(3), &vec![c(1.0); 4], &Identity(4), &GmresConfig::default()).is_err());
    let _ = Identity(3).cost();
}
