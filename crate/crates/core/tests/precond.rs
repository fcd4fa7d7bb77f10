use std::f64::consts::PI;

use faer::Mat;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use screen_bem::assembly::*;
use screen_bem::geometry::{graded_mesh, Arc};
use screen_bem::linalg::Tridiagonal;
use screen_bem::precond::*;
use screen_bem::specfun::{pade_coefficients, pade_sqrt_scalar, sharp_bound};

fn flat_space(n: usize, weight: Weight) -> GalerkinSpace {
    let arc = Arc::flat_segment();
    GalerkinSpace::new(&arc, graded_mesh(&arc, n).unwrap(), Continuity::Continuous, weight).unwrap()
}

fn random_vec(n: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    (0..n).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect()
}

fn tri(m: &OperatorMatrix) -> Tridiagonal<f64> {
    m.as_tridiagonal().unwrap().clone()
}

/// Eigenvalues of the dense product P·A.
fn product_spectrum(p: &dyn LinearOperator, a: &OperatorMatrix) -> Vec<Complex64> {
    let n = a.dim();
    let ad = a.to_dense_complex();
    let mut prod = Mat::<Complex64>::zeros(n, n);
    for j in 0..n {
        let col: Vec<Complex64> = (0..n).map(|i| ad[(i, j)]).collect();
        let y = p.apply(&col);
        for i in 0..n {
            prod[(i, j)] = y[i];
        }
    }
    prod.eigenvalues().unwrap()
}

#[test]
fn spectral_sqrt_of_identity_operator() {
    let s = flat_space(16, Weight::InvOmega);
    let m = tri(&assemble_mass(&s).unwrap());
    for e in [0.5, -0.5] {
        let f = build_spectral_sqrt(&m, &m, e).unwrap();
        for i in 0..17 {
            for j in 0..17 {
                assert!((f[(i, j)] - m.get(i, j)).abs() < 1e-12);
            }
        }
    }
    assert!(build_spectral_sqrt(&m, &m, 1.0).is_err());
    let neg = Tridiagonal::combine(-1.0, &m, 0.0, &m);
    assert!(matches!(build_spectral_sqrt(&neg, &m, 0.5), Err(screen_bem::Error::NegativeEigenvalue(_))));
}

#[test]
fn pade_map_scalar_consistency() {
    let coeffs = pade_coefficients(15, PI / 3.0).unwrap();
    for (x, mm, k) in [(3.0, 0.7, 2.0), (50.0, 1.3, 4.0), (0.5, 2.0, 1.0)] {
        let xt = Tridiagonal { lower: vec![], diag: vec![x * mm], upper: vec![] };
        let mt = Tridiagonal { lower: vec![], diag: vec![mm], upper: vec![] };
        let p = build_pade_sqrt(&xt, &mt, k, &coeffs, 0.0).unwrap();
        let y = p.apply(&[Complex64::new(1.0, 0.0)])[0];
        let expected = Complex64::new(0.0, k) * pade_sqrt_scalar(Complex64::new(-x / (k * k), 0.0), &coeffs).unwrap() * mm;
        assert!((y - expected).norm() < 1e-12 * expected.norm(), "{y} {expected}");
    }
}

#[test]
fn preconditioners_are_linear() {
    let s = flat_space(64, Weight::InvOmega);
    let cfg = PreconditionerConfig::default();
    for k in [0.0, 7.0] {
        let p = build_dirichlet_preconditioner(&s, k, &cfg).unwrap();
        let (u, v) = (random_vec(65, 1), random_vec(65, 2));
        let (al, be) = (Complex64::new(0.3, -1.2), Complex64::new(-2.0, 0.5));
        let lhs = p.apply(&u.iter().zip(&v).map(|(a, b)| al * a + be * b).collect::<Vec<_>>());
        let (pu, pv) = (p.apply(&u), p.apply(&v));
        let scale = lhs.iter().fold(0.0f64, |m, z| m.max(z.norm()));
        for i in 0..65 {
            assert!((lhs[i] - al * pu[i] - be * pv[i]).norm() < 1e-12 * scale);
        }
        let again = p.apply(&u);
        assert_eq!(again, pu);
    }
}

#[test]
fn pade_agrees_with_pencil_square_root_off_grazing() {
    let k = 2.0 * PI;
    let s = flat_space(256, Weight::InvOmega);
    let m = tri(&assemble_mass(&s).unwrap());
    let x = tri(&assemble_sqrt_argument(&s, SqrtArgumentKind::Dirichlet, k).unwrap());
    let coeffs = pade_coefficients(15, PI / 3.0).unwrap();
    // undamped: the damping ε shifts the map by O(ε/k) on purpose
    let p = build_pade_sqrt(&x, &m, k, &coeffs, 0.0).unwrap();
    let eig = pencil_eigen(&x, &m).unwrap();
    let mut checked = 0;
    for j in 0..eig.values.len() {
        let lam = eig.values[j];
        let ratio = lam / (k * k);
        if (ratio - 1.0).abs() <= 0.1 || ratio >= 40.0 {
            continue;
        }
        let v: Vec<Complex64> = (0..eig.values.len()).map(|i| Complex64::new(eig.vectors[(i, j)], 0.0)).collect();
        let y = p.apply(&v);
        let exact = Complex64::new(0.0, k) * Complex64::new(1.0 - ratio, 0.0).sqrt();
        let mv = m.apply(&v);
        let err: f64 = y.iter().zip(&mv).map(|(a, b)| (a - exact * b).norm_sqr()).sum::<f64>().sqrt();
        let nrm: f64 = mv.iter().map(|b| (exact * b).norm_sqr()).sum::<f64>().sqrt();
        // on an exact pencil eigenvector the map reduces to the scalar approximant
        let z = Complex64::new(-ratio, 0.0);
        let bound = sharp_bound(z, PI / 3.0, 15) / (1.0 - ratio).abs().sqrt();
        assert!(err <= (bound + 1e-9) * nrm, "λ/k² = {ratio}: {} > {bound}", err / nrm);
        if ratio < 10.0 {
            assert!(err < 1e-3 * nrm, "λ/k² = {ratio}: {}", err / nrm);
        }
        checked += 1;
    }
    assert!(checked > 20);
}

#[test]
fn laplace_dirichlet_preconditioner_clusters() {
    let s = flat_space(256, Weight::InvOmega);
    let sl = assemble_single_layer_weighted(&s, 0.0).unwrap();
    let p = build_dirichlet_preconditioner(&s, 0.0, &PreconditionerConfig::default()).unwrap();
    let ev = product_spectrum(p.as_ref(), &sl);
    // P1 discretization spreads the top of the spectrum up to ≈ 1.14, independently of N
    assert!(ev.iter().all(|z| z.re > 0.99 && z.re < 1.15 && z.im.abs() < 1e-8));
    let inside = ev.iter().filter(|z| (z.re - 1.0).abs() <= 0.1).count();
    assert!(inside as f64 >= 0.55 * ev.len() as f64, "{inside}/{}", ev.len());
}

#[test]
fn laplace_neumann_preconditioner_clusters() {
    let s = flat_space(256, Weight::Omega);
    let hs = assemble_hypersingular_weighted(&s, 0.0).unwrap();
    let p = build_neumann_preconditioner(&s, 0.0, &PreconditionerConfig::default()).unwrap();
    let ev = product_spectrum(p.as_ref(), &hs);
    let inside = ev.iter().filter(|z| (z.re - 1.0).abs() <= 0.1 && z.im.abs() < 0.1).count();
    assert!(inside as f64 >= 0.95 * ev.len() as f64, "{inside}/{}", ev.len());
}

#[test]
fn helmholtz_dirichlet_second_kind_clustering() {
    let k = 10.0 * PI;
    let s = flat_space(256, Weight::InvOmega);
    let sl = assemble_single_layer_weighted(&s, k).unwrap();
    let p = build_dirichlet_preconditioner(&s, k, &PreconditionerConfig::default()).unwrap();
    let ev = product_spectrum(p.as_ref(), &sl);
    let inside = ev.iter().filter(|z| (*z - Complex64::new(1.0, 0.0)).norm() < 0.3).count();
    assert!(inside as f64 >= 0.8 * ev.len() as f64, "{inside}/{}", ev.len());
}

#[test]
fn neumann_inverse_consistency() {
    let k = 12.0;
    let s = flat_space(64, Weight::Omega);
    let m = tri(&assemble_mass(&s).unwrap());
    let x = tri(&assemble_sqrt_argument(&s, SqrtArgumentKind::Neumann, k).unwrap());
    let cfg = PreconditionerConfig::default();
    let coeffs = pade_coefficients(cfg.np, cfg.theta).unwrap();
    let c = Scaled(Complex64::new(-0.5, 0.0), Box::new(build_pade_sqrt(&x, &m, k, &coeffs, cfg.damping(k)).unwrap()));
    let mn = build_neumann_preconditioner(&s, k, &cfg).unwrap();
    let v = random_vec(65, 4);
    let back = mn.apply(&c.apply(&v));
    for (a, b) in back.iter().zip(&v) {
        assert!((a - b).norm() < 1e-8);
    }
}

#[test]
fn comparison_kinds_build() {
    let k = 5.0;
    let s = flat_space(32, Weight::InvOmega);
    for kind in [PreconditionerKind::None, PreconditionerKind::SqrtLaplace, PreconditionerKind::Calderon] {
        let p = build_preconditioner(BoundaryCondition::Dirichlet, &s, k, &PreconditionerConfig::of_kind(kind)).unwrap();
        assert_eq!(p.dim(), 33);
    }
    let v = random_vec(33, 8);
    let id = build_preconditioner(BoundaryCondition::Dirichlet, &s, k, &PreconditionerConfig::of_kind(PreconditionerKind::None)).unwrap();
    assert_eq!(id.apply(&v), v);
    let arc = Arc::flat_segment();
    let unit = GalerkinSpace::new(&arc, screen_bem::geometry::beta_graded_mesh(&arc, 32, 2.0).unwrap(), Continuity::Continuous, Weight::Unit).unwrap();
    let p = build_preconditioner(BoundaryCondition::Dirichlet, &unit, k, &PreconditionerConfig::of_kind(PreconditionerKind::StandardSqrt)).unwrap();
    assert_eq!(p.dim(), 33);
    let cal = build_calderon(BoundaryCondition::Dirichlet, &s, k).unwrap();
    let sq = build_dirichlet_preconditioner(&s, k, &PreconditionerConfig::default()).unwrap();
    assert!(cal.cost().dense_matvecs == 1 && sq.cost().dense_matvecs == 0);
}
