use std::f64::consts::{FRAC_PI_4, PI};

use screen_bem::geometry::*;

fn spiral_exact_length() -> f64 {
    4.16f64.sqrt() / 0.4 * ((0.32f64).exp() - (-0.48f64).exp())
}

/// Closed-form arclength inverse of the spiral.
fn spiral_exact_point(t: f64) -> [f64; 2] {
    let l = spiral_exact_length();
    let u = 0.2 + ((-0.48f64).exp() + 0.5 * l * (t + 1.0) * 0.4 / 4.16f64.sqrt()).ln() / 0.4;
    let e = (0.4 * (u - 0.2)).exp();
    [e * (2.0 * (u - 0.2)).cos(), e * (2.0 * (u - 0.2)).sin()]
}

#[test]
fn flat_segment_basics() {
    let arc = make_arc(&ArcKind::FlatSegment).unwrap();
    assert_eq!(arc.length(), 2.0);
    for t in [-1.0, -0.3, 0.0, 0.8, 1.0] {
        assert_eq!(arc.point(t), [t, 0.0]);
        let n = normal_vector(&arc, t).unwrap();
        assert!((n[0]).abs() < 1e-15 && (n[1] - 1.0).abs() < 1e-15);
    }
    assert!((weight_omega(&arc, 0.0) - 1.0).abs() < 1e-15);
    assert_eq!(weight_omega(&arc, 1.0), 0.0);
    assert_eq!(weight_omega(&arc, -1.0), 0.0);
}

#[test]
fn spiral_length_and_normalization() {
    let arc = Arc::spiral().unwrap();
    let exact = spiral_exact_length();
    assert!((arc.length() - exact).abs() < 1e-12, "{} vs {}", arc.length(), exact);
    // "about 3.88" is the rounded closed form 3.8668
    assert!((arc.length() - 3.88).abs() < 0.02);
    let half = 0.5 * arc.length();
    let mut worst = 0.0f64;
    for i in 0..=4000 {
        let t = -1.0 + 2.0 * i as f64 / 4000.0;
        let d = arc.derivative(t);
        worst = worst.max((d[0].hypot(d[1]) - half).abs() / half);
        let p = arc.point(t);
        let q = spiral_exact_point(t);
        assert!((p[0] - q[0]).abs() < 1e-12 && (p[1] - q[1]).abs() < 1e-12, "t={t}");
    }
    assert!(worst < 1e-8, "speed deviation {worst}");
    assert!((weight_omega(&arc, 0.0) - half).abs() < 1e-14);
    assert!((weight_omega(&arc, 0.0) - 1.94).abs() < 0.01);
    let n = normal_vector(&arc, 0.0).unwrap();
    let d = arc.derivative(0.0);
    assert!((n[0] * d[0] + n[1] * d[1]).abs() < 1e-12);
    assert!((n[0].hypot(n[1]) - 1.0).abs() < 1e-14);
}

#[test]
fn normalization_is_idempotent() {
    let arc = Arc::spiral().unwrap();
    let again = normalize_parametrization(&arc.to_raw()).unwrap();
    assert!((arc.length() - again.length()).abs() < 1e-12);
    for i in 0..=200 {
        let t = -1.0 + 2.0 * i as f64 / 200.0;
        let (p, q) = (arc.point(t), again.point(t));
        assert!((p[0] - q[0]).abs() < 1e-12 && (p[1] - q[1]).abs() < 1e-12);
    }
    let v = Arc::v_shape(PI / 3.0).unwrap();
    let w = normalize_parametrization(&v.to_raw()).unwrap();
    assert!((w.length() - 2.0).abs() < 1e-13);
    assert_eq!(w.corners().len(), 1);
    for i in 0..=50 {
        let t = -1.0 + 2.0 * i as f64 / 50.0;
        let (p, q) = (v.point(t), w.point(t));
        assert!((p[0] - q[0]).abs() < 1e-12 && (p[1] - q[1]).abs() < 1e-12);
    }
}

#[test]
fn v_shape() {
    assert!(Arc::v_shape(0.0).is_err());
    assert!(Arc::v_shape(3.5).is_err());
    let arc = Arc::v_shape(PI / 2.0).unwrap();
    assert_eq!(arc.length(), 2.0);
    for t in [-0.9, -0.2, 0.3, 1.0] {
        let d = arc.derivative(t);
        assert!((d[0].hypot(d[1]) - 1.0).abs() < 1e-15);
    }
    let n = normal_vector(&arc, 0.5).unwrap();
    assert!((n[0] + FRAC_PI_4.cos()).abs() < 1e-15 && (n[1] - FRAC_PI_4.sin()).abs() < 1e-15);
    assert!(normal_vector(&arc, 0.0).is_err());
    // θ = π is the flat segment lifted... rotated onto the x axis
    let flat = Arc::v_shape(PI).unwrap();
    for t in [-1.0, -0.25, 0.5, 1.0] {
        let p = flat.point(t);
        assert!((p[0] - t).abs() < 1e-15 && p[1].abs() < 1e-15);
    }
}

#[test]
fn chord_is_accurate_near_coincidence() {
    let arc = Arc::spiral().unwrap();
    let (tau, sigma) = (1e-3f64, 1.0001e-3f64);
    let t = -tau.cos();
    let s = -sigma.cos();
    let dt = 2.0 * (0.5 * (tau + sigma)).sin() * (0.5 * (sigma - tau)).sin();
    let c = arc.chord(s, t, -dt);
    // constant speed: chord ≈ (L/2)|dt| for tiny separations
    assert!((c / dt.abs() - 0.5 * arc.length()).abs() < 1e-9);
}

#[test]
fn weight_is_even() {
    for arc in [Arc::flat_segment(), Arc::spiral().unwrap(), Arc::v_shape(1.0).unwrap()] {
        for i in 0..=100 {
            let t = i as f64 / 100.0;
            assert!((weight_omega(&arc, t) - weight_omega(&arc, -t)).abs() <= 1e-14);
        }
    }
}

#[test]
fn custom_curves() {
    let t: Vec<f64> = (0..=40).map(|i| i as f64 / 40.0).collect();
    let x: Vec<f64> = t.iter().map(|v| 2.0 * v).collect();
    let y: Vec<f64> = t.iter().map(|v| 0.2 * (3.0 * v).sin()).collect();
    let raw = RawCurve::from_samples(&t, &x, &y).unwrap();
    let arc = normalize_parametrization(&raw).unwrap();
    assert!(arc.length() > 2.0 && arc.length() < 2.2);
    // figure-eight loop crosses itself
    let t: Vec<f64> = (0..=64).map(|i| i as f64 / 64.0 * 1.8 * PI).collect();
    let x: Vec<f64> = t.iter().map(|v| v.sin()).collect();
    let y: Vec<f64> = t.iter().map(|v| (2.0 * v).sin()).collect();
    assert!(RawCurve::from_samples(&t, &x, &y).is_err());
    let csv = "t,x,y\n0,0,0\n0.5,1,0.1\n1,2,0\n";
    let arc = parse_custom_csv(csv).unwrap();
    assert!(arc.length() > 2.0);
}

#[test]
fn graded_mesh_breakpoints() {
    let arc = Arc::flat_segment();
    let m = graded_mesh(&arc, 2).unwrap();
    assert_eq!(m.t, vec![-1.0, 0.0, 1.0]);
    let m = graded_mesh(&arc, 4).unwrap();
    let r = 0.5f64.sqrt();
    for (a, b) in m.t.iter().zip([-1.0, -r, 0.0, r, 1.0]) {
        assert!((a - b).abs() < 1e-15);
    }
    assert!(graded_mesh(&arc, 1).is_err());
    let m = graded_mesh(&arc, 100).unwrap();
    for w in m.t.windows(2) {
        let h = (-w[1]).acos() - (-w[0]).acos();
        assert!((h - PI / 100.0).abs() < 1e-12 * PI / 100.0);
    }
    for i in 0..=100 {
        assert_eq!(m.t[i], -m.t[100 - i]);
        if i > 0 {
            assert!(m.t[i] > m.t[i - 1]);
        }
    }
    assert!((m.t[1] - m.t[0] - (1.0 - (PI / 100.0).cos())).abs() < 1e-15);
    let m = graded_mesh(&arc, 400).unwrap();
    let w = m.widths();
    assert!((w[1] / w[0] - 3.0).abs() < 0.3);
}

#[test]
fn beta_mesh() {
    let arc = Arc::flat_segment();
    let m = beta_graded_mesh(&arc, 10, 1.0).unwrap();
    for w in m.widths() {
        assert!((w - 0.2).abs() < 1e-14);
    }
    let m = beta_graded_mesh(&arc, 80, 5.0).unwrap();
    assert!((m.t[40]).abs() < 1e-15);
    assert!(m.widths()[0] < 1e-6);
}
