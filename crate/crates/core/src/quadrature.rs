//! Gauss rules on reference intervals.
//!
//! `gauss_legendre(n)` integrates on [-1, 1]; `gauss_log(n)` integrates
//! `-ln(x) f(x)` on [0, 1]. Both are cached per order.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use faer::{Mat, Side};

#[derive(Debug, Clone)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Same rule mapped to [a, b].
    pub fn mapped(&self, a: f64, b: f64) -> Rule {
        let h = 0.5 * (b - a);
        let c = 0.5 * (b + a);
        Rule {
            nodes: self.nodes.iter().map(|x| c + h * x).collect(),
            weights: self.weights.iter().map(|w| h * w).collect(),
        }
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for j in 2..=n {
        let jf = j as f64;
        let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    (p1, n as f64 * (x * p1 - p0) / (x * x - 1.0))
}

fn legendre_rule(n: usize) -> Rule {
    assert!(n >= 1);
    if n == 1 {
        return Rule { nodes: vec![0.0], weights: vec![2.0] };
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n / 2 {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        let (_, dp) = legendre_with_derivative(n, 0.0);
        nodes[n / 2] = 0.0;
        weights[n / 2] = 2.0 / (dp * dp);
    }
    Rule { nodes, weights }
}

/// Recurrence coefficients of the measure -ln(x) dx on [0,1] by discretized
/// Stieltjes, then Golub-Welsch.
fn log_rule(n: usize) -> Rule {
    let base = legendre_rule(24);
    let mut xs = Vec::new();
    let mut ws = Vec::new();
    let mut hi = 1.0f64;
    for _ in 0..60 {
        let lo = 0.5 * hi;
        for (x, w) in base.nodes.iter().zip(&base.weights) {
            let t = lo + 0.5 * (hi - lo) * (x + 1.0);
            xs.push(t);
            ws.push(-t.ln() * 0.5 * (hi - lo) * w);
        }
        hi = lo;
    }
    let m = xs.len();
    let mut alpha = vec![0.0; n];
    let mut beta = vec![0.0; n];
    let mut p_prev = vec![0.0; m];
    let mut p = vec![1.0; m];
    let mut norm_prev = 1.0;
    for j in 0..n {
        let norm: f64 = (0..m).map(|i| ws[i] * p[i] * p[i]).sum();
        let xn: f64 = (0..m).map(|i| ws[i] * xs[i] * p[i] * p[i]).sum();
        alpha[j] = xn / norm;
        beta[j] = if j == 0 { norm } else { norm / norm_prev };
        let next: Vec<f64> = (0..m)
            .map(|i| (xs[i] - alpha[j]) * p[i] - if j == 0 { 0.0 } else { beta[j] * p_prev[i] })
            .collect();
        p_prev = std::mem::replace(&mut p, next);
        norm_prev = norm;
    }
    let jac = Mat::<f64>::from_fn(n, n, |i, j| {
        if i == j {
            alpha[i]
        } else if i == j + 1 {
            beta[i].sqrt()
        } else if j == i + 1 {
            beta[j].sqrt()
        } else {
            0.0
        }
    });
    let eig = jac
        .self_adjoint_eigen(Side::Lower)
        .expect("Jacobi matrix eigendecomposition");
    let s = eig.S();
    let u = eig.U();
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| (s[i], beta[0] * u[(0, i)] * u[(0, i)]))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    Rule {
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
    }
}

type Cache = Mutex<HashMap<usize, Arc<Rule>>>;

fn cached(cache: &'static OnceLock<Cache>, n: usize, build: fn(usize) -> Rule) -> Arc<Rule> {
    let map = cache.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = map.lock().expect("quadrature cache poisoned");
    guard.entry(n).or_insert_with(|| Arc::new(build(n))).clone()
}

/// Gauss-Legendre rule with `n` points on [-1, 1].
pub fn gauss_legendre(n: usize) -> Arc<Rule> {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    cached(&CACHE, n, legendre_rule)
}

/// Gauss rule for the weight `-ln(x)` on [0, 1].
pub fn gauss_log(n: usize) -> Arc<Rule> {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    cached(&CACHE, n, log_rule)
}

/// Gauss-Chebyshev (first kind) nodes and equal weights π/n on [-1, 1].
pub fn gauss_chebyshev(n: usize) -> Rule {
    let nodes = (0..n)
        .map(|j| -(PI * (j as f64 + 0.5) / n as f64).cos())
        .collect();
    Rule {
        nodes,
        weights: vec![PI / n as f64; n],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_exact_for_polynomials() {
        for n in [1, 2, 3, 8, 16, 24] {
            let r = gauss_legendre(n);
            for p in 0..(2 * n) {
                let q: f64 = r.nodes.iter().zip(&r.weights).map(|(x, w)| w * x.powi(p as i32)).sum();
                let exact = if p % 2 == 1 { 0.0 } else { 2.0 / (p as f64 + 1.0) };
                assert!((q - exact).abs() < 1e-14, "n={n} p={p} {q} {exact}");
            }
        }
    }

    #[test]
    fn log_rule_moments() {
        let r = gauss_log(1);
        assert!((r.nodes[0] - 0.25).abs() < 1e-14);
        assert!((r.weights[0] - 1.0).abs() < 1e-14);
        for n in [2, 4, 8, 12, 16] {
            let r = gauss_log(n);
            for p in 0..(2 * n) {
                let q: f64 = r.nodes.iter().zip(&r.weights).map(|(x, w)| w * x.powi(p as i32)).sum();
                let exact = 1.0 / ((p as f64 + 1.0) * (p as f64 + 1.0));
                assert!((q - exact).abs() < 1e-13 * exact.max(1e-3), "n={n} p={p} {q} {exact}");
            }
        }
    }
}
