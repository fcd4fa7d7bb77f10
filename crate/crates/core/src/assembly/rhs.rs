use num_complex::Complex64;

use super::space::{GalerkinSpace, Weight};
use crate::geometry::Point;
use crate::quadrature::gauss_legendre;

/// Load vector ⟨f, φ_i⟩ in the pairing of the space's weight, where f is
/// given as a function of (t, point, unit normal).
pub fn assemble_rhs(space: &GalerkinSpace, f: impl Fn(f64, Point, Point) -> Complex64) -> Vec<Complex64> {
    let half = 0.5 * space.arc.length();
    let gl = gauss_legendre(16);
    let mut out = vec![Complex64::new(0.0, 0.0); space.dof_count()];
    for p in 0..space.panels() {
        let h = space.width(p);
        let dofs = space.dofs(p);
        for (x, w) in gl.nodes.iter().zip(&gl.weights) {
            let nd = space.node(p, 0.5 * h * (x + 1.0));
            let measure = match space.weight {
                Weight::InvOmega => 1.0 / std::f64::consts::PI,
                Weight::Omega => half * half * nd.s * nd.s,
                Weight::Unit => half,
            };
            let v = f(nd.t, nd.point, nd.normal) * (0.5 * h * w * measure);
            out[dofs[0]] += v * nd.phi[0];
            out[dofs[1]] += v * nd.phi[1];
        }
    }
    out
}

/// e^{ik d·x} with d = (cos θ, sin θ).
pub fn plane_wave(k: f64, theta: f64) -> impl Fn(f64, Point, Point) -> Complex64 {
    let d = [theta.cos(), theta.sin()];
    move |_, x, _| Complex64::from_polar(1.0, k * (d[0] * x[0] + d[1] * x[1]))
}

/// ∂_n e^{ik d·x} = ik (d·n) e^{ik d·x}.
pub fn plane_wave_normal_derivative(k: f64, theta: f64) -> impl Fn(f64, Point, Point) -> Complex64 {
    let d = [theta.cos(), theta.sin()];
    move |_, x, n| {
        Complex64::new(0.0, k * (d[0] * n[0] + d[1] * n[1])) * Complex64::from_polar(1.0, k * (d[0] * x[0] + d[1] * x[1]))
    }
}
