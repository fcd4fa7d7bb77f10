mod arc;
mod mesh;
mod spline;

pub use arc::{load_custom_csv, make_arc, normalize_parametrization, parse_custom_csv, Arc, ArcKind, Point, RawCurve};
pub use mesh::{beta_graded_mesh, graded_mesh, GradedMesh, MeshKind};
pub use spline::CubicSpline;

/// ω_Γ(r(t)) = (L/2)√(1 − t²).
pub fn weight_omega(arc: &Arc, t: f64) -> f64 {
    arc.weight_omega(t)
}

pub fn normal_vector(arc: &Arc, t: f64) -> crate::Result<Point> {
    arc.normal(t)
}
