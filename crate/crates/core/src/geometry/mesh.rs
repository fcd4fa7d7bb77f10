use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::arc::{Arc, Point};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum MeshKind {
    /// t_i = −cos(iπ/N): equal panels in τ = arccos(−t).
    Chebyshev,
    /// Panel i near an edge has width ≈ (ih)^β.
    Beta { beta: f64 },
}

#[derive(Debug, Clone)]
pub struct GradedMesh {
    pub kind: MeshKind,
    pub n: usize,
    pub t: Vec<f64>,
    pub points: Vec<Point>,
}

impl GradedMesh {
    pub fn panel_count(&self) -> usize {
        self.n
    }

    /// Angle τ_i = iπ/N of breakpoint i (Chebyshev meshes only).
    pub fn tau(&self, i: usize) -> f64 {
        i as f64 * PI / self.n as f64
    }

    pub fn is_chebyshev(&self) -> bool {
        self.kind == MeshKind::Chebyshev
    }

    pub fn widths(&self) -> Vec<f64> {
        self.t.windows(2).map(|w| w[1] - w[0]).collect()
    }
}

/// Chebyshev-graded mesh with breakpoints t_i = −cos(iπ/N).
pub fn graded_mesh(arc: &Arc, n: usize) -> Result<GradedMesh> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("mesh needs N ≥ 2 panels, got {n}")));
    }
    // −cos(iπ/N) = sin((2i − N)π/(2N)), exactly symmetric with t = 0 at i = N/2
    let t: Vec<f64> = (0..=n)
        .map(|i| ((2.0 * i as f64 - n as f64) * PI / (2.0 * n as f64)).sin())
        .collect();
    let points = t.iter().map(|&v| arc.point(v)).collect();
    Ok(GradedMesh { kind: MeshKind::Chebyshev, n, t, points })
}

/// Mesh graded towards both edges: t_i = −1 + 2g(i/N) with
/// g(x) = 2^{β−1} x^β on [0, 1/2], mirrored on [1/2, 1].
pub fn beta_graded_mesh(arc: &Arc, n: usize, beta: f64) -> Result<GradedMesh> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("mesh needs N ≥ 2 panels, got {n}")));
    }
    if !(beta >= 1.0) {
        return Err(Error::InvalidParameter(format!("grading exponent {beta} < 1")));
    }
    let g = |x: f64| {
        if x <= 0.5 {
            2f64.powf(beta - 1.0) * x.powf(beta)
        } else {
            1.0 - 2f64.powf(beta - 1.0) * (1.0 - x).powf(beta)
        }
    };
    let t: Vec<f64> = (0..=n).map(|i| -1.0 + 2.0 * g(i as f64 / n as f64)).collect();
    let points = t.iter().map(|&v| arc.point(v)).collect();
    Ok(GradedMesh { kind: MeshKind::Beta { beta }, n, t, points })
}
