use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Arc, GradedMesh, MeshKind, Point};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Continuity {
    Continuous,
    Discontinuous,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Weight {
    /// ⟨u, v⟩ = (1/π) ∫ u v dt/√(1 − t²)
    InvOmega,
    /// ⟨u, v⟩ = ∫ u v ω_Γ dσ
    Omega,
    /// ⟨u, v⟩ = ∫ u v dσ
    Unit,
}

impl Weight {
    pub fn name(self) -> &'static str {
        match self {
            Weight::InvOmega => "inv-omega",
            Weight::Omega => "omega",
            Weight::Unit => "unit",
        }
    }
}

/// Piecewise-affine functions (in the parameter t) on a mesh of an arc.
#[derive(Debug, Clone)]
pub struct GalerkinSpace {
    pub arc: Arc,
    pub mesh: GradedMesh,
    pub continuity: Continuity,
    pub weight: Weight,
}

impl GalerkinSpace {
    pub fn new(arc: &Arc, mesh: GradedMesh, continuity: Continuity, weight: Weight) -> Result<Self> {
        if weight != Weight::Unit && mesh.kind != MeshKind::Chebyshev {
            return Err(Error::InvalidParameter(format!(
                "the {} weight needs the cosine mesh",
                weight.name()
            )));
        }
        Ok(Self { arc: arc.clone(), mesh, continuity, weight })
    }

    pub fn dof_count(&self) -> usize {
        match self.continuity {
            Continuity::Continuous => self.mesh.n + 1,
            Continuity::Discontinuous => 2 * self.mesh.n,
        }
    }

    pub fn panels(&self) -> usize {
        self.mesh.n
    }

    /// Global indices of the left and right local functions of a panel.
    #[inline]
    pub fn dofs(&self, panel: usize) -> [usize; 2] {
        match self.continuity {
            Continuity::Continuous => [panel, panel + 1],
            Continuity::Discontinuous => [2 * panel, 2 * panel + 1],
        }
    }

    /// Uses τ = arccos(−t) as integration variable (Chebyshev meshes).
    pub fn uses_tau(&self) -> bool {
        self.mesh.kind == MeshKind::Chebyshev && self.weight != Weight::Unit
    }

    pub fn panel_of(&self, t: f64) -> usize {
        let n = self.mesh.n;
        match self.mesh.t.binary_search_by(|v| v.total_cmp(&t)) {
            Ok(i) => i.min(n - 1),
            Err(i) => i.saturating_sub(1).min(n - 1),
        }
    }

    /// Value of basis function `i` at parameter t.
    pub fn basis(&self, i: usize, t: f64) -> f64 {
        let p = self.panel_of(t);
        let [a, b] = self.dofs(p);
        let (t0, t1) = (self.mesh.t[p], self.mesh.t[p + 1]);
        if i == a {
            (t1 - t) / (t1 - t0)
        } else if i == b {
            (t - t0) / (t1 - t0)
        } else {
            0.0
        }
    }

    /// Σ_i c_i φ_i(t).
    pub fn evaluate<T>(&self, coeffs: &[T], t: f64) -> T
    where
        T: Copy + std::ops::Mul<f64, Output = T> + std::ops::Add<Output = T>,
    {
        let p = self.panel_of(t);
        let [a, b] = self.dofs(p);
        let (t0, t1) = (self.mesh.t[p], self.mesh.t[p + 1]);
        coeffs[a] * ((t1 - t) / (t1 - t0)) + coeffs[b] * ((t - t0) / (t1 - t0))
    }

    /// Nodal interpolant of f (continuous spaces) or panelwise endpoint
    /// values (discontinuous spaces).
    pub fn interpolate<T: Copy + Default>(&self, f: impl Fn(f64) -> T) -> Vec<T> {
        let mut v = vec![T::default(); self.dof_count()];
        for p in 0..self.panels() {
            let [a, b] = self.dofs(p);
            v[a] = f(self.mesh.t[p]);
            v[b] = f(self.mesh.t[p + 1]);
        }
        v
    }
}

/// Evaluation data of the two local basis functions of a panel at one point.
#[derive(Debug, Clone, Copy)]
pub(crate) struct NodeInfo {
    pub panel: usize,
    /// Local offset from the left end of the panel, in the integration variable.
    pub off: f64,
    pub t: f64,
    /// sin τ (τ coordinates) or √(1 − t²)
    pub s: f64,
    pub point: Point,
    pub normal: Point,
    pub phi: [f64; 2],
    /// d/dt of the local functions
    pub dphi: [f64; 2],
}

impl GalerkinSpace {
    /// Panel width in the integration variable.
    #[inline]
    pub(crate) fn width(&self, panel: usize) -> f64 {
        if self.uses_tau() {
            PI / self.mesh.n as f64
        } else {
            self.mesh.t[panel + 1] - self.mesh.t[panel]
        }
    }

    pub(crate) fn node(&self, panel: usize, off: f64) -> NodeInfo {
        let (t, s, phi, dphi);
        if self.uses_tau() {
            let n = self.mesh.n;
            let h = PI / n as f64;
            let tp = panel as f64 * h;
            let tau = tp + off;
            let taubar = (n - panel) as f64 * h - off;
            t = if tau <= 0.5 * PI { -tau.cos() } else { taubar.cos() };
            s = if tau <= 0.5 * PI { tau.sin() } else { taubar.sin() };
            let right = 2.0 * (tp + 0.5 * off).sin() * (0.5 * off).sin();
            let left = 2.0 * (tp + h - 0.5 * (h - off)).sin() * (0.5 * (h - off)).sin();
            let width = 2.0 * (tp + 0.5 * h).sin() * (0.5 * h).sin();
            phi = [left / width, right / width];
            dphi = [-1.0 / width, 1.0 / width];
        } else {
            let t0 = self.mesh.t[panel];
            let width = self.mesh.t[panel + 1] - t0;
            t = t0 + off;
            s = (1.0 - t * t).max(0.0).sqrt();
            phi = [(width - off) / width, off / width];
            dphi = [-1.0 / width, 1.0 / width];
        }
        let normal = {
            let d = self.arc.derivative(t);
            let m = d[0].hypot(d[1]);
            [-d[1] / m, d[0] / m]
        };
        NodeInfo { panel, off, t, s, point: self.arc.point(t), normal, phi, dphi }
    }
}
