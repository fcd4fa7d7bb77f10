use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{load_custom_csv, Arc};
use crate::krylov::GmresConfig;
use crate::precond::{BoundaryCondition, PreconditionerConfig};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GeometrySpec {
    FlatSegment,
    Spiral,
    VShape { angle: f64 },
    /// CSV of (t, x, y) samples.
    Custom { path: PathBuf },
}

impl GeometrySpec {
    pub fn build(&self) -> Result<Arc> {
        match self {
            GeometrySpec::FlatSegment => Ok(Arc::flat_segment()),
            GeometrySpec::Spiral => Arc::spiral(),
            GeometrySpec::VShape { angle } => Arc::v_shape(*angle),
            GeometrySpec::Custom { path } => load_custom_csv(path),
        }
    }
}

/// Exactly one of `k`, `kL` and `kL_over_pi`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WavenumberSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
    #[serde(default, rename = "kL", skip_serializing_if = "Option::is_none")]
    pub kl: Option<f64>,
    #[serde(default, rename = "kL_over_pi", skip_serializing_if = "Option::is_none")]
    pub kl_over_pi: Option<f64>,
}

impl WavenumberSpec {
    pub fn k(k: f64) -> Self {
        Self { k: Some(k), ..Default::default() }
    }

    pub fn kl_over_pi(v: f64) -> Self {
        Self { kl_over_pi: Some(v), ..Default::default() }
    }

    pub fn kl(v: f64) -> Self {
        Self { kl: Some(v), ..Default::default() }
    }

    pub fn resolve(&self, length: f64) -> Result<f64> {
        let k = match (self.k, self.kl, self.kl_over_pi) {
            (Some(k), None, None) => k,
            (None, Some(v), None) => v / length,
            (None, None, Some(v)) => v * PI / length,
            _ => {
                return Err(Error::Scenario("give exactly one of k, kL, kL_over_pi".into()));
            }
        };
        if !(k >= 0.0 && k.is_finite()) {
            return Err(Error::Scenario(format!("wavenumber must be finite and nonnegative, got {k}")));
        }
        Ok(k)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum MeshSpec {
    /// t_i = −cos(iπ/N)
    Cosine,
    /// Algebraic grading towards both edges (standard formulation only).
    Beta { beta: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Formulation {
    /// S_{k,ω} / N_{k,ω} on the weighted spaces
    Weighted,
    /// S_k on the unweighted space (Dirichlet only)
    Standard,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ManufacturedCase {
    /// α = ω
    DirOmega,
    /// α = ω³
    DirOmega3,
    /// u_N = U₂
    NeuU2,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum RhsSpec {
    /// Trace (Dirichlet) or normal derivative (Neumann) of e^{ik(x cos θ + y sin θ)}.
    PlaneWave { angle: f64 },
    /// (x² + 1/N²)^{−1/2} (Dirichlet) or (x² + 1/N²)^{1/2} (Neumann).
    LaplaceTable,
    Constant { value: f64 },
    Manufactured { case: ManufacturedCase },
}

/// Files written to `dir`: `{name}.json`, `{name}_history.csv` and
/// `{name}_density.csv`. Nothing is written without `dir`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct OutputSpec {
    pub dir: Option<PathBuf>,
    pub report: bool,
    pub history: bool,
    pub density: bool,
}

impl Default for OutputSpec {
    fn default() -> Self {
        Self { dir: None, report: true, history: true, density: false }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default = "default_name")]
    pub name: String,
    pub geometry: GeometrySpec,
    pub bc: BoundaryCondition,
    pub wavenumber: WavenumberSpec,
    /// N = round(points_per_wavelength · k|Γ|) when `n` is absent.
    #[serde(default = "default_ppw")]
    pub points_per_wavelength: f64,
    #[serde(default)]
    pub n: Option<usize>,
    #[serde(default = "default_mesh")]
    pub mesh: MeshSpec,
    #[serde(default = "default_formulation")]
    pub formulation: Formulation,
    #[serde(default)]
    pub discontinuous: bool,
    pub rhs: RhsSpec,
    #[serde(default)]
    pub preconditioner: PreconditionerConfig,
    #[serde(default)]
    pub solver: GmresConfig,
    #[serde(default)]
    pub outputs: OutputSpec,
}

fn default_name() -> String {
    "scenario".into()
}

fn default_ppw() -> f64 {
    5.0
}

fn default_mesh() -> MeshSpec {
    MeshSpec::Cosine
}

fn default_formulation() -> Formulation {
    Formulation::Weighted
}

impl Scenario {
    pub fn new(geometry: GeometrySpec, bc: BoundaryCondition, wavenumber: WavenumberSpec, rhs: RhsSpec) -> Self {
        Self {
            name: default_name(),
            geometry,
            bc,
            wavenumber,
            points_per_wavelength: default_ppw(),
            n: None,
            mesh: default_mesh(),
            formulation: default_formulation(),
            discontinuous: false,
            rhs,
            preconditioner: PreconditionerConfig::default(),
            solver: GmresConfig::default(),
            outputs: OutputSpec::default(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text).map_err(|e| Error::Scenario(format!("{}: {e}", path.display())))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serializes")
    }

    /// Panel count. V-shaped arcs get an even count so that the corner is a
    /// breakpoint of the cosine mesh.
    pub fn mesh_size(&self, arc: &Arc, k: f64) -> Result<usize> {
        let n = match self.n {
            Some(n) => n,
            None => {
                if k == 0.0 {
                    return Err(Error::Scenario("k = 0 needs an explicit mesh size n".into()));
                }
                (self.points_per_wavelength * k * arc.length()).round() as usize
            }
        };
        if n < 2 {
            return Err(Error::Scenario(format!("mesh size {n} < 2")));
        }
        let corner = matches!(self.geometry, GeometrySpec::VShape { .. }) && self.mesh == MeshSpec::Cosine;
        Ok(if corner && n % 2 == 1 { n + 1 } else { n })
    }
}
