//! Square-root preconditioners and the comparison preconditioners.

mod operator;
mod pade;
mod spectral;

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use operator::{to_dense, Cost, DenseInverse, Identity, LinearOperator, Product, Scaled, TridiagonalSolve};
pub use pade::{build_pade_sqrt, default_damping, SqrtPreconditioner};
pub use spectral::{build_spectral_sqrt, pencil_eigen, PencilEigen, SpectralMap};

use crate::assembly::{
    assemble_hypersingular_weighted, assemble_mass, assemble_single_layer_weighted, assemble_sqrt_argument,
    assemble_standard_stiffness, Continuity, GalerkinSpace, OperatorMatrix, SqrtArgumentKind, Weight,
};
use crate::error::{Error, Result};
use crate::linalg::Tridiagonal;
use crate::specfun::pade_coefficients;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundaryCondition {
    Dirichlet,
    Neumann,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PreconditionerKind {
    None,
    /// P_k / Q_k
    Sqrt,
    /// P'_0 = √(−(ω∂)² + I)
    SqrtLaplace,
    /// P'_k = √(−∂² − k²) on the unweighted space
    StandardSqrt,
    /// generalized Calderón: P1 for Dirichlet, P2 for Neumann
    Calderon,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PreconditionerConfig {
    #[serde(rename = "type")]
    pub kind: PreconditionerKind,
    #[serde(rename = "Np")]
    pub np: usize,
    pub theta: f64,
    /// Overrides ε = 0.05 k^{1/3}.
    pub eps: Option<f64>,
}

impl Default for PreconditionerConfig {
    fn default() -> Self {
        Self { kind: PreconditionerKind::Sqrt, np: 15, theta: PI / 3.0, eps: None }
    }
}

impl PreconditionerConfig {
    pub fn of_kind(kind: PreconditionerKind) -> Self {
        Self { kind, ..Default::default() }
    }

    pub fn damping(&self, k: f64) -> f64 {
        self.eps.unwrap_or_else(|| default_damping(k))
    }
}

fn tri(m: &OperatorMatrix) -> Result<&Tridiagonal<f64>> {
    m.as_tridiagonal().ok_or_else(|| Error::InvalidParameter("expected a sparse real matrix".into()))
}

fn require(space: &GalerkinSpace, weight: Weight) -> Result<()> {
    if space.weight != weight {
        return Err(Error::WeightMismatch { expected: weight.name(), got: space.weight.name() });
    }
    if space.continuity == Continuity::Discontinuous {
        return Err(Error::Discontinuous("square-root preconditioners"));
    }
    Ok(())
}

/// M_D = [I]⁻¹ [2 P_k] [I]⁻¹ on the inv-omega space.
pub fn build_dirichlet_preconditioner(
    space: &GalerkinSpace,
    k: f64,
    cfg: &PreconditionerConfig,
) -> Result<Box<dyn LinearOperator>> {
    require(space, Weight::InvOmega)?;
    let m = assemble_mass(space)?;
    let x = assemble_sqrt_argument(space, SqrtArgumentKind::Dirichlet, k)?;
    if k == 0.0 {
        // 2√X + (2/ln 2) π₀ with π₀ = r rᵀ, r = M·1, hence M⁻¹ r = 1
        let ones = vec![1.0; space.dof_count()];
        let map = SpectralMap::power(tri(&x)?, tri(&m)?, 0.5, 2.0)?.with_rank_one(ones, 2.0 / 2f64.ln());
        return Ok(Box::new(map));
    }
    let coeffs = pade_coefficients(cfg.np, cfg.theta)?;
    let p = build_pade_sqrt(tri(&x)?, tri(&m)?, k, &coeffs, cfg.damping(k))?;
    let solve = TridiagonalSolve::new(&m)?;
    Ok(Box::new(Product(vec![
        Box::new(solve.clone()),
        Box::new(Scaled(Complex64::new(-2.0, 0.0), Box::new(p))),
        Box::new(solve),
    ])))
}

/// M_N = [C]⁻¹ with [C] the Galerkin matrix of ½√(−(∂ω)² − k²ω²) on the omega space.
pub fn build_neumann_preconditioner(
    space: &GalerkinSpace,
    k: f64,
    cfg: &PreconditionerConfig,
) -> Result<Box<dyn LinearOperator>> {
    require(space, Weight::Omega)?;
    let m = assemble_mass(space)?;
    let x = assemble_sqrt_argument(space, SqrtArgumentKind::Neumann, k)?;
    if k == 0.0 {
        return Ok(Box::new(SpectralMap::power(tri(&x)?, tri(&m)?, -0.5, 2.0)?));
    }
    let coeffs = pade_coefficients(cfg.np, cfg.theta)?;
    let p = build_pade_sqrt(tri(&x)?, tri(&m)?, k, &coeffs, cfg.damping(k))?;
    let c = to_dense(&Scaled(Complex64::new(-0.5, 0.0), Box::new(p)));
    Ok(Box::new(DenseInverse::new(&c)?))
}

/// Dispatches on the configured kind. `space` is the space of the system
/// being preconditioned; the standard P'_k additionally needs the
/// unweighted space it acts on.
pub fn build_preconditioner(
    bc: BoundaryCondition,
    space: &GalerkinSpace,
    k: f64,
    cfg: &PreconditionerConfig,
) -> Result<Box<dyn LinearOperator>> {
    match (cfg.kind, bc) {
        (PreconditionerKind::None, _) => Ok(Box::new(Identity(space.dof_count()))),
        (PreconditionerKind::Sqrt, BoundaryCondition::Dirichlet) => build_dirichlet_preconditioner(space, k, cfg),
        (PreconditionerKind::Sqrt, BoundaryCondition::Neumann) => build_neumann_preconditioner(space, k, cfg),
        (PreconditionerKind::SqrtLaplace, bc) => build_laplace_shifted(bc, space),
        (PreconditionerKind::StandardSqrt, BoundaryCondition::Dirichlet) => build_standard_sqrt(space, k),
        (PreconditionerKind::StandardSqrt, BoundaryCondition::Neumann) => Err(Error::InvalidParameter(
            "the standard square-root preconditioner is defined for the Dirichlet problem only".into(),
        )),
        (PreconditionerKind::Calderon, bc) => build_calderon(bc, space, k),
    }
}

/// P'_0: 2 [I]⁻¹[√(X₀ + I)][I]⁻¹ (Dirichlet) or 2 [I]⁻¹[(X₀ + I)^{-1/2}]… realized as
/// 2 V (Λ)^{±1/2} Vᵀ for the pencil (X₀ + M, M).
pub fn build_laplace_shifted(bc: BoundaryCondition, space: &GalerkinSpace) -> Result<Box<dyn LinearOperator>> {
    let (weight, kind, exponent) = match bc {
        BoundaryCondition::Dirichlet => (Weight::InvOmega, SqrtArgumentKind::Dirichlet, 0.5),
        BoundaryCondition::Neumann => (Weight::Omega, SqrtArgumentKind::Neumann, -0.5),
    };
    require(space, weight)?;
    let m = assemble_mass(space)?;
    let x = assemble_sqrt_argument(space, kind, 0.0)?;
    let shifted = Tridiagonal::combine(1.0, tri(&x)?, 1.0, tri(&m)?);
    Ok(Box::new(SpectralMap::power(&shifted, tri(&m)?, exponent, 2.0)?))
}

/// P'_k = 2 V f(Λ) Vᵀ for the pencil (stiffness, mass) of the unweighted
/// space, f(μ) = −ik √(1 − μ/k²) (√μ at k = 0).
pub fn build_standard_sqrt(space: &GalerkinSpace, k: f64) -> Result<Box<dyn LinearOperator>> {
    if space.weight != Weight::Unit || space.continuity != Continuity::Continuous {
        return Err(Error::WeightMismatch { expected: "unit", got: space.weight.name() });
    }
    let m = assemble_mass(space)?;
    let kk = assemble_standard_stiffness(space)?;
    let eig = pencil_eigen(tri(&kk)?, tri(&m)?)?;
    let f = move |mu: f64| {
        if k == 0.0 {
            Complex64::new(2.0 * mu.max(0.0).sqrt(), 0.0)
        } else {
            Complex64::new(0.0, -2.0 * k) * Complex64::new(1.0 - mu / (k * k), 0.0).sqrt()
        }
    };
    Ok(Box::new(SpectralMap::new(eig, f)))
}

/// P1 = [I]_ω⁻¹ [N_{k,ω}] [I]_{1/ω}⁻¹ (Dirichlet) or
/// P2 = [I]_{1/ω}⁻¹ [S_{k,ω}] [I]_ω⁻¹ (Neumann), on the mesh of `space`.
pub fn build_calderon(bc: BoundaryCondition, space: &GalerkinSpace, k: f64) -> Result<Box<dyn LinearOperator>> {
    let (own, other) = match bc {
        BoundaryCondition::Dirichlet => (Weight::InvOmega, Weight::Omega),
        BoundaryCondition::Neumann => (Weight::Omega, Weight::InvOmega),
    };
    if space.weight != own {
        return Err(Error::WeightMismatch { expected: own.name(), got: space.weight.name() });
    }
    let dual = GalerkinSpace::new(&space.arc, space.mesh.clone(), space.continuity, other)?;
    let middle = match bc {
        BoundaryCondition::Dirichlet => assemble_hypersingular_weighted(&dual, k)?,
        BoundaryCondition::Neumann => assemble_single_layer_weighted(&dual, k)?,
    };
    Ok(Box::new(Product(vec![
        Box::new(TridiagonalSolve::new(&assemble_mass(&dual)?)?),
        Box::new(middle),
        Box::new(TridiagonalSolve::new(&assemble_mass(space)?)?),
    ])))
}
