//! Mass matrices and the tridiagonal square-root arguments.

use super::matrix::OperatorMatrix;
use super::space::{Continuity, GalerkinSpace, NodeInfo, Weight};
use crate::error::{Error, Result};
use crate::linalg::Tridiagonal;
use crate::quadrature::gauss_legendre;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SqrtArgumentKind {
    /// −(ω∂_τ)² + k²(1 − ω²) in the 1/ω pairing
    Dirichlet,
    /// −(∂_τ ω)² + k²(1 − ω²) in the ω pairing
    Neumann,
}

fn local_order(space: &GalerkinSpace) -> usize {
    if space.uses_tau() {
        12
    } else {
        3
    }
}

/// Σ over panels of ∫ f(node, α, β) for the two local functions.
fn assemble_local(space: &GalerkinSpace, f: impl Fn(&NodeInfo, usize, usize) -> f64) -> Tridiagonal<f64> {
    let gl = gauss_legendre(local_order(space));
    let mut m = Tridiagonal::zeros(space.dof_count());
    for p in 0..space.panels() {
        let h = space.width(p);
        let dofs = space.dofs(p);
        let mut block = [[0.0; 2]; 2];
        for (x, w) in gl.nodes.iter().zip(&gl.weights) {
            let nd = space.node(p, 0.5 * h * (x + 1.0));
            for (a, row) in block.iter_mut().enumerate() {
                for (b, v) in row.iter_mut().enumerate() {
                    *v += 0.5 * h * w * f(&nd, a, b);
                }
            }
        }
        for a in 0..2 {
            for b in 0..2 {
                m.add(dofs[a], dofs[b], block[a][b]);
            }
        }
    }
    m
}

/// Gram matrix of the basis in the pairing of the space's weight.
pub fn assemble_mass(space: &GalerkinSpace) -> Result<OperatorMatrix> {
    let half = 0.5 * space.arc.length();
    let m = match space.weight {
        Weight::InvOmega => assemble_local(space, |n, a, b| n.phi[a] * n.phi[b] / std::f64::consts::PI),
        Weight::Omega => assemble_local(space, |n, a, b| half * half * n.s * n.s * n.phi[a] * n.phi[b]),
        Weight::Unit => assemble_local(space, |n, a, b| half * n.phi[a] * n.phi[b]),
    };
    Ok(OperatorMatrix::sparse_real(m))
}

/// Stiffness ∫ ∂_σφ_j ∂_σφ_i dσ of the unweighted space.
pub fn assemble_standard_stiffness(space: &GalerkinSpace) -> Result<OperatorMatrix> {
    if space.weight != Weight::Unit {
        return Err(Error::WeightMismatch { expected: "unit", got: space.weight.name() });
    }
    let half = 0.5 * space.arc.length();
    Ok(OperatorMatrix::sparse_real(assemble_local(space, |n, a, b| n.dphi[a] * n.dphi[b] / half)))
}

/// Galerkin matrix of the operator under the square root.
pub fn assemble_sqrt_argument(space: &GalerkinSpace, kind: SqrtArgumentKind, k: f64) -> Result<OperatorMatrix> {
    if space.continuity == Continuity::Discontinuous {
        return Err(Error::Discontinuous("the square-root argument"));
    }
    let half = 0.5 * space.arc.length();
    let k2 = k * k;
    let m = match kind {
        SqrtArgumentKind::Dirichlet => {
            if space.weight != Weight::InvOmega {
                return Err(Error::WeightMismatch { expected: "inv-omega", got: space.weight.name() });
            }
            assemble_local(space, |n, a, b| {
                let s2 = n.s * n.s;
                (s2 * n.dphi[a] * n.dphi[b] + k2 * (1.0 - half * half * s2) * n.phi[a] * n.phi[b])
                    / std::f64::consts::PI
            })
        }
        SqrtArgumentKind::Neumann => {
            if space.weight != Weight::Omega {
                return Err(Error::WeightMismatch { expected: "omega", got: space.weight.name() });
            }
            assemble_local(space, |n, a, b| {
                let s2 = n.s * n.s;
                let d = |i: usize| -n.t * n.phi[i] + s2 * n.dphi[i];
                half * half * (d(a) * d(b) + k2 * (1.0 - half * half * s2) * s2 * n.phi[a] * n.phi[b])
            })
        }
    };
    Ok(OperatorMatrix::sparse_real(m))
}
