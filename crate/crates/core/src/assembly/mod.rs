//! Galerkin discretization on an open arc.

mod layer;
mod local;
mod matrix;
mod rhs;
mod space;

pub use layer::{
    assemble_hypersingular_weighted, assemble_layer, assemble_single_layer_standard,
    assemble_single_layer_weighted, AssemblyOptions, LayerKind,
};
pub use local::{assemble_mass, assemble_sqrt_argument, assemble_standard_stiffness, SqrtArgumentKind};
pub use matrix::{OperatorMatrix, Storage};
pub use rhs::{assemble_rhs, plane_wave, plane_wave_normal_derivative};
pub use space::{Continuity, GalerkinSpace, Weight};
