//! Weighted Galerkin boundary elements for Helmholtz and Laplace problems on
//! open arcs, with square-root preconditioners.

pub mod assembly;
pub mod bench;
pub mod error;
pub mod geometry;
pub mod krylov;
pub mod linalg;
pub mod precond;
pub mod quadrature;
pub mod specfun;

pub use error::{Error, Result};
