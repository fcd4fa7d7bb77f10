pub mod bessel;
pub mod chebyshev;
pub mod kernel;
pub mod mathieu;
pub mod pade;

pub use bessel::{bessel01, j0, j1, y0, y1, Bessel01};
pub use chebyshev::{chebyshev_t, chebyshev_u, ChebyshevKind, ChebyshevSeries, RealChebyshev};
pub use kernel::{green_kernel, green_radial_derivative, log_split, smooth_remainder};
pub use mathieu::{dirichlet_mode_asymptotic, dirichlet_mode_eigenvalue, mathieu_char, Parity};
pub use pade::{classical_bound, pade_coefficients, pade_sqrt_scalar, rotated_sqrt, sharp_bound, PadeCoefficients};
