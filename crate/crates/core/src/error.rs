use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("curve is self-intersecting (segments {0} and {1})")]
    SelfIntersecting(usize, usize),

    #[error("arclength inversion did not converge at s = {0}")]
    ArclengthInversion(f64),

    #[error("normal undefined at the corner parameter t = {0}")]
    UndefinedNormal(f64),

    #[error("singular evaluation of the Green kernel at r = 0")]
    SingularKernel,

    #[error("Padé pole hit: 1 + B_{term} z = 0")]
    PadePole { term: usize },

    #[error("Mathieu characteristic value did not converge (n = {n}, q = {q}, diff = {diff:e})")]
    MathieuTruncation { n: usize, q: f64, diff: f64 },

    #[error("discontinuous space is not supported for {0}")]
    Discontinuous(&'static str),

    #[error("space weight mismatch: expected {expected}, got {got}")]
    WeightMismatch { expected: &'static str, got: &'static str },

    #[error("negative eigenvalue {0:e} in a positive semidefinite pencil")]
    NegativeEigenvalue(f64),

    #[error("quadrature self-check failed on panels ({p}, {q}): relative difference {rel:e}")]
    QuadratureCheck { p: usize, q: usize, rel: f64 },

    #[error("factorization failed: {0}")]
    Factorization(String),

    #[error("dimension mismatch: {0} vs {1}")]
    Dimension(usize, usize),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("scenario: {0}")]
    Scenario(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
