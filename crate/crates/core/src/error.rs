use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("degenerate parameter: (c)_{m} vanishes for c = {c}")]
    DegenerateParameter { c: String, m: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("sequence has {got} entries, matrix needs {need}")]
    LengthMismatch { need: usize, got: usize },

    #[error("|w| = {modulus:.6e} lies outside the admissible disk of radius {limit:.6e}")]
    OutsideDisk { modulus: f64, limit: f64 },

    #[error("Newton iteration did not converge at w = {w} (residual {residual:.3e})")]
    NoConvergence { w: Complex64, residual: f64 },

    #[error("pole of the mapping at z = {0}")]
    PoleInput(Complex64),

    #[error("b = {0} is a non-positive integer")]
    BadBParameter(Complex64),

    #[error("argument {value} outside domain [{lo}, {hi}]")]
    DomainError { value: f64, lo: f64, hi: f64 },

    #[error("quadrature did not reach tolerance (error estimate {estimate:.3e}, target {target:.3e})")]
    QuadratureFailure { estimate: f64, target: f64 },

    #[error("nu = {0} outside 0 < Re(nu) < 1")]
    BadNuDomain(Complex64),

    #[error("invalid queue parameters: {0}")]
    InvalidParams(String),

    #[error("series precondition violated: {0}")]
    SeriesPrecondition(String),
}
