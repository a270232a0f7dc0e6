use thiserror::Error;

use crate::poly::Complex;

/// Errors surfaced by the library.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Malformed or out-of-domain input.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An iterative solver ran out of iterations.
    #[error("{solver} did not converge after {iterations} iterations (best value {best_value:.6e})")]
    NonConvergence {
        solver: &'static str,
        iterations: usize,
        best_center: Complex,
        best_value: f64,
    },

    /// The root finder failed to resolve all roots.
    #[error("root finding did not converge after {iterations} iterations (residual {residual:.3e})")]
    RootFinding { iterations: usize, residual: f64 },

    /// A computed quantity exceeded a proven bound; this indicates a numerical bug.
    #[error("soundness violation: {0}")]
    Soundness(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
