//! Failure modes shared across the laboratory.
//!
//! Numerical operations refuse to hand back silently wrong answers: if the
//! frequency content of a computation spills past the Nyquist shell, if a jump
//! quadrature will not settle, or if an error budget cannot be met, the caller
//! gets a typed error instead of a number.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Error, Debug)]
pub enum Error {
    /// The integrand still carries mass at the edge of the frequency lattice,
    /// so the inverse transform would fold high frequencies onto low ones.
    #[error("aliasing: |spectrum| = {edge_magnitude:.3e} at the Nyquist shell exceeds {threshold:.1e} ({context})")]
    Aliasing {
        edge_magnitude: f64,
        threshold: f64,
        context: String,
    },

    /// Shell sums over the jump measure failed the Cauchy criterion.
    #[error("jump quadrature did not converge: {0}")]
    QuadratureDivergence(String),

    /// A least-squares fit was requested on degenerate data.
    #[error("degenerate fit: {0}")]
    DegenerateFit(String),

    /// A quadrature error budget exceeds the requested tolerance.
    #[error("error budget {budget:.3e} exceeds tolerance {tolerance:.3e} ({context})")]
    BudgetExceeded {
        budget: f64,
        tolerance: f64,
        context: String,
    },

    /// An operator identity that must hold by construction failed its
    /// internal residual check.
    #[error("identity violation: {0}")]
    IdentityViolation(String),

    /// Input outside the stated domain of an operation.
    #[error("out of domain: {0}")]
    OutOfDomain(String),

    /// A norm needing classical derivatives was asked of a function that
    /// cannot supply them.
    #[error("missing derivative: {0}")]
    MissingDerivative(String),

    /// Malformed grid parameters (dimension, point count, half-width).
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    /// Malformed model parameters (index range, weights, matrix shape).
    #[error("invalid model: {0}")]
    InvalidModel(String),
}
