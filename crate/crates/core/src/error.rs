//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by the model, polynomial, equilibrium, stability and
/// integration operations.
#[derive(Debug, Error)]
pub enum Error {
    /// A state component is NaN or infinite.
    #[error("non-finite state component {component} = {value}")]
    NonFiniteState { component: &'static str, value: f64 },

    /// A state component is more negative than the round-off floor (-1e-12).
    #[error("state component {component} = {value:e} is below the round-off floor")]
    NegativeState { component: &'static str, value: f64 },

    /// Parameter set violates a model constraint.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// Input outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Polynomial input contains NaN or infinite coefficients.
    #[error("non-finite polynomial coefficients")]
    NonFiniteCoefficients,

    /// Root extraction requested on a degree-0 polynomial.
    #[error("polynomial of degree 0 has no roots")]
    NoRoots,

    /// A computed root fails its residual check.
    #[error("root residual {residual:e} exceeds bound {bound:e}")]
    RootResidual { residual: f64, bound: f64 },

    /// Interpolated function is not a polynomial of the expected degree.
    #[error(
        "cubic recovery verification failed: residual {residual:e} exceeds {tolerance:e} \
         (function is not a polynomial of degree <= 3)"
    )]
    DegreeMismatch { residual: f64, tolerance: f64 },

    /// Interpolation nodes coincide or the Vandermonde system is singular.
    #[error("ill-conditioned interpolation nodes")]
    IllConditionedNodes,

    /// Bracketed scan called with an empty or reversed interval.
    #[error("invalid bracket [{lo}, {hi}]")]
    InvalidBracket { lo: f64, hi: f64 },

    /// Characteristic polynomial requested for a non-square matrix.
    #[error("matrix is not square: {rows}x{cols}")]
    NonSquareMatrix { rows: usize, cols: usize },

    /// Stability classification requested for a non-existing equilibrium.
    #[error("equilibrium {label} does not exist; cannot classify")]
    NonexistentEquilibrium { label: String },

    /// Routh-Hurwitz verdict and eigenvalue-sign verdict disagree, which
    /// indicates a formula bug rather than a property of the model.
    #[error(
        "internal consistency error at {label}: Hurwitz verdict {hurwitz} vs spectrum {spectral}"
    )]
    VerdictMismatch {
        label: String,
        hurwitz: &'static str,
        spectral: &'static str,
    },

    /// Basic reproduction number is undefined for these parameters.
    #[error("R0 is undefined: {0}")]
    UndefinedR0(String),

    /// A back-substitution denominator vanished.
    #[error("singular denominator: {0}")]
    SingularDenominator(String),

    /// Adaptive integration could not continue; the partial trajectory up
    /// to the failure time is attached.
    #[error("integration failed at t = {t}: {reason}")]
    IntegrationFailure {
        t: f64,
        reason: String,
        times: Vec<f64>,
        states: Vec<Vec<f64>>,
    },

    /// Boundedness check cannot be evaluated for these inputs.
    #[error("boundedness check inapplicable: {0}")]
    BoundednessInapplicable(String),

    /// An equilibrium reported as existing failed its residual re-check.
    #[error("equilibrium {label} residual {residual:e} exceeds verification bound {bound:e}")]
    ResidualCheckFailed {
        label: String,
        residual: f64,
        bound: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
