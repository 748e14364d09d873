//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A Theorem-hypothesis inequality is violated; the message names it.
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    /// Coefficient table accessed past its capacity.
    #[error("coefficient table capacity exceeded: requested index {requested}, capacity {capacity}")]
    Capacity { requested: usize, capacity: usize },

    /// Exact integer arithmetic overflowed (detected, never wrapped).
    #[error("exact integer overflow while computing {context}")]
    IntegerOverflow { context: &'static str },

    /// An iteration (continued fraction, series) failed to converge.
    #[error("no convergence in {what} after {iterations} iterations")]
    Convergence { what: &'static str, iterations: usize },

    /// Gamma function evaluated at a pole.
    #[error("gamma pole at s = {0}")]
    GammaPole(String),

    /// A truncation/quadrature tail could not be certified below tolerance.
    #[error("tail not certified: {context} (estimate {estimate:.3e} > tolerance {tolerance:.3e})")]
    TailNotCertified {
        context: &'static str,
        estimate: f64,
        tolerance: f64,
    },

    /// Floating-point cancellation exhausted the working precision.
    #[error("precision exhausted in {what}: cancellation severity {severity:.3e}")]
    PrecisionExhausted { what: &'static str, severity: f64 },

    /// Evaluation point too close to a pole of the target function.
    #[error("evaluation point within exclusion radius of pole at {pole}")]
    PoleTooClose { pole: f64 },

    /// An integrand pole lies on or too near the integration contour.
    #[error("pole too near the contour: {0}")]
    PoleOnContour(String),

    /// Malformed or inconsistent parameters.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Exit-code class used by the CLI: 2 config/hypothesis, 3 numeric.
    pub fn exit_class(&self) -> i32 {
        match self {
            Error::Hypothesis(_) | Error::InvalidParams(_) => 2,
            _ => 3,
        }
    }
}
