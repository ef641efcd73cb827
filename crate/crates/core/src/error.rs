use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("fractional order must be finite and > 0, got {0}")]
    InvalidOrder(f64),
    #[error("gamma pole at x = {0}")]
    Pole(f64),
    #[error("argument outside domain: {0}")]
    Domain(&'static str),
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error("no convergence: estimated error {estimate:e} exceeds tolerance {tolerance:e} ({context})")]
    Convergence {
        context: &'static str,
        estimate: f64,
        tolerance: f64,
    },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("grid misalignment: {value} is {offset:e} away from the nearest integer")]
    Alignment { value: f64, offset: f64 },
    #[error("invariant violated: {what} (residual {residual:e})")]
    Invariant { what: &'static str, residual: f64 },
}

pub type Result<T> = core::result::Result<T, Error>;
