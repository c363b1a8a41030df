use num_complex::Complex64;
use thiserror::Error;

/// Errors produced by evaluation, estimation, and certification routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point {0} lies outside the analyticity radius {1}")]
    DomainExceeded(Complex64, f64),
    #[error("evaluation within {POLE_GUARD:e} of the pole at z = 1")]
    PoleProximity(Complex64),
    #[error("grid resolution too low: rings*spokes = {0}, need at least 4")]
    ResolutionTooLow(usize),
    #[error("boundary sample count {0} too low, need at least 64")]
    BoundarySamplesTooFew(usize),
    #[error("function is constant; a non-constant function is required")]
    ConstantFunction,
    #[error("enclosing disk parameter c must be positive, got {0}")]
    NonpositiveC(f64),
    #[error("coefficient bound k must be positive, got {0}")]
    NonpositiveK(f64),
    #[error("zeta exponent must exceed 1, got {0}")]
    ZetaExponentTooSmall(f64),
    #[error("derivative has non-positive real part {re} at {at}")]
    NwwViolated { at: Complex64, re: f64 },
    #[error("quadratic coefficient must be nonzero")]
    ZeroParameter,
    #[error("non-finite input {0}")]
    NonFinite(Complex64),
}

/// Distance to the pole at z = 1 below which rational evaluations refuse to run.
pub const POLE_GUARD: f64 = 1e-12;

pub type Result<T> = std::result::Result<T, Error>;

/// Failure while parsing a function spec or coefficient list, with the byte
/// offset of the offending input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(offset: usize, message: impl Into<String>) -> Self {
        Self {
            offset,
            message: message.into(),
        }
    }
}
