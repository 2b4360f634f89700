use thiserror::Error;

/// Errors surfaced by the algebra kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero in F_{p}")]
    DivisionByZero { p: u64 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid field configuration: {0}")]
    InvalidConfig(String),

    #[error("dimension mismatch: {left} vs {right} variables")]
    DimensionMismatch { left: usize, right: usize },

    #[error("characteristic mismatch: {left} vs {right}")]
    CharMismatch { left: u64, right: u64 },

    #[error("degree cap {cap} exceeded (reached degree {degree}) during Groebner basis computation")]
    DegreeCapExceeded { cap: u32, degree: u32 },

    #[error("nu is undefined: polynomial is a unit at the origin")]
    UnitAtOrigin,

    #[error("polynomial must be nonzero and lie in the origin maximal ideal")]
    NotInMaximalIdeal,

    #[error("divisor component must be a nonzero non-unit polynomial")]
    InvalidDivisorComponent,

    #[error("divisor coefficients must be non-negative")]
    NegativeDivisorCoefficient,

    #[error("test-ideal chain did not stabilize by e_max = {e_max}; result is inconclusive")]
    Inconclusive { e_max: u32 },

    #[error("probe list is empty")]
    EmptyProbes,

    #[error("invalid range: lower bound must be non-negative and below the upper bound")]
    InvalidRange,

    #[error("exponent overflow")]
    ExponentOverflow,

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
