use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("polynomial parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("reduction of {poly} modulo {p} is constant")]
    DegenerateReduction { poly: String, p: u64 },

    #[error("polynomial is constant")]
    ConstantPolynomial,

    #[error("polynomial is identically zero")]
    IdenticallyZero,

    #[error("extension field F_{p}^{k} is too large to represent")]
    FieldTooLarge { p: u64, k: u32 },

    #[error("box {x} x {y} is invalid for p = {p}: need 1 <= X, Y <= p")]
    InvalidBox { x: f64, y: f64, p: u64 },

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("T = {t} is smaller than 2*max(X, Y) = {need}")]
    BoxTooLarge { t: f64, need: f64 },

    #[error("sweep plan is empty")]
    EmptyPlan,

    #[error("malformed record: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
