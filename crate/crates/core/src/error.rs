use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("series did not converge within {terms} terms (tail bound {tail:e})")]
    Unconverged { terms: usize, tail: f64 },

    #[error("index {0} is not admissible (first part must be at least 2)")]
    NonAdmissible(String),

    #[error("word {0} does not end in y")]
    NotInH1(String),

    #[error("pole at positive integer lambda = {0}")]
    PoleAtInteger(f64),

    #[error("Hurwitz zeta has a pole at s = 1")]
    PoleAtOne,

    #[error("Re(s) = {0} is outside the continuation strip Re(s) > -2")]
    StripExceeded(f64),

    #[error("gamma = {0} is a non-positive integer")]
    GammaPole(f64),

    #[error("series has zero constant term and is not invertible")]
    ZeroConstantTerm,

    #[error("truncation orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),

    #[error("word weight {weight} exceeds series order {order}")]
    OutOfRange { weight: usize, order: usize },

    #[error("integrand is not finite at t = {0}")]
    EndpointSingularity(f64),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
