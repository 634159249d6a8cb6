use thiserror::Error;

/// Errors raised by the arithmetic layers and verification drivers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("invalid degree: {0}")]
    InvalidDegree(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("no embedding: {0}")]
    NoEmbedding(String),
    #[error("scale exceeded: {what} has {size} elements, limit is {limit}")]
    ScaleExceeded { what: String, size: u128, limit: u128 },
    #[error("element is not pi-integral")]
    NotPiIntegral,
    #[error("syntax error at position {position}: expected {expected}")]
    SyntaxError { position: usize, expected: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("arity mismatch: {0}")]
    ArityMismatch(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial is not univariate")]
    NotUnivariate,
    #[error("polynomial is constant")]
    ConstantPolynomial,
    #[error("division by {0} in characteristic {0}")]
    DivisionByP(u32),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("polynomiality check failed: {0}")]
    PolynomialityCheckFailed(String),
    #[error("polynomial is not normalized (constant term must be 1)")]
    NotNormalized,
    #[error("insufficient data for rational reconstruction: {0}")]
    InsufficientData(String),
    #[error("unsupported field degree {0}: Cartier matrices require q = p")]
    UnsupportedFieldDegree(usize),
    #[error("{0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
