use thiserror::Error;

/// Reasons an engine refuses a form at a given prime.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypothesisError {
    #[error("form is not homogeneous")]
    NotHomogeneous,
    #[error("form has degree {0}; degree >= 2 is required")]
    DegreeTooSmall(u32),
    #[error("p = {p} divides the degree {degree}")]
    PrimeDividesDegree { p: u64, degree: u32 },
    #[error("form is singular mod {p}: gradient and form vanish at {witness:?} over F_{p}^{e}")]
    Singular { p: u64, e: u32, witness: Vec<Vec<u64>> },
    #[error("at least 2 variables are required, got {0}")]
    TooFewVariables(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("variable x{index} out of range (nvars = {nvars})")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("constant polynomial has no degree >= 1")]
    ConstantPolynomial,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("extension degree {0} out of range 1..=4")]
    ExtensionDegree(u32),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("value {value} is not reduced modulo {modulus}")]
    NotReduced { value: u64, modulus: u64 },
    #[error("division by zero in field arithmetic")]
    DivisionByZero,
    #[error("cyclotomic elements for different primes ({0} vs {1})")]
    PrimeMismatch(u64, u64),
    #[error("unsupported modulus: {0}")]
    UnsupportedModulus(String),
    #[error("enumeration of {0} points exceeds the supported size")]
    TooLarge(u128),
    #[error("hypothesis violated: {0}")]
    Hypothesis(#[from] HypothesisError),
    #[error("invariant breach: {0}")]
    Invariant(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
