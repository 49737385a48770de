use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("{q} is not the order of a subfield of {field}")]
    InvalidSubfield { q: u64, field: String },
    #[error("{small} is not a subfield of {big}")]
    NotASubfield { small: String, big: String },
    #[error("operands live in different fields: {0} and {1}")]
    FieldMismatch(String, String),
    #[error("generators {0:?} do not have gcd 1")]
    NotNumerical(Vec<u64>),
    #[error("enumeration needs {needed} codewords, budget is {budget}")]
    BudgetExceeded { needed: String, budget: u64 },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("{0} is not a Castle curve")]
    NotCastle(String),
    #[error("no fibration: {0}")]
    NoFibration(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("not self-orthogonal: {0}")]
    NotSelfOrthogonal(String),
    #[error("unknown reproduction target {0}")]
    UnknownTarget(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
