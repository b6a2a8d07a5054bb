use thiserror::Error;

/// Errors surfaced by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is out of range (must be 2 <= p < 2^31)")]
    OutOfRange(u64),
    #[error("operands belong to different fields (F_{0} vs F_{1})")]
    FieldMismatch(u32, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("truncation mismatch ({0} vs {1})")]
    TruncationMismatch(usize, usize),
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("enumeration of {needed} candidates exceeds the budget of {cap}")]
    BudgetExceeded { needed: u128, cap: u128 },
    #[error("prefix of length {len} is too short for N = {needed}")]
    PrefixTooShort { len: usize, needed: usize },
    #[error("invalid modulus {0} for this operation")]
    InvalidModulus(u32),
    #[error("prerequisite violated: {0}")]
    PrerequisiteViolated(String),
    #[error("parameter out of range: {0}")]
    RangeError(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
