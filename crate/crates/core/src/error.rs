use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("negative argument {0} where a nonnegative integer is required")]
    NegativeArgument(i64),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("exact division failed: {0}")]
    NotDivisible(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("weight mismatch: {0}")]
    WeightMismatch(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("not of finite ADE type: {0}")]
    NotFiniteType(String),
    #[error("invalid reduced expression: {0}")]
    InvalidReducedWord(String),
    #[error("{0} is a simple root")]
    SimpleRoot(String),
    #[error("parts are not weakly decreasing in the convex order: {0}")]
    NotSorted(String),
    #[error("word {0} is not homogeneous")]
    NotHomogeneous(String),
    #[error("inconsistent linear system: {0}")]
    Inconsistent(String),
    #[error("element carries no free-algebra expression")]
    ExprAbsent,
    #[error("malformed quiver: {0}")]
    Quiver(String),
    #[error("verification failed: {0}")]
    Verification(String),
}
