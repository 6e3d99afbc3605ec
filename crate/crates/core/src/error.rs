use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("p-adic valuation of zero is undefined")]
    UndefinedValuation,

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("hypergeometric series has a pole at term {term}")]
    Pole { term: usize },

    #[error("series is not invertible: zero leading coefficient")]
    NotInvertible,

    #[error("exponent {exponent} outside retained window [{low}, {high}]")]
    OutOfRange { exponent: i64, low: i64, high: i64 },

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    #[error("{what} is not an integer at n = {index}")]
    Integrality { what: String, index: usize },

    #[error("pipelines disagree on d({n}): {values}")]
    Disagreement { n: usize, values: String },

    #[error("requested index {requested} exceeds the guard {limit}")]
    Guard { requested: usize, limit: usize },

    #[error("usage error: {0}")]
    Usage(String),
}
