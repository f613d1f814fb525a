use num_bigint::BigUint;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Arguments outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An enumeration would exceed the configured budget.
    #[error("budget exceeded: {what} needs {bound} candidates, budget is {budget}")]
    Budget {
        what: String,
        bound: BigUint,
        budget: u64,
    },

    #[error("homology is only computed in degrees d-1 and d (d = {d}), got {k}")]
    UnsupportedDegree { d: usize, k: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
