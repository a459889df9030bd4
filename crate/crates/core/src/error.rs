use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("digit-sum base must be at least 2, got {0}")]
    InvalidBase(u64),

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("argument out of domain: {0}")]
    Domain(String),

    /// Two routes that must agree produced different values.
    #[error("{what}: routes disagree ({left} != {right})")]
    RouteMismatch {
        what: &'static str,
        left: String,
        right: String,
    },

    /// A quotient that is claimed to be an integer is not.
    #[error("{what}: {numerator} is not divisible by {denominator}")]
    InexactDivision {
        what: &'static str,
        numerator: String,
        denominator: String,
    },

    #[error("unknown check kind `{0}`")]
    UnknownCheck(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
