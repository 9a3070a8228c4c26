use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what} must be positive, got {value}")]
    NonPositive { what: &'static str, value: u64 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0}")]
    OutOfRange(String),

    #[error("cyclotomic index {0} is below 2")]
    IndexTooSmall(u64),

    #[error("division leaves a nonzero remainder")]
    NonExactDivision,

    #[error("division by the zero polynomial")]
    ZeroDivisor,

    #[error("lcm of a sequence containing the zero polynomial")]
    ZeroPolynomialInput,

    #[error("level r={level} has no individual witness k <= {n}")]
    HypothesisViolated { n: u64, level: u32 },

    #[error("cannot parse polynomial {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("internal arithmetic error: {0}")]
    Internal(String),
}

pub(crate) fn positive(what: &'static str, value: u64) -> Result<u64> {
    if value == 0 {
        Err(Error::NonPositive { what, value })
    } else {
        Ok(value)
    }
}
