use thiserror::Error;

/// Errors raised by the series engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QError {
    #[error("coefficient at q^{exponent} requested but series is only known through q^{order}")]
    BeyondOrder { exponent: i64, order: i64 },

    #[error("series has zero constant term and cannot be inverted")]
    NonUnit,

    #[error("product has a vanishing factor in the denominator")]
    PoleInSpecialization,

    #[error("denominator vanishes identically at summation index {0}")]
    PoleAtIndex(i64),

    #[error("result has a nonzero coefficient at negative exponent q^{0}")]
    NegativeExponentResult(i64),

    #[error("S(±q^m; q^n) is undefined: the summand has a pole at 1 - q^0")]
    UndefinedS,

    #[error("modulus {0} is divisible by 3")]
    InvalidModulus(u64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("could not reach the requested truncation order {wanted} (got {got})")]
    InsufficientPrecision { wanted: i64, got: i64 },
}

pub type Result<T> = std::result::Result<T, QError>;
