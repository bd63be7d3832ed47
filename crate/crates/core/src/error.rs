use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("operation needs a nonzero polynomial")]
    ZeroPolynomial,
    #[error("operation needs a polynomial of degree at least 1")]
    ConstantPolynomial,
    #[error("cannot invert an apparent zero (known only modulo t^{prec})")]
    ApparentZero { prec: i64 },
    #[error("precision t^{prec} too low to determine the coefficient of t^{needed}")]
    PrecisionTooLow { prec: i64, needed: i64 },
    #[error("membership in O is undecidable at the available precision")]
    Undecidable,
    #[error("insufficient precision to select a pivot")]
    InsufficientPrecision,
    #[error("precision exhausted during reduction")]
    PrecisionExhausted,
    #[error("integrality violated: {0}")]
    IntegralityViolation(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("singular matrix")]
    Singular,
    #[error("no consistent structure constants; residual {0}")]
    NoConsistentConstants(String),
    #[error("unsupported root pattern: {0}")]
    RootPattern(String),
    #[error("weight {0} is not dominant")]
    NotDominant(String),
    #[error("series mismatch at degree {degree}: {left} vs {right}")]
    SeriesMismatch { degree: i64, left: i64, right: i64 },
    #[error("internal invariant failed: {0}")]
    Internal(String),
}
