use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field parameter {0} must be a squarefree integer >= 2")]
    InvalidField(i64),
    #[error("operands live in different fields (d = {0} and d = {1})")]
    MixedField(i64, i64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("expected an irrational element, got a rational one")]
    RationalInput,
    #[error("negative input to integer square root")]
    NegativeInput,
    #[error("invalid surd: {0}")]
    InvalidSurd(String),
    #[error("index {index} out of range (expansion has {len} terms)")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("Mobius transformation has a pole at the given point")]
    Pole,
    #[error("singular matrix")]
    SingularMatrix,
    #[error("step cap of {cap} exceeded; period length is at least {lower_bound}")]
    StepCapExceeded { cap: u64, lower_bound: u64 },
    #[error("degree {degree} exceeds the configured cap {cap}")]
    DegreeTooLarge { degree: usize, cap: usize },
    #[error("polynomial is not irreducible")]
    NotIrreducible,
    #[error("polynomial has a zero root where none is allowed")]
    ZeroRootInDenominator,
    #[error("no squarefree norm found for shifts up to {0}")]
    ShiftExhausted(u32),
    #[error("precision exhausted after {0} bits")]
    PrecisionExhausted(u32),
    #[error("window of length {len} is too short; need at least {needed}")]
    WindowTooShort { len: usize, needed: usize },
    #[error("window is not annihilated by any recurrence of order <= {0}")]
    VerificationFailed(usize),
    #[error("invalid recurrence: {0}")]
    InvalidRecurrence(String),
    #[error("zero input")]
    ZeroInput,
    #[error("prime support is incomplete: {0}")]
    SupportIncomplete(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_) | Error::PrecisionExhausted(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
