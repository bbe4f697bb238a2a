use thiserror::Error;

/// Errors raised by the algebra kernel and the modules built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("invalid characteristic {0}: must be 0 or a prime below 2^31")]
    InvalidCharacteristic(u64),
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("invalid variable name `{0}`")]
    InvalidVariable(String),
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("coefficient `{0}` is not representable in the coefficient field")]
    Unrepresentable(String),
    #[error("resource guard exceeded: {0}")]
    Resource(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("too many variables for subset search ({0} > 24)")]
    TooManyVariables(usize),
    #[error("ideal is not contained in the maximal ideal at the origin: {0}")]
    NotLocal(String),
    #[error("mismatched parameters: {0}")]
    MismatchedParameters(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
