use autoarc::AlgebraError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum JobError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl JobError {
    /// Process exit status: 2 for malformed input, 3 for resource guards and
    /// unsupported combinations, 4 for internal invariant violations.
    pub fn exit_code(&self) -> i32 {
        match self {
            JobError::Parse { .. } | JobError::Invalid(_) | JobError::Io { .. } => 2,
            JobError::Algebra(e) => match e {
                AlgebraError::InvalidCharacteristic(_)
                | AlgebraError::DuplicateVariable(_)
                | AlgebraError::InvalidVariable(_)
                | AlgebraError::UnknownIdentifier(_)
                | AlgebraError::Syntax { .. }
                | AlgebraError::Unrepresentable(_) => 2,
                AlgebraError::Resource(_)
                | AlgebraError::TooManyVariables(_)
                | AlgebraError::NotLocal(_)
                | AlgebraError::MismatchedParameters(_)
                | AlgebraError::Unsupported(_) => 3,
                AlgebraError::RingMismatch(_) | AlgebraError::Invariant(_) => 4,
            },
        }
    }
}

pub type Result<T> = std::result::Result<T, JobError>;
