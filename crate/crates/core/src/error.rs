use thiserror::Error;

/// Errors raised by the invariant library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A square matrix was required.
    #[error("dimension error: {0}")]
    Dimension(String),

    /// Operand shapes do not fit the operation.
    #[error("shape error: {0}")]
    Shape(String),

    /// An index lies outside its admissible range.
    #[error("range error: {0}")]
    Range(String),

    /// An argument is incompatible with the state or with another argument.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// The input has zero norm or is otherwise unusable.
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// A state document could not be read.
    #[error("parse error at {position}: {message}")]
    Parse { position: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
