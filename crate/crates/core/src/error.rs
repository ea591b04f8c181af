use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A length, level count or order does not fit the transform or code.
    #[error("sizing error: {0}")]
    Sizing(String),

    /// Input the operation is undefined for (all-zero frame, non-finite sample, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Two sequences that must agree in length do not.
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) => 3,
            _ => 2,
        }
    }
}
