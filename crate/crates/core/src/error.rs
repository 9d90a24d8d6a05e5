use thiserror::Error;

use crate::io::format::ParseError;

pub type Result<T> = std::result::Result<T, TauqError>;

#[derive(Debug, Error)]
pub enum TauqError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A result the theory forbids was produced. Either the input quiver was
    /// mis-transcribed or an algorithm is wrong.
    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("invalid quiver structure: {0}")]
    Structure(String),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("unknown corpus fixture `{0}`")]
    UnknownFixture(String),
}
