use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {position}: expected {expected}")]
    Syntax { position: usize, expected: String },

    #[error("word expands to zero letters")]
    EmptyWord,

    #[error("invalid pairing: {0}")]
    InvalidPairing(String),

    #[error("no admissible pairing exists")]
    NoPairing,

    #[error("unsupported configuration: {0}")]
    UnsupportedConfiguration(String),

    #[error("resource cap exceeded: {0}")]
    TooLarge(String),

    #[error("word is not star-free")]
    NotStarFree,

    #[error("no sample provided for letter {0}")]
    MissingLetter(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Two independent computations of the same quantity disagreed.
    #[error("identity violated ({what}): {left} != {right}")]
    IdentityMismatch {
        what: String,
        left: String,
        right: String,
    },
}
