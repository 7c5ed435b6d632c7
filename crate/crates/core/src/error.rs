use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{origin}:{line}: {message}")]
    MalformedLine {
        origin: String,
        line: usize,
        message: String,
    },

    #[error("invalid entry {entry:?}: {message}")]
    InvariantViolation { entry: String, message: String },

    #[error("empty {0}")]
    Empty(String),

    #[error("length mismatch: expected {expected} items, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("baseline for mood {0} must be positive")]
    ZeroBaseline(String),

    #[error("message {0:?} has no timestamp")]
    MissingTimestamp(String),

    #[error("training corpus has no {0} examples")]
    EmptyClass(&'static str),

    #[error("need at least {needed} methods with a defined F-measure, got {found}")]
    TooFewMethods { needed: usize, found: usize },

    #[error("at most {max} ensemble members are supported, got {found}")]
    TooManyMethods { max: usize, found: usize },

    #[error("ensemble member {0} has no verdict")]
    MissingMember(String),

    #[error("unknown method {0:?}")]
    UnknownMethod(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn malformed(origin: &str, line: usize, message: impl Into<String>) -> Self {
        Error::MalformedLine {
            origin: origin.to_string(),
            line,
            message: message.into(),
        }
    }

    pub(crate) fn invariant(entry: impl Into<String>, message: impl Into<String>) -> Self {
        Error::InvariantViolation {
            entry: entry.into(),
            message: message.into(),
        }
    }

    pub(crate) fn invalid_pattern(pattern: &str, message: &str) -> Self {
        Self::invariant(pattern, message)
    }

    /// True for errors caused by user-supplied input rather than a bug or
    /// the environment.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Io { source, .. } if source.kind() != std::io::ErrorKind::NotFound
            && source.kind() != std::io::ErrorKind::InvalidData
            && source.kind() != std::io::ErrorKind::PermissionDenied)
    }
}
