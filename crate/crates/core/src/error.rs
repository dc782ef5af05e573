use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: negative edge weight {weight}")]
    NegativeWeight { line: usize, weight: f64 },

    #[error("invalid argument: {0}")]
    Usage(String),

    #[error("graph has {n} vertices, above the all-pairs oracle cap of {cap}")]
    TooLarge { n: usize, cap: usize },

    #[error("hop sequence overflows u64 (k={k}, r={r})")]
    Overflow { k: u32, r: u64 },

    #[error("graph fingerprint mismatch: hopset was built for {expected}, graph is {found}")]
    FingerprintMismatch { expected: String, found: String },

    #[error("{0}")]
    Domain(String),
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
