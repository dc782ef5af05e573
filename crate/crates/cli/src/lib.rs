//! Library half of the `hopset` binary: argument types, command drivers and
//! the experiment grid.

pub mod commands;
pub mod config;
pub mod matrix;

use std::fmt;
use std::path::{Path, PathBuf};

pub use config::{Cli, Command};

/// Process exit codes.
pub mod exit {
    pub const PASS: i32 = 0;
    pub const USAGE: i32 = 2;
    pub const IO: i32 = 3;
    pub const VERIFICATION_FAILED: i32 = 4;
    pub const FINGERPRINT_MISMATCH: i32 = 5;
    pub const OVERFLOW: i32 = 6;
}

#[derive(Debug)]
pub enum Failure {
    Core(hopset_core::Error),
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    /// The run completed but the checked property does not hold.
    Verification(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        use hopset_core::Error as E;
        match self {
            Failure::Core(E::Io { .. } | E::Parse { .. } | E::NegativeWeight { .. }) => exit::IO,
            Failure::Core(E::Usage(_) | E::TooLarge { .. } | E::Domain(_)) => exit::USAGE,
            Failure::Core(E::Overflow { .. }) => exit::OVERFLOW,
            Failure::Core(E::FingerprintMismatch { .. }) => exit::FINGERPRINT_MISMATCH,
            Failure::Write { .. } => exit::IO,
            Failure::Verification(_) => exit::VERIFICATION_FAILED,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Write { path, source } => write!(f, "{}: {source}", path.display()),
            Failure::Verification(msg) => write!(f, "verification failed: {msg}"),
        }
    }
}

impl std::error::Error for Failure {}

impl From<hopset_core::Error> for Failure {
    fn from(e: hopset_core::Error) -> Self {
        Failure::Core(e)
    }
}

pub(crate) fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents).map_err(|source| Failure::Write {
        path: path.to_path_buf(),
        source,
    })
}
