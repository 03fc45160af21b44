//! Command implementations behind the `spiderweb` binary, and the
//! acceptance suite.

use std::fmt;

use spiderweb_core::Error;

pub mod acceptance;
pub mod commands;
pub mod config;
pub mod report;

pub use config::Params;
pub use report::{ExperimentReport, Table};

/// Exit code for usage and configuration errors.
pub const EXIT_USAGE: i32 = 1;
/// Exit code for data, domain and I/O errors.
pub const EXIT_DATA: i32 = 2;
/// Exit code for failed assertions.
pub const EXIT_ASSERTION: i32 = 3;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(Error),
    Assertion(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Data(Error::Config(_)) => EXIT_USAGE,
            CliError::Data(Error::Consistency(_)) | CliError::Assertion(_) => EXIT_ASSERTION,
            CliError::Data(_) => EXIT_DATA,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Data(e) => write!(f, "{e}"),
            CliError::Assertion(m) => write!(f, "assertion failed: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Data(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Data(Error::Io(e))
    }
}
