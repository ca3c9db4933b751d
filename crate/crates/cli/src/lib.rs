//! IO companion for the `canalyze` library: the function file format,
//! worker-parallel brute counting, and output rendering shared by the
//! command-line tool and its tests.

pub mod format;
pub mod output;
pub mod parallel;

use std::fmt;

/// Exit codes used by the command-line tool.
pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_LIMITS: i32 = 3;

/// Top-level failure carrying its exit code.
#[derive(Debug)]
pub enum CliError {
    Core(canalyze::Error),
    Io(std::io::Error),
    Input(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(
                canalyze::Error::NotPrimePower { .. } | canalyze::Error::SizeLimitExceeded { .. },
            ) => EXIT_LIMITS,
            _ => EXIT_USAGE,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
            CliError::Input(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<canalyze::Error> for CliError {
    fn from(e: canalyze::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}
