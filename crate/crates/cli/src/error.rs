use std::fmt;

use simflow_core::Error;

pub const EXIT_PARSE: u8 = 1;
pub const EXIT_VALIDATION: u8 = 2;
pub const EXIT_MISMATCH: u8 = 3;
pub const EXIT_GUARD: u8 = 4;
pub const EXIT_VERIFY: u8 = 5;

/// A failure with its process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn parse(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_PARSE,
            message: message.into(),
        }
    }

    pub fn validation(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_VALIDATION,
            message: message.into(),
        }
    }

    pub fn mismatch(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_MISMATCH,
            message: message.into(),
        }
    }

    pub fn guard(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_GUARD,
            message: message.into(),
        }
    }

    pub fn verify(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_VERIFY,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::GuardExceeded { .. } | Error::IterationCap { .. } => {
                CliError::guard(e.to_string())
            }
            _ => CliError::validation(e.to_string()),
        }
    }
}
