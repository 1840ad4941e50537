use std::fmt;

use hsbasis::FockError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

/// An error carrying the process exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INPUT,
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

impl From<FockError> for CliError {
    fn from(e: FockError) -> Self {
        CliError::input(e.to_string())
    }
}
