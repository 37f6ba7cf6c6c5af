//! Batch front end for `matdiv-core`: scene and germ files, subcommand
//! reports in text or JSON, and the `verify-all` property harness.

pub mod commands;
pub mod germ;
pub mod scene;
pub mod verify;

use std::fmt;
use std::path::Path;

/// Exit status: success.
pub const EXIT_OK: i32 = 0;
/// Exit status: an asserted property failed.
pub const EXIT_PROPERTY: i32 = 1;
/// Exit status: unreadable or invalid input.
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Input(String),
    Property(String),
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }

    pub fn from_core(e: matdiv_core::Error) -> Self {
        CliError::Input(e.to_string())
    }

    pub(crate) fn in_file(self, path: &Path) -> Self {
        match self {
            CliError::Input(m) => CliError::Input(format!("{}: {m}", path.display())),
            other => other,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Property(_) => EXIT_PROPERTY,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Property(m) => write!(f, "property failed: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<matdiv_core::Error> for CliError {
    fn from(e: matdiv_core::Error) -> Self {
        CliError::from_core(e)
    }
}

/// What a subcommand produced: a text rendering, the same data as JSON, and
/// whether every asserted property held.
#[derive(Debug, Clone)]
pub struct Report {
    pub text: String,
    pub json: serde_json::Value,
    pub ok: bool,
    /// First failing property, if any.
    pub failure: Option<String>,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.ok {
            EXIT_OK
        } else {
            EXIT_PROPERTY
        }
    }
}
