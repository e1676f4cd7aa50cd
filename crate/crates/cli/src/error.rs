use std::fmt;

use serde_json::json;

/// A failed run: category, message and process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub kind: String,
    pub message: String,
    pub exit_code: i32,
}

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_FAILURE: i32 = 1;

impl CliError {
    pub fn usage(e: fermispin::Error) -> Self {
        CliError {
            kind: "usage".into(),
            message: e.to_string(),
            exit_code: EXIT_USAGE,
        }
    }

    pub fn usage_msg(message: impl Into<String>) -> Self {
        CliError {
            kind: "usage".into(),
            message: message.into(),
            exit_code: EXIT_USAGE,
        }
    }

    /// One-line JSON record for standard error.
    pub fn to_line(&self) -> String {
        json!({ "error": { "kind": self.kind, "message": self.message, "exit_code": self.exit_code } })
            .to_string()
    }
}

impl From<fermispin::Error> for CliError {
    fn from(e: fermispin::Error) -> Self {
        use fermispin::Error::*;
        let exit_code = match &e {
            InvalidArgument(_) => EXIT_USAGE,
            ResourceLimit { .. } | UnsupportedSize(_) | EigensolveLimit { .. } => EXIT_RESOURCE,
            Domain(_) => EXIT_FAILURE,
        };
        CliError {
            kind: e.kind().into(),
            message: e.to_string(),
            exit_code,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind, self.message)
    }
}

impl std::error::Error for CliError {}
