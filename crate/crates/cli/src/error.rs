use serde::{Deserialize, Serialize};
use somos_core::somos::ExtendFailure;
use somos_core::ArithError;

/// A failed run. `kind` is stable and machine-readable.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error, Serialize, Deserialize)]
#[error("{kind}: {message}")]
pub struct CliError {
    pub kind: String,
    pub message: String,
    /// Offending config field.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    /// Sequence index where a computation stopped.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<i64>,
}

impl CliError {
    pub fn config(field: &str, message: impl Into<String>) -> Self {
        Self {
            kind: "config".into(),
            message: message.into(),
            field: Some(field.into()),
            index: None,
        }
    }

    pub fn io(message: impl Into<String>) -> Self {
        Self {
            kind: "io".into(),
            message: message.into(),
            field: None,
            index: None,
        }
    }

    pub fn unsupported_format(command: &str, format: &str) -> Self {
        Self {
            kind: "unsupported_format".into(),
            message: format!("{command} has no {format} output"),
            field: Some("format".into()),
            index: None,
        }
    }

    /// Exit status: 2 for config errors, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.kind == "config" {
            2
        } else {
            1
        }
    }

    /// A parse failure reported against `field`.
    pub fn in_field(field: &str, e: ArithError) -> Self {
        Self::config(field, e.to_string())
    }
}

impl From<ArithError> for CliError {
    fn from(e: ArithError) -> Self {
        Self {
            kind: e.kind().into(),
            message: e.to_string(),
            field: None,
            index: None,
        }
    }
}

impl<R> From<ExtendFailure<R>> for CliError {
    fn from(f: ExtendFailure<R>) -> Self {
        Self {
            kind: f.error.kind().into(),
            message: format!("extension stopped at index {}: {}", f.index, f.error),
            field: None,
            index: Some(f.index),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
