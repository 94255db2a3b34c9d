//! JSON formats and the batch front end for `equivar-core`.
//!
//! The binary is a thin wrapper over [`cli::run`]; everything it prints is
//! produced here so that tests can drive the same code in-process.

pub mod cli;
pub mod formats;

use std::path::PathBuf;

/// Failures of a CLI run, split by exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Parse(String),
    #[error(transparent)]
    Domain(#[from] equivar_core::Error),
}

impl CliError {
    pub fn parse(msg: impl Into<String>) -> CliError {
        CliError::Parse(msg.into())
    }

    /// 1 for domain errors, 2 for parse and IO errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Io { .. } | CliError::Parse(_) => 2,
        }
    }

    /// Pretty JSON written to stderr.
    pub fn to_json(&self) -> String {
        let value = match self {
            CliError::Domain(e) => serde_json::to_string_pretty(&formats::ErrorJson::from_error(e)),
            CliError::Io { .. } => serde_json::to_string_pretty(
                &serde_json::json!({"error": "IoError", "message": self.to_string()}),
            ),
            CliError::Parse(_) => serde_json::to_string_pretty(
                &serde_json::json!({"error": "ParseError", "message": self.to_string()}),
            ),
        };
        let mut s = value.unwrap_or_else(|e| {
            format!(
                "{{\"error\": \"Internal\", \"message\": {:?}}}",
                e.to_string()
            )
        });
        s.push('\n');
        s
    }
}
