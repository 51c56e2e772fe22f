use std::path::Path;

use thiserror::Error;

/// Failure classes, each with its own exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed input: bad JSON, unknown labels, duplicate products.
    #[error("parse error: {0}")]
    Parse(String),
    /// The input is well formed but an axiom or claimed property fails.
    /// The payload is the full report.
    #[error("{0}")]
    Failed(String),
    #[error("size bound exceeded: {0}")]
    SizeBound(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Parse(_) => 2,
            CliError::SizeBound(_) => 3,
        }
    }

    pub fn in_file(self, path: &Path) -> Self {
        self.prefixed(&path.display().to_string())
    }

    pub fn prefixed(self, prefix: &str) -> Self {
        match self {
            CliError::Parse(m) if !m.starts_with(prefix) => CliError::Parse(format!("{prefix}: {m}")),
            other => other,
        }
    }
}

impl From<brandt::Error> for CliError {
    fn from(e: brandt::Error) -> Self {
        match e {
            brandt::Error::SizeLimit { .. } => CliError::SizeBound(e.to_string()),
            other => CliError::Failed(other.to_string()),
        }
    }
}
