use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),

    #[error(transparent)]
    Core(#[from] mmwave_core::Error),

    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },

    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },

    #[error("invalid JSON in {path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error("target {target} is out of reach: {bound} only reaches {sup} at density {density}")]
    Unreachable { target: f64, bound: String, sup: f64, density: f64 },
}

pub type Result<T> = std::result::Result<T, CliError>;

impl CliError {
    /// Process exit status: 1 for bad input, 2 for failures while running.
    pub fn exit_code(&self) -> i32 {
        use mmwave_core::Error as E;
        match self {
            CliError::Config(_) | CliError::Read { .. } | CliError::Json { .. } => 1,
            CliError::Core(E::Config(_) | E::IncompatibleKind { .. } | E::TierOutOfRange { .. } | E::InvalidRegion(_)) => 1,
            CliError::Core(_) | CliError::Write { .. } | CliError::Csv(_) | CliError::Unreachable { .. } => 2,
        }
    }
}

pub(crate) fn config_err(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}
