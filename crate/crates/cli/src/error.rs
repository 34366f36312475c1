use std::path::PathBuf;

use bosonic_synth::SynthError;
use thiserror::Error;

/// Failures of the experiment runner.
#[derive(Debug, Error)]
pub enum BenchError {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("cannot parse {path}: {source}")]
    Parse { path: PathBuf, source: toml::de::Error },

    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error("{path}: {source}")]
    Csv { path: PathBuf, source: csv::Error },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("dimension {dim} exceeds the cap {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("thread pool: {0}")]
    Threads(String),

    #[error(transparent)]
    Synth(#[from] SynthError),
}

impl BenchError {
    /// Process exit code: 2 for usage errors, 3 for resource limits, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            BenchError::Config(_) | BenchError::Parse { .. } => 2,
            BenchError::DimensionCap { .. } => 3,
            BenchError::Synth(e) if e.is_resource() => 3,
            BenchError::Synth(SynthError::InvalidArgument(_)) => 2,
            _ => 1,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        BenchError::Io { path: path.into(), source }
    }
}

pub type Result<T> = std::result::Result<T, BenchError>;
