use thiserror::Error;

/// Errors raised by operator construction, synthesis and measurement.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SynthError {
    #[error("layout mismatch: {left} vs {right}")]
    LayoutMismatch { left: String, right: String },

    #[error("invalid layout: {0}")]
    InvalidLayout(String),

    #[error("dimension {dim} exceeds the configured cap {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("slice count {needed} exceeds the configured cap {cap}")]
    SliceCap { needed: u64, cap: u64 },

    #[error("factor address {index}: {reason}")]
    FactorAddress { index: usize, reason: String },

    #[error("matrix has shape {rows}x{cols}, expected {expected}x{expected}")]
    Shape {
        rows: usize,
        cols: usize,
        expected: usize,
    },

    #[error("matrix contains non-finite entries")]
    NonFinite,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("power-law fit: {0}")]
    Fit(String),
}

impl SynthError {
    /// True when the failure comes from a resource cap rather than bad input.
    pub fn is_resource(&self) -> bool {
        matches!(self, SynthError::DimensionCap { .. } | SynthError::SliceCap { .. })
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        SynthError::InvalidArgument(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, SynthError>;
