use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HeunError {
    #[error("invalid operator parameters: {0}")]
    InvalidParams(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("vector has a nonzero tail bound ({0}); a finitely supported vector is required")]
    NotFinite(f64),

    #[error("unsupported working precision: {bits} bits (only 53-bit doubles are available)")]
    Precision { bits: u32 },

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("unsupported parameters: {0}")]
    Unsupported(String),

    #[error("approximant could not reach eps = {eps:e}: best achieved error {achieved:e} at depth limit {max_depth}")]
    ApproximantFailed { eps: f64, achieved: f64, max_depth: usize },

    #[error("search exhausted: {0}")]
    SearchExhausted(String),
}

pub type Result<T> = std::result::Result<T, HeunError>;
