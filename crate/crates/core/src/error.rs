//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by design construction, samplers, solvers and the
/// analysis engine.
#[derive(Debug, Error)]
pub enum Error {
    /// Input contains NaN or infinite values.
    #[error("non-finite value encountered: {0}")]
    NonFinite(&'static str),

    /// Time series too short for the requested embedding order.
    #[error("order {order} too large for series of length {len}")]
    OrderTooLarge { order: usize, len: usize },

    /// Paired series have different lengths.
    #[error("series length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    /// Distribution or configuration parameters out of range.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// Synthetic-data spec inconsistent with the requested generator.
    #[error("invalid synthetic spec: {0}")]
    InvalidSpec(String),

    /// An estimator was handed an empty sample.
    #[error("empty sample")]
    EmptySample,

    /// Normal-equation or fixed-point system unsolvable even with ridge.
    #[error("singular design matrix (ridge fallback exhausted)")]
    SingularDesign,

    /// Fixed-point iterates left the finite range.
    #[error("solver diverged at iteration {iteration}")]
    Diverged { iteration: usize },

    /// A channel carries no information (constant signal).
    #[error("degenerate series '{name}': all samples equal")]
    DegenerateSeries { name: String },

    /// RVR sweep reference point F(2) is zero.
    #[error("relative variation reference F(2) is zero")]
    ReferenceUndefined,

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
