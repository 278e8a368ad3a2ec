//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum QkError {
    /// Quaternionic dimension too small; the geometry degenerates below n = 2.
    #[error("quaternionic dimension must satisfy n >= 2, got {0}")]
    DimensionTooSmall(usize),

    /// A finite-difference step outside the supported range.
    #[error("finite-difference step {0} outside (1e-6, 1e-1)")]
    StepOutOfRange(f64),

    /// Chart point too far from the origin for well-conditioned evaluation.
    #[error("chart point with |q| = {0} rejected (conditioning limit 1e3)")]
    ChartDomain(f64),

    /// A metric evaluation lost positive-definiteness.
    #[error("metric not positive definite at queried point")]
    NotPositiveDefinite,

    /// A frame handed to a curvature operator failed the orthonormality gate.
    #[error("frame not orthonormal: Gram deviation {0} > 1e-10")]
    FrameNotOrthonormal(f64),

    /// Structure constructor invariant violation.
    #[error("invalid quaternionic structure: {0}")]
    InvalidStructure(String),

    /// Not enough samples to resolve the requested rank.
    #[error("insufficient samples: need at least {needed}, got {got}")]
    InsufficientSamples { needed: usize, got: usize },

    /// Bad suite configuration.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// Unknown report format.
    #[error("unknown report format: {0}")]
    UnknownFormat(String),
}

pub type Result<T> = std::result::Result<T, QkError>;
