//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A parameter fell outside the hypothesis range of the construction.
    /// The message names the violated hypothesis.
    #[error("domain error: {0}")]
    Domain(String),

    /// A coefficient that must be nonnegative was negative.
    #[error("negative coefficient at index {index}")]
    NegativeCoefficient { index: usize },

    /// A falling-factorial denominator factor vanished.
    #[error("vanishing falling factorial: factor {factor} of parameter a_{param_index} is zero at step {step}")]
    VanishingFactor {
        param_index: usize,
        step: usize,
        factor: String,
    },

    /// Real-root certification failed: fewer real roots than the degree.
    #[error("not real-rooted: certified {found} real roots for degree {degree}")]
    NotRealRooted { found: usize, degree: usize },

    /// Requested moments of a law whose absolute moments diverge.
    #[error("infinite moment: {0}")]
    InfiniteMoment(String),

    /// An evaluation point sat on the support/branch cut of a transform.
    #[error("evaluation point on support: {0}")]
    OnSupport(String),

    /// Numerical routine failed to converge or bracket.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// Mismatched polynomial sizes in a binary convolution.
    #[error("degree-bound mismatch: left n={left}, right n={right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error: {0}")]
    Parse(String),
}
