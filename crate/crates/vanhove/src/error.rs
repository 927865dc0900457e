//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid specification: {0}")]
    GridSpec(String),
    #[error("basis capacity exceeded: {needed} states would exceed the cap of {cap}")]
    Capacity { needed: u128, cap: usize },
    #[error("mode index {index} out of range for {modes} modes")]
    ModeIndex { index: usize, modes: usize },
    #[error("operands are attached to different occupation bases")]
    BasisMismatch,
    #[error("operands are attached to different mode grids")]
    GridMismatch,
    #[error("non-finite input: {0}")]
    NonFinite(String),
    #[error("mode multiplier must be non-negative, got {value} at node {node}")]
    NegativeMultiplier { node: usize, value: f64 },
    #[error("generator is not hermitian (relative deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },
    #[error("dimension {dim} exceeds the dense-exponential threshold {threshold}")]
    DenseThreshold { dim: usize, threshold: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("source profile error: {0}")]
    Profile(String),
    #[error("dispersion vanishes at grid node {node} (|k| = {norm:.3e}); massless grids must exclude the origin")]
    OmegaZero { node: usize, norm: f64 },
    #[error("{path}:{line}: {msg}")]
    Scenario {
        path: String,
        line: usize,
        msg: String,
    },
    #[error("infrared condition check failed: {0}")]
    Infrared(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
