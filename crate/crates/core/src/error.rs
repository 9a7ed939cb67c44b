//! Error type shared across the simulator.

use thiserror::Error;

/// Errors raised by geometry, channel, optimization, and experiment code.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("UAV altitude must be positive, got z = {0} m")]
    InvalidUavAltitude(f64),

    #[error("ground user must sit on the ground plane, got z = {0} m")]
    NonGroundUser(f64),

    #[error("direction cosine must lie in [-1, 1], got {0}")]
    DirectionCosineOutOfRange(f64),

    #[error("array must have at least one element per dimension")]
    EmptyArray,

    #[error("wavelength must be positive, got {0} m")]
    InvalidWavelength(f64),

    #[error("distance must be positive, got {0} m")]
    InvalidDistance(f64),

    #[error("link geometries refer to different UAV origins")]
    OriginMismatch,

    #[error("grid is empty or has non-positive step")]
    EmptyGrid,

    #[error("rotation curve needs at least 2 samples, got {0}")]
    TooFewSamples(usize),

    #[error("cell index {cell} or user index {user} out of range")]
    IndexOutOfRange { cell: usize, user: usize },

    #[error("angle grid size W must be at least 1")]
    EmptyAngleGrid,

    #[error("exhaustive search over {combinations} rotation combinations exceeds budget {budget}")]
    BudgetExceeded { combinations: u128, budget: u64 },

    #[error("scenario topologies differ: {0}")]
    TopologyMismatch(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
