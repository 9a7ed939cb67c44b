//! Desk-scale simulator and optimizer for UAV-mounted planar-array base
//! stations that mitigate inter-cell interference by rotating each UAV's
//! antenna array about the vertical axis.
//!
//! The crate models line-of-sight links between `M × M` half-wavelength
//! arrays and single-antenna ground users, evaluates the interference beam
//! gain between cells in closed form (with a brute-force channel-vector
//! oracle alongside), and maximizes the multi-cell sum rate over discrete
//! per-UAV rotation angles by alternating coordinate ascent, with exhaustive
//! grid search as the benchmark. A seeded Monte Carlo harness reproduces the
//! rate, convergence, and location-error robustness experiments.
//!
//! Modules, bottom up:
//!
//! - [`geometry`]: UAV↔ground angles, distances, rotation transform.
//! - [`channel`]: steering vectors, Kronecker channel, path loss, radio.
//! - [`beamforming`]: MRT weights, interference gain, pattern sampling.
//! - [`network`]: multi-cell SINR, per-GU rates, system sum rate.
//! - [`optimizer`]: alternating rotation ascent, exhaustive search, baseline.
//! - [`coordination`]: centralized vs token-passing decentralized execution.
//! - [`experiments`]: placement sampling, location noise, Monte Carlo, heatmaps.

pub mod beamforming;
pub mod channel;
pub mod coordination;
pub mod error;
pub mod experiments;
pub mod geometry;
pub mod network;
pub mod optimizer;

pub use beamforming::{gain_bruteforce, gain_closed_form, rotated_gain};
pub use channel::{ArrayConfig, RadioConfig};
pub use error::{Error, Result};
pub use experiments::{
    monte_carlo, NoiseSpec, PlacementSpec, ScenarioTemplate, Strategy, TrialSummary,
};
pub use geometry::{link_geometry, rotate, GridSpec, LinkGeometry, Position3D, RotationVector};
pub use network::{sum_rate, RateReport, Scenario};
pub use optimizer::{aur, exhaustive_search, fixed_baseline, OptResult, OptimizerConfig};
