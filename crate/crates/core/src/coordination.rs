//! Execution modes for the rotation optimizer: centralized computation at a
//! ground station versus decentralized sequential updates over reliable,
//! in-order inter-UAV links, with message accounting.
//!
//! The decentralized mode passes a shared location dataset along the cell
//! sequence; each UAV performs its own coordinate update and forwards the
//! dataset to the next. The update rule and order are exactly those of
//! [`crate::optimizer::aur`], so both modes return identical results and
//! differ only in the log.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::network::Scenario;
use crate::optimizer::{aur_traced, OptResult, OptimizerConfig};

/// Default position-change threshold (meters) for re-running the optimizer;
/// roughly the tangential displacement that exhausts the angular tolerance
/// of a 500 m cell.
pub const DEFAULT_TRIGGER_THRESHOLD_M: f64 = 100.0;

/// Where the optimization ran.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExecutionMode {
    Centralized,
    Decentralized,
}

/// Why a run stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TerminationReason {
    /// The last UAV saw a sweep improvement ≤ ε.
    DeltaBelowEpsilon,
    /// The sweep cap L was reached first.
    MaxIterationsReached,
    /// A monitored position moved beyond the threshold (new cycle needed).
    PositionChangeTrigger,
}

/// One hand-off of the shared location dataset between UAVs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatasetForward {
    pub from_uav: usize,
    pub to_uav: usize,
    pub iteration: usize,
}

/// Message accounting of one optimizer execution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoordinationLog {
    pub mode: ExecutionMode,
    /// Messages exchanged in each outer iteration.
    pub per_iteration_messages: Vec<usize>,
    /// Dataset hand-offs, in order (decentralized mode only).
    pub forwards: Vec<DatasetForward>,
    pub termination: TerminationReason,
}

impl CoordinationLog {
    pub fn total_messages(&self) -> usize {
        self.per_iteration_messages.iter().sum()
    }
}

/// Runs the optimizer as a token-passing sequence over the UAVs.
///
/// Each sweep produces N−1 forwards along the sequence plus one wrap-around
/// forward from the last UAV back to the first, which also carries the
/// convergence verdict.
pub fn run_decentralized(
    scenario: &Scenario,
    cfg: &OptimizerConfig,
) -> Result<(OptResult, CoordinationLog)> {
    let n = scenario.num_cells();
    let mut forwards = Vec::new();
    let result = aur_traced(scenario, cfg, |update| {
        forwards.push(DatasetForward {
            from_uav: update.cell,
            to_uav: (update.cell + 1) % n,
            iteration: update.sweep,
        });
    })?;
    let per_iteration_messages = vec![n; result.iterations];
    let termination = if result.converged {
        TerminationReason::DeltaBelowEpsilon
    } else {
        TerminationReason::MaxIterationsReached
    };
    Ok((
        result,
        CoordinationLog {
            mode: ExecutionMode::Decentralized,
            per_iteration_messages,
            forwards,
            termination,
        },
    ))
}

/// Runs the optimizer at a central node: N location reports up, the computed
/// angles broadcast back down. No per-sweep traffic.
pub fn run_centralized(
    scenario: &Scenario,
    cfg: &OptimizerConfig,
) -> Result<(OptResult, CoordinationLog)> {
    let n = scenario.num_cells();
    let result = aur_traced(scenario, cfg, |_| {})?;
    let termination = if result.converged {
        TerminationReason::DeltaBelowEpsilon
    } else {
        TerminationReason::MaxIterationsReached
    };
    Ok((
        result,
        CoordinationLog {
            mode: ExecutionMode::Centralized,
            per_iteration_messages: vec![2 * n],
            forwards: Vec::new(),
            termination,
        },
    ))
}

/// True when any UAV or GU moved strictly more than `threshold_m` meters
/// between two snapshots of the same topology.
pub fn trigger_update(
    old: &Scenario,
    new: &Scenario,
    threshold_m: f64,
) -> Result<bool> {
    if old.num_cells() != new.num_cells() {
        return Err(Error::TopologyMismatch(format!(
            "{} vs {} cells",
            old.num_cells(),
            new.num_cells()
        )));
    }
    for c in 0..old.num_cells() {
        if old.users(c).len() != new.users(c).len() {
            return Err(Error::TopologyMismatch(format!(
                "cell {c} has {} vs {} users",
                old.users(c).len(),
                new.users(c).len()
            )));
        }
    }
    for c in 0..old.num_cells() {
        if old.uav(c).distance_to(new.uav(c)) > threshold_m {
            return Ok(true);
        }
        for (a, b) in old.users(c).iter().zip(new.users(c)) {
            if a.distance_to(b) > threshold_m {
                return Ok(true);
            }
        }
    }
    Ok(false)
}
