//! Rotation-angle optimization: alternating per-UAV coordinate ascent over a
//! discrete angle grid, exhaustive search over all grid combinations, and the
//! fixed-orientation baseline.

use std::f64::consts::FRAC_PI_2;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::RotationVector;
use crate::network::{sum_rate, Scenario};

/// Default cap on exhaustive-search combinations W^N.
pub const DEFAULT_EXHAUSTIVE_BUDGET: u64 = 1_000_000;

/// Knobs of the alternating rotation optimizer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    /// Angle grid points per UAV over [0, π/2).
    pub grid_points: usize,
    /// Maximum outer sweeps.
    pub max_iterations: usize,
    /// Convergence threshold on the sum-rate improvement, bits/s/Hz.
    pub epsilon: f64,
    /// Cap on exhaustive-search combinations W^N.
    pub exhaustive_budget: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            grid_points: 32,
            max_iterations: 20,
            epsilon: 1e-6,
            exhaustive_budget: DEFAULT_EXHAUSTIVE_BUDGET,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.grid_points == 0 {
            return Err(Error::EmptyAngleGrid);
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidParameter(
                "max_iterations must be at least 1".into(),
            ));
        }
        if self.epsilon.is_nan() || self.epsilon < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "epsilon must be non-negative, got {}",
                self.epsilon
            )));
        }
        Ok(())
    }
}

/// Outcome of one optimizer run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptResult {
    /// Final rotation angles, one per cell, all in [0, π/2).
    pub rotations: RotationVector,
    /// Sum rate R after each sweep, starting with the initial all-zero vector.
    pub rate_trace: Vec<f64>,
    /// Outer sweeps actually performed.
    pub iterations: usize,
    /// Number of sum-rate evaluations spent.
    pub evaluations: usize,
    /// Whether the improvement dropped to ≤ ε before the sweep cap.
    pub converged: bool,
}

impl OptResult {
    /// Final achieved sum rate in bits/s/Hz.
    pub fn final_rate(&self) -> f64 {
        *self.rate_trace.last().expect("trace is never empty")
    }
}

/// The W-point angle grid {i·π/(2W)} over [0, π/2).
///
/// π/2 itself is excluded: the square array repeats every quarter turn, so
/// that endpoint duplicates 0.
pub fn angle_grid(points: usize) -> Result<Vec<f64>> {
    if points == 0 {
        return Err(Error::EmptyAngleGrid);
    }
    let step = FRAC_PI_2 / points as f64;
    Ok((0..points).map(|i| i as f64 * step).collect())
}

/// Alternating UAV rotation: coordinate ascent over the angle grid.
///
/// Starts from the all-zero vector; every sweep updates each UAV in index
/// order to the grid angle maximizing the sum rate with the other angles
/// held fixed (ties go to the smallest grid index). Stops when a sweep
/// improves the rate by at most ε or the sweep cap is hit. Since the
/// incumbent angle is always on the grid, the trace is non-decreasing.
pub fn aur(scenario: &Scenario, cfg: &OptimizerConfig) -> Result<OptResult> {
    aur_traced(scenario, cfg, |_| {})
}

/// [`aur`] with a callback invoked after each per-UAV coordinate update,
/// used by the coordination module for message accounting.
pub(crate) fn aur_traced(
    scenario: &Scenario,
    cfg: &OptimizerConfig,
    mut on_update: impl FnMut(SweepUpdate),
) -> Result<OptResult> {
    cfg.validate()?;
    let grid = angle_grid(cfg.grid_points)?;
    let n = scenario.num_cells();
    let mut rotations = RotationVector::zeros(n);
    let mut current_rate = sum_rate(scenario, &rotations)?.sum_rate;
    let mut rate_trace = vec![current_rate];
    let mut evaluations = 1usize;
    let mut converged = false;
    let mut iterations = 0usize;

    while iterations < cfg.max_iterations {
        iterations += 1;
        for u in 0..n {
            let mut best_angle = rotations.angle(u);
            let mut best_rate = f64::NEG_INFINITY;
            for &candidate in &grid {
                rotations.set_angle(u, candidate);
                let rate = sum_rate(scenario, &rotations)?.sum_rate;
                evaluations += 1;
                if rate > best_rate {
                    best_rate = rate;
                    best_angle = candidate;
                }
            }
            rotations.set_angle(u, best_angle);
            current_rate = best_rate;
            on_update(SweepUpdate {
                sweep: iterations,
                cell: u,
            });
        }
        let improvement = current_rate - rate_trace.last().unwrap();
        rate_trace.push(current_rate);
        if improvement <= cfg.epsilon {
            converged = true;
            break;
        }
    }

    Ok(OptResult {
        rotations,
        rate_trace,
        iterations,
        evaluations,
        converged,
    })
}

/// One per-UAV coordinate update inside an AUR sweep.
#[derive(Debug, Clone, Copy)]
pub(crate) struct SweepUpdate {
    pub sweep: usize,
    pub cell: usize,
}

/// Exhaustive search over all W^N grid combinations with the default budget.
pub fn exhaustive_search(scenario: &Scenario, grid_points: usize) -> Result<OptResult> {
    exhaustive_search_with_budget(scenario, grid_points, DEFAULT_EXHAUSTIVE_BUDGET)
}

/// Exhaustive search over all W^N grid combinations.
///
/// Returns the global maximizer on the grid; ties resolve to the
/// lexicographically smallest angle vector. Fails upfront when W^N exceeds
/// the budget.
pub fn exhaustive_search_with_budget(
    scenario: &Scenario,
    grid_points: usize,
    budget: u64,
) -> Result<OptResult> {
    let grid = angle_grid(grid_points)?;
    let n = scenario.num_cells();
    let combinations = (grid_points as u128)
        .checked_pow(n as u32)
        .ok_or(Error::BudgetExceeded {
            combinations: u128::MAX,
            budget,
        })?;
    if combinations > budget as u128 {
        return Err(Error::BudgetExceeded {
            combinations,
            budget,
        });
    }
    let total = combinations as u64;

    // Combination index decodes most-significant digit first, so ascending
    // indices enumerate angle vectors in lexicographic order; taking the
    // smallest index among rate ties keeps the result deterministic even
    // under parallel evaluation.
    let evaluate = |index: u64| -> Result<(f64, u64)> {
        let mut digits = vec![0usize; n];
        let mut rest = index;
        for d in (0..n).rev() {
            digits[d] = (rest % grid_points as u64) as usize;
            rest /= grid_points as u64;
        }
        let angles = RotationVector::new(digits.iter().map(|&d| grid[d]).collect())?;
        Ok((sum_rate(scenario, &angles)?.sum_rate, index))
    };

    let best = (0..total)
        .into_par_iter()
        .map(evaluate)
        .try_reduce(
            || (f64::NEG_INFINITY, u64::MAX),
            |a, b| {
                Ok(if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
                    b
                } else {
                    a
                })
            },
        )?;

    let mut digits = vec![0usize; n];
    let mut rest = best.1;
    for d in (0..n).rev() {
        digits[d] = (rest % grid_points as u64) as usize;
        rest /= grid_points as u64;
    }
    Ok(OptResult {
        rotations: RotationVector::new(digits.iter().map(|&d| grid[d]).collect())?,
        rate_trace: vec![best.0],
        iterations: 1,
        evaluations: total as usize,
        converged: true,
    })
}

/// The ω = 0 baseline: no rotation, one evaluation.
pub fn fixed_baseline(scenario: &Scenario) -> Result<OptResult> {
    let rotations = RotationVector::zeros(scenario.num_cells());
    let rate = sum_rate(scenario, &rotations)?.sum_rate;
    Ok(OptResult {
        rotations,
        rate_trace: vec![rate],
        iterations: 0,
        evaluations: 1,
        converged: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::RadioConfig;
    use crate::geometry::Position3D;
    use std::f64::consts::PI;

    fn radio() -> RadioConfig {
        RadioConfig::new(50.0, 1e9, -174.0, 28e9).unwrap()
    }

    fn single_cell() -> Scenario {
        Scenario::new(
            vec![Position3D::new(0.0, 0.0, 200.0)],
            vec![vec![
                Position3D::ground(250.0, 0.0),
                Position3D::ground(-120.0, 210.0),
            ]],
            8,
            radio(),
        )
        .unwrap()
    }

    fn three_cells(seed_offsets: &[(f64, f64)]) -> Scenario {
        let uavs = vec![
            Position3D::new(500.0, 500.0, 200.0),
            Position3D::new(500.0, 1500.0, 200.0),
            Position3D::new(1000.0, 1500.0, 200.0),
        ];
        let gus = uavs
            .iter()
            .map(|u| {
                seed_offsets
                    .iter()
                    .map(|(dx, dy)| Position3D::ground(u.x + dx, u.y + dy))
                    .collect()
            })
            .collect();
        Scenario::new(uavs, gus, 8, radio()).unwrap()
    }

    #[test]
    fn grid_examples() {
        assert_eq!(angle_grid(1).unwrap(), vec![0.0]);
        let g4 = angle_grid(4).unwrap();
        let expected = [0.0, PI / 8.0, PI / 4.0, 3.0 * PI / 8.0];
        for (a, b) in g4.iter().zip(expected) {
            assert!((a - b).abs() < 1e-15);
        }
        assert_eq!(angle_grid(0), Err(Error::EmptyAngleGrid));

        let g16 = angle_grid(16).unwrap();
        for (i, a) in g16.iter().enumerate() {
            for b in &g16[i + 1..] {
                assert!((a - b).abs() > 1e-12);
            }
            assert!((0.0..FRAC_PI_2).contains(a));
        }
    }

    #[test]
    fn single_cell_returns_zero_rotation() {
        let scenario = single_cell();
        let cfg = OptimizerConfig {
            grid_points: 8,
            ..Default::default()
        };
        let res = aur(&scenario, &cfg).unwrap();
        assert_eq!(res.rotations.angles(), &[0.0]);
        assert_eq!(res.iterations, 1);
        assert!(res.converged);
        assert_eq!(res.evaluations, 1 + 8);

        let exh = exhaustive_search(&scenario, 8).unwrap();
        assert_eq!(exh.rotations, res.rotations);
        assert!((exh.final_rate() - res.final_rate()).abs() < 1e-12);
    }

    #[test]
    fn single_grid_point_is_the_fixed_baseline() {
        let scenario = three_cells(&[(250.0, 0.0), (-150.0, 200.0)]);
        let cfg = OptimizerConfig {
            grid_points: 1,
            ..Default::default()
        };
        let a = aur(&scenario, &cfg).unwrap();
        let e = exhaustive_search(&scenario, 1).unwrap();
        let f = fixed_baseline(&scenario).unwrap();
        assert_eq!(a.rotations.angles(), &[0.0, 0.0, 0.0]);
        assert_eq!(e.rotations.angles(), &[0.0, 0.0, 0.0]);
        assert_eq!(a.iterations, 1);
        assert!((a.final_rate() - f.final_rate()).abs() < 1e-12);
        assert!((e.final_rate() - f.final_rate()).abs() < 1e-12);
        let direct = sum_rate(&scenario, &RotationVector::zeros(3)).unwrap();
        assert_eq!(f.final_rate(), direct.sum_rate);
    }

    #[test]
    fn trace_is_monotone_and_bounded() {
        let scenario = three_cells(&[(230.0, 60.0), (-180.0, -150.0), (40.0, 320.0)]);
        let cfg = OptimizerConfig {
            grid_points: 8,
            ..Default::default()
        };
        let res = aur(&scenario, &cfg).unwrap();
        for pair in res.rate_trace.windows(2) {
            assert!(pair[1] >= pair[0] - 1e-12);
        }
        assert!(res.iterations <= cfg.max_iterations);
        assert!(res.converged);
        assert_eq!(
            res.evaluations,
            1 + res.iterations * scenario.num_cells() * cfg.grid_points
        );
        assert!(res.rotations.is_canonical());
    }

    #[test]
    fn exhaustive_dominates_aur_dominates_fixed() {
        let layouts: [&[(f64, f64)]; 3] = [
            &[(250.0, 0.0), (-150.0, 200.0)],
            &[(300.0, 120.0), (-210.0, -90.0)],
            &[(220.0, -250.0), (90.0, 280.0)],
        ];
        for offs in layouts {
            let scenario = three_cells(offs);
            let cfg = OptimizerConfig {
                grid_points: 4,
                ..Default::default()
            };
            let f = fixed_baseline(&scenario).unwrap();
            let a = aur(&scenario, &cfg).unwrap();
            let e = exhaustive_search(&scenario, 4).unwrap();
            assert!(a.final_rate() >= f.final_rate() - 1e-12);
            assert!(e.final_rate() >= a.final_rate() - 1e-12);
        }
    }

    #[test]
    fn exhaustive_budget_is_enforced() {
        let scenario = three_cells(&[(250.0, 0.0)]);
        let err = exhaustive_search_with_budget(&scenario, 101, 1_000_000).unwrap_err();
        assert_eq!(
            err,
            Error::BudgetExceeded {
                combinations: 101u128.pow(3),
                budget: 1_000_000
            }
        );
        assert!(err.to_string().contains("1030301"));
    }

    #[test]
    fn deterministic_across_runs() {
        let scenario = three_cells(&[(230.0, 60.0), (-180.0, -150.0)]);
        let cfg = OptimizerConfig {
            grid_points: 8,
            ..Default::default()
        };
        let a = aur(&scenario, &cfg).unwrap();
        let b = aur(&scenario, &cfg).unwrap();
        assert_eq!(a, b);
        let e1 = exhaustive_search(&scenario, 4).unwrap();
        let e2 = exhaustive_search(&scenario, 4).unwrap();
        assert_eq!(e1, e2);
    }

    #[test]
    fn rejects_bad_config() {
        let scenario = single_cell();
        let bad = OptimizerConfig {
            grid_points: 0,
            ..Default::default()
        };
        assert!(aur(&scenario, &bad).is_err());
        let bad_eps = OptimizerConfig {
            epsilon: f64::NAN,
            ..Default::default()
        };
        assert!(aur(&scenario, &bad_eps).is_err());
    }
}
