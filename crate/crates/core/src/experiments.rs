//! Scenario generation, the location-error model, the seeded Monte Carlo
//! harness, parameter sweeps, and ground interference heatmaps.
//!
//! # Randomness
//!
//! All draws derive from one root seed through ChaCha sub-streams:
//! stream id = `(purpose << 32) | trial`, with purpose 0 for GU placement and
//! purpose 1 for location noise. Placements therefore never move when a
//! strategy is added or the noise level changes (common random numbers), and
//! every result is bit-reproducible from `(seed, config)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::RadioConfig;
use crate::error::{Error, Result};
use crate::geometry::{GridSpec, Position3D, RotationVector};
use crate::network::{interference_power_at, sum_rate, Scenario};
use crate::optimizer::{
    aur, exhaustive_search_with_budget, fixed_baseline, OptResult, OptimizerConfig,
};

const STREAM_PLACEMENT: u64 = 0;
const STREAM_NOISE: u64 = 1;

fn substream(seed: u64, purpose: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((purpose << 32) | trial as u64);
    rng
}

/// How GUs are scattered around each UAV.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlacementSpec {
    /// Cell radius in meters.
    pub cell_radius_m: f64,
    /// Minimum horizontal GU–UAV separation in meters.
    pub min_distance_m: f64,
    /// GUs per cell.
    pub gus_per_cell: usize,
    /// Root seed for all sub-streams.
    pub seed: u64,
}

impl Default for PlacementSpec {
    fn default() -> Self {
        Self {
            cell_radius_m: 500.0,
            min_distance_m: 200.0,
            gus_per_cell: 10,
            seed: 1,
        }
    }
}

impl PlacementSpec {
    pub fn validate(&self) -> Result<()> {
        if self.min_distance_m.is_nan()
            || self.cell_radius_m.is_nan()
            || self.min_distance_m < 0.0
            || self.min_distance_m >= self.cell_radius_m
        {
            return Err(Error::InvalidParameter(format!(
                "need 0 <= min distance < radius, got {} and {}",
                self.min_distance_m, self.cell_radius_m
            )));
        }
        if self.gus_per_cell == 0 {
            return Err(Error::InvalidParameter(
                "gus_per_cell must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// Standard deviation of the per-axis Gaussian location error, meters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseSpec {
    pub sigma_m: f64,
}

impl NoiseSpec {
    pub fn validate(&self) -> Result<()> {
        if self.sigma_m.is_nan() || self.sigma_m < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "sigma must be non-negative, got {}",
                self.sigma_m
            )));
        }
        Ok(())
    }
}

/// The fixed part of a Monte Carlo world: UAVs, array size, radio.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioTemplate {
    pub uavs: Vec<Position3D>,
    pub elements_per_dim: usize,
    pub radio: RadioConfig,
}

impl ScenarioTemplate {
    pub fn instantiate(&self, gus: Vec<Vec<Position3D>>) -> Result<Scenario> {
        Scenario::new(self.uavs.clone(), gus, self.elements_per_dim, self.radio)
    }
}

/// Rotation strategies compared by the harness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    /// ω = 0 everywhere.
    Fixed,
    /// Alternating per-UAV coordinate ascent.
    Aur,
    /// Global grid search.
    Exhaustive,
}

impl std::fmt::Display for Strategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Strategy::Fixed => write!(f, "fixed"),
            Strategy::Aur => write!(f, "aur"),
            Strategy::Exhaustive => write!(f, "exhaustive"),
        }
    }
}

/// Per-strategy statistics over all trials.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrategyStats {
    pub strategy: Strategy,
    /// Average GU rate R̄ of each trial, evaluated on true positions.
    pub per_trial_avg_rate: Vec<f64>,
    pub mean_avg_rate: f64,
    /// Sample standard deviation (n−1) across trials.
    pub std_avg_rate: f64,
    /// Optimizer sweeps used per trial (0 for the fixed baseline).
    pub per_trial_iterations: Vec<usize>,
}

impl StrategyStats {
    /// Standard error of the mean.
    pub fn std_error(&self) -> f64 {
        self.std_avg_rate / (self.per_trial_avg_rate.len() as f64).sqrt()
    }
}

/// Outcome of one Monte Carlo run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialSummary {
    pub trials: usize,
    pub seed: u64,
    pub strategies: Vec<StrategyStats>,
}

impl TrialSummary {
    pub fn stats(&self, strategy: Strategy) -> Option<&StrategyStats> {
        self.strategies.iter().find(|s| s.strategy == strategy)
    }

    /// Relative mean improvement of one strategy over another.
    pub fn relative_gain(&self, over: Strategy, baseline: Strategy) -> Option<f64> {
        let a = self.stats(over)?.mean_avg_rate;
        let b = self.stats(baseline)?.mean_avg_rate;
        Some((a - b) / b)
    }
}

/// One point of a parameter sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub axis_value: f64,
    pub summary: TrialSummary,
}

/// Samples `gus_per_cell` points area-uniformly over the annulus
/// [min distance, radius] around the UAV's ground projection.
///
/// The radius is drawn as √(r_min² + u·(r_max² − r_min²)) so density is
/// uniform per unit area; the angle is uniform over [0, 2π).
pub fn sample_gus(
    center: &Position3D,
    spec: &PlacementSpec,
    rng: &mut ChaCha8Rng,
) -> Vec<Position3D> {
    let r_min2 = spec.min_distance_m * spec.min_distance_m;
    let r_max2 = spec.cell_radius_m * spec.cell_radius_m;
    (0..spec.gus_per_cell)
        .map(|_| {
            let u: f64 = rng.random();
            let radius = (r_min2 + u * (r_max2 - r_min2)).sqrt();
            let angle = rng.random_range(0.0..std::f64::consts::TAU);
            Position3D::ground(center.x + radius * angle.cos(), center.y + radius * angle.sin())
        })
        .collect()
}

/// Instantiates the world of one trial from the placement sub-stream.
pub fn sample_scenario(
    template: &ScenarioTemplate,
    spec: &PlacementSpec,
    trial: usize,
) -> Result<Scenario> {
    spec.validate()?;
    let mut rng = substream(spec.seed, STREAM_PLACEMENT, trial);
    let gus = template
        .uavs
        .iter()
        .map(|uav| sample_gus(uav, spec, &mut rng))
        .collect();
    template.instantiate(gus)
}

/// Returns a copy of the scenario with every GU's x and y offset by
/// independent N(0, σ²) errors. UAV positions are untouched.
pub fn perturb_positions(
    scenario: &Scenario,
    noise: &NoiseSpec,
    rng: &mut ChaCha8Rng,
) -> Result<Scenario> {
    noise.validate()?;
    let gus = scenario
        .all_users()
        .iter()
        .map(|cell| {
            cell.iter()
                .map(|gu| {
                    let wx: f64 = rng.sample(StandardNormal);
                    let wy: f64 = rng.sample(StandardNormal);
                    Position3D::ground(gu.x + noise.sigma_m * wx, gu.y + noise.sigma_m * wy)
                })
                .collect()
        })
        .collect();
    scenario.with_users(gus)
}

fn run_strategy(
    strategy: Strategy,
    scenario: &Scenario,
    cfg: &OptimizerConfig,
) -> Result<OptResult> {
    match strategy {
        Strategy::Fixed => fixed_baseline(scenario),
        Strategy::Aur => aur(scenario, cfg),
        Strategy::Exhaustive => {
            exhaustive_search_with_budget(scenario, cfg.grid_points, cfg.exhaustive_budget)
        }
    }
}

struct TrialOutcome {
    avg_rates: Vec<f64>,
    iterations: Vec<usize>,
}

fn run_trial(
    template: &ScenarioTemplate,
    spec: &PlacementSpec,
    cfg: &OptimizerConfig,
    strategies: &[Strategy],
    noise: Option<&NoiseSpec>,
    trial: usize,
) -> Result<TrialOutcome> {
    let truth = sample_scenario(template, spec, trial)?;
    // Optimize on the (possibly perturbed) view, score on true positions.
    let view = match noise {
        Some(n) => {
            let mut rng = substream(spec.seed, STREAM_NOISE, trial);
            perturb_positions(&truth, n, &mut rng)?
        }
        None => truth.clone(),
    };
    let mut avg_rates = Vec::with_capacity(strategies.len());
    let mut iterations = Vec::with_capacity(strategies.len());
    for &strategy in strategies {
        let opt = run_strategy(strategy, &view, cfg)?;
        let report = sum_rate(&truth, &opt.rotations)?;
        avg_rates.push(report.avg_rate);
        iterations.push(opt.iterations);
    }
    Ok(TrialOutcome {
        avg_rates,
        iterations,
    })
}

/// Runs `trials` independent worlds and scores every strategy on each.
///
/// Placements are shared across strategies within a trial; with `noise` set,
/// optimization runs on perturbed GU positions while rates are evaluated on
/// the true ones.
pub fn monte_carlo(
    template: &ScenarioTemplate,
    spec: &PlacementSpec,
    cfg: &OptimizerConfig,
    strategies: &[Strategy],
    trials: usize,
    noise: Option<&NoiseSpec>,
) -> Result<TrialSummary> {
    if trials == 0 {
        return Err(Error::InvalidParameter("need at least one trial".into()));
    }
    if strategies.is_empty() {
        return Err(Error::InvalidParameter(
            "need at least one strategy".into(),
        ));
    }
    cfg.validate()?;
    spec.validate()?;
    if let Some(n) = noise {
        n.validate()?;
    }

    let outcomes: Vec<TrialOutcome> = (0..trials)
        .into_par_iter()
        .map(|t| run_trial(template, spec, cfg, strategies, noise, t))
        .collect::<Result<_>>()?;

    let stats = strategies
        .iter()
        .enumerate()
        .map(|(i, &strategy)| {
            let per_trial: Vec<f64> = outcomes.iter().map(|o| o.avg_rates[i]).collect();
            let iters: Vec<usize> = outcomes.iter().map(|o| o.iterations[i]).collect();
            let mean = per_trial.iter().sum::<f64>() / trials as f64;
            let std = if trials > 1 {
                (per_trial.iter().map(|r| (r - mean).powi(2)).sum::<f64>()
                    / (trials as f64 - 1.0))
                    .sqrt()
            } else {
                0.0
            };
            StrategyStats {
                strategy,
                per_trial_avg_rate: per_trial,
                mean_avg_rate: mean,
                std_avg_rate: std,
                per_trial_iterations: iters,
            }
        })
        .collect();

    Ok(TrialSummary {
        trials,
        seed: spec.seed,
        strategies: stats,
    })
}

/// Repeats the Monte Carlo run across transmit powers with common seeds.
pub fn power_sweep(
    template: &ScenarioTemplate,
    spec: &PlacementSpec,
    cfg: &OptimizerConfig,
    strategies: &[Strategy],
    trials: usize,
    noise: Option<&NoiseSpec>,
    powers_dbm: &[f64],
) -> Result<Vec<SweepPoint>> {
    powers_dbm
        .iter()
        .map(|&p| {
            let swept = ScenarioTemplate {
                radio: template.radio.with_power_dbm(p),
                ..template.clone()
            };
            monte_carlo(&swept, spec, cfg, strategies, trials, noise).map(|summary| SweepPoint {
                axis_value: p,
                summary,
            })
        })
        .collect()
}

/// Repeats the Monte Carlo run across location-error levels with common seeds.
pub fn robustness_sweep(
    template: &ScenarioTemplate,
    spec: &PlacementSpec,
    cfg: &OptimizerConfig,
    strategies: &[Strategy],
    trials: usize,
    sigmas_m: &[f64],
) -> Result<Vec<SweepPoint>> {
    sigmas_m
        .iter()
        .map(|&sigma| {
            let noise = NoiseSpec { sigma_m: sigma };
            monte_carlo(template, spec, cfg, strategies, trials, Some(&noise)).map(|summary| {
                SweepPoint {
                    axis_value: sigma,
                    summary,
                }
            })
        })
        .collect()
}

/// One ground point of an interference heatmap.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HeatSample {
    pub position: Position3D,
    /// Average inter-cell interference power at the point, watts.
    pub interference_w: f64,
}

/// Average interference power over a ground grid.
///
/// Each point is assigned to the cell of the nearest UAV and probed for the
/// interference arriving from all other cells under the given rotations.
pub fn interference_heatmap(
    scenario: &Scenario,
    rotations: &RotationVector,
    grid: &GridSpec,
) -> Result<Vec<HeatSample>> {
    grid.validate()?;
    let points: Vec<Position3D> = grid.points().collect();
    points
        .into_par_iter()
        .map(|p| {
            let cell = scenario.nearest_cell(&p);
            interference_power_at(scenario, cell, &p, rotations).map(|w| HeatSample {
                position: p,
                interference_w: w,
            })
        })
        .collect()
}

/// 10 m-resolution grid covering every cell disc, the heatmap default.
pub fn default_heatmap_grid(uavs: &[Position3D], cell_radius_m: f64, step_m: f64) -> Result<GridSpec> {
    if uavs.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let min = |f: fn(&Position3D) -> f64| {
        uavs.iter().map(f).fold(f64::INFINITY, f64::min) - cell_radius_m
    };
    let max = |f: fn(&Position3D) -> f64| {
        uavs.iter().map(f).fold(f64::NEG_INFINITY, f64::max) + cell_radius_m
    };
    GridSpec::new(min(|p| p.x), max(|p| p.x), min(|p| p.y), max(|p| p.y), step_m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn radio() -> RadioConfig {
        RadioConfig::new(50.0, 1e9, -174.0, 28e9).unwrap()
    }

    fn template(m: usize) -> ScenarioTemplate {
        ScenarioTemplate {
            uavs: vec![
                Position3D::new(500.0, 500.0, 200.0),
                Position3D::new(500.0, 1500.0, 200.0),
                Position3D::new(1000.0, 1500.0, 200.0),
            ],
            elements_per_dim: m,
            radio: radio(),
        }
    }

    fn small_spec(k: usize, seed: u64) -> PlacementSpec {
        PlacementSpec {
            gus_per_cell: k,
            seed,
            ..Default::default()
        }
    }

    fn small_cfg(w: usize) -> OptimizerConfig {
        OptimizerConfig {
            grid_points: w,
            ..Default::default()
        }
    }

    #[test]
    fn samples_stay_in_the_annulus() {
        let spec = small_spec(200, 9);
        let center = Position3D::new(500.0, 500.0, 200.0);
        let mut rng = substream(spec.seed, STREAM_PLACEMENT, 0);
        for p in sample_gus(&center, &spec, &mut rng) {
            let d = ((p.x - 500.0).powi(2) + (p.y - 500.0).powi(2)).sqrt();
            assert!(d >= spec.min_distance_m && d <= spec.cell_radius_m);
            assert_eq!(p.z, 0.0);
        }
    }

    #[test]
    fn sampler_is_deterministic() {
        let spec = small_spec(20, 42);
        let center = Position3D::new(0.0, 0.0, 200.0);
        let a = sample_gus(&center, &spec, &mut substream(42, STREAM_PLACEMENT, 3));
        let b = sample_gus(&center, &spec, &mut substream(42, STREAM_PLACEMENT, 3));
        assert_eq!(a, b);
        let other = sample_gus(&center, &spec, &mut substream(42, STREAM_PLACEMENT, 4));
        assert_ne!(a, other);
    }

    #[test]
    fn sampler_mean_radius_matches_annulus_moment() {
        let spec = PlacementSpec {
            gus_per_cell: 100_000,
            seed: 7,
            ..Default::default()
        };
        let center = Position3D::new(0.0, 0.0, 200.0);
        let mut rng = substream(spec.seed, STREAM_PLACEMENT, 0);
        let points = sample_gus(&center, &spec, &mut rng);
        let mean_r: f64 = points
            .iter()
            .map(|p| (p.x * p.x + p.y * p.y).sqrt())
            .sum::<f64>()
            / points.len() as f64;
        // (2/3)·(r_max³ − r_min³)/(r_max² − r_min²) for an area-uniform annulus.
        let analytic = 2.0 / 3.0 * (500f64.powi(3) - 200f64.powi(3))
            / (500f64.powi(2) - 200f64.powi(2));
        assert!(
            (mean_r / analytic - 1.0).abs() < 0.01,
            "mean {mean_r} vs analytic {analytic}"
        );
    }

    #[test]
    fn perturbation_statistics_and_identity() {
        let spec = small_spec(3, 5);
        let scenario = sample_scenario(&template(8), &spec, 0).unwrap();

        // Zero sigma is the identity.
        let frozen = perturb_positions(
            &scenario,
            &NoiseSpec { sigma_m: 0.0 },
            &mut substream(5, STREAM_NOISE, 0),
        )
        .unwrap();
        assert_eq!(frozen, scenario);

        // Offsets over many draws have the requested std and leave UAVs alone.
        let big = Scenario::new(
            vec![Position3D::new(0.0, 0.0, 200.0)],
            vec![vec![Position3D::ground(300.0, 0.0); 100_000]],
            2,
            radio(),
        )
        .unwrap();
        let sigma = 20.0;
        let noisy = perturb_positions(
            &big,
            &NoiseSpec { sigma_m: sigma },
            &mut substream(5, STREAM_NOISE, 1),
        )
        .unwrap();
        let offsets: Vec<f64> = noisy
            .users(0)
            .iter()
            .flat_map(|p| [p.x - 300.0, p.y])
            .collect();
        let mean = offsets.iter().sum::<f64>() / offsets.len() as f64;
        let var = offsets.iter().map(|o| (o - mean).powi(2)).sum::<f64>()
            / (offsets.len() as f64 - 1.0);
        assert!((var.sqrt() / sigma - 1.0).abs() < 0.02, "std {}", var.sqrt());
        assert_eq!(noisy.uavs(), big.uavs());
    }

    #[test]
    fn fixed_only_mean_is_the_average() {
        let summary = monte_carlo(
            &template(8),
            &small_spec(3, 11),
            &small_cfg(4),
            &[Strategy::Fixed],
            6,
            None,
        )
        .unwrap();
        let stats = summary.stats(Strategy::Fixed).unwrap();
        let mean = stats.per_trial_avg_rate.iter().sum::<f64>() / 6.0;
        assert_eq!(stats.mean_avg_rate, mean);
        assert_eq!(stats.per_trial_iterations, vec![0; 6]);
    }

    #[test]
    fn aur_never_loses_to_fixed_without_noise() {
        let summary = monte_carlo(
            &template(8),
            &small_spec(4, 13),
            &small_cfg(8),
            &[Strategy::Fixed, Strategy::Aur],
            10,
            None,
        )
        .unwrap();
        let fixed = summary.stats(Strategy::Fixed).unwrap();
        let aur_stats = summary.stats(Strategy::Aur).unwrap();
        for (f, a) in fixed
            .per_trial_avg_rate
            .iter()
            .zip(&aur_stats.per_trial_avg_rate)
        {
            assert!(a >= &(f - 1e-12), "aur {a} below fixed {f}");
        }
        assert!(aur_stats.mean_avg_rate >= fixed.mean_avg_rate);
    }

    #[test]
    fn adding_a_strategy_never_moves_placements() {
        let spec = small_spec(3, 17);
        let alone = monte_carlo(
            &template(8),
            &spec,
            &small_cfg(4),
            &[Strategy::Fixed],
            5,
            None,
        )
        .unwrap();
        let together = monte_carlo(
            &template(8),
            &spec,
            &small_cfg(4),
            &[Strategy::Fixed, Strategy::Aur],
            5,
            None,
        )
        .unwrap();
        assert_eq!(
            alone.stats(Strategy::Fixed).unwrap().per_trial_avg_rate,
            together.stats(Strategy::Fixed).unwrap().per_trial_avg_rate
        );
    }

    #[test]
    fn summary_is_bit_reproducible() {
        let run = || {
            monte_carlo(
                &template(8),
                &small_spec(3, 19),
                &small_cfg(4),
                &[Strategy::Fixed, Strategy::Aur, Strategy::Exhaustive],
                5,
                Some(&NoiseSpec { sigma_m: 15.0 }),
            )
            .unwrap()
        };
        assert_eq!(run(), run());
    }

    #[test]
    fn dominance_chain_per_trial() {
        let summary = monte_carlo(
            &template(8),
            &small_spec(3, 23),
            &small_cfg(4),
            &[Strategy::Fixed, Strategy::Aur, Strategy::Exhaustive],
            8,
            None,
        )
        .unwrap();
        let f = summary.stats(Strategy::Fixed).unwrap();
        let a = summary.stats(Strategy::Aur).unwrap();
        let e = summary.stats(Strategy::Exhaustive).unwrap();
        for t in 0..8 {
            assert!(e.per_trial_avg_rate[t] >= a.per_trial_avg_rate[t] - 1e-12);
            assert!(a.per_trial_avg_rate[t] >= f.per_trial_avg_rate[t] - 1e-12);
        }
    }

    #[test]
    fn power_sweep_limits() {
        let points = power_sweep(
            &template(8),
            &small_spec(4, 29),
            &small_cfg(8),
            &[Strategy::Fixed, Strategy::Aur],
            8,
            None,
            &[-20.0, 70.0, 90.0],
        )
        .unwrap();
        let gain: Vec<f64> = points
            .iter()
            .map(|p| p.summary.relative_gain(Strategy::Aur, Strategy::Fixed).unwrap())
            .collect();
        // Noise-limited floor: rotation buys nothing at very low power.
        assert!(gain[0].abs() < 1e-3, "low-power gain {}", gain[0]);
        // Interference-limited ceiling: the gain flattens once interference
        // dwarfs the noise floor.
        assert!(gain[1] > gain[0]);
        assert!(
            (gain[2] - gain[1]).abs() <= 0.25 * gain[1].abs() + 1e-4,
            "gain did not saturate: {} vs {}",
            gain[1],
            gain[2]
        );

        // Fixed-strategy absolute rate grows with power, trial by trial.
        for t in 0..8 {
            let r: Vec<f64> = points
                .iter()
                .map(|p| p.summary.stats(Strategy::Fixed).unwrap().per_trial_avg_rate[t])
                .collect();
            assert!(r[1] > r[0] && r[2] > r[1]);
        }
    }

    #[test]
    fn zero_sigma_point_equals_noiseless_run() {
        let spec = small_spec(3, 31);
        let noiseless = monte_carlo(
            &template(8),
            &spec,
            &small_cfg(4),
            &[Strategy::Fixed, Strategy::Aur],
            5,
            None,
        )
        .unwrap();
        let swept = robustness_sweep(
            &template(8),
            &spec,
            &small_cfg(4),
            &[Strategy::Fixed, Strategy::Aur],
            5,
            &[0.0],
        )
        .unwrap();
        assert_eq!(swept[0].summary, noiseless);
    }

    #[test]
    fn heatmap_single_cell_is_silent() {
        let single = ScenarioTemplate {
            uavs: vec![Position3D::new(0.0, 0.0, 200.0)],
            elements_per_dim: 8,
            radio: radio(),
        };
        let scenario = sample_scenario(&single, &small_spec(3, 37), 0).unwrap();
        let grid = GridSpec::new(-400.0, 400.0, -400.0, 400.0, 200.0).unwrap();
        let map = interference_heatmap(&scenario, &RotationVector::zeros(1), &grid).unwrap();
        assert_eq!(map.len(), 25);
        for s in map {
            assert_eq!(s.interference_w, 0.0);
        }
    }

    #[test]
    fn heatmap_quarter_turn_equivalence() {
        let scenario = sample_scenario(&template(8), &small_spec(3, 41), 0).unwrap();
        let grid = GridSpec::new(0.0, 1500.0, 0.0, 2000.0, 250.0).unwrap();
        let rot = RotationVector::new(vec![0.2, 0.7, 1.1]).unwrap();
        let a = interference_heatmap(&scenario, &rot, &grid).unwrap();
        let b = interference_heatmap(&scenario, &rot.shifted(FRAC_PI_2), &grid).unwrap();
        for (x, y) in a.iter().zip(&b) {
            let denom = x.interference_w.abs().max(1e-30);
            assert!((x.interference_w - y.interference_w).abs() / denom < 1e-9);
        }
    }

    #[test]
    fn optimized_rotations_lower_mean_interference() {
        let scenario = sample_scenario(&template(8), &small_spec(3, 43), 0).unwrap();
        let grid = default_heatmap_grid(scenario.uavs(), 500.0, 100.0).unwrap();
        let zero = RotationVector::zeros(3);
        let tuned = aur(&scenario, &small_cfg(8)).unwrap().rotations;
        let mean = |rot: &RotationVector| -> f64 {
            let map = interference_heatmap(&scenario, rot, &grid).unwrap();
            map.iter().map(|s| s.interference_w).sum::<f64>() / map.len() as f64
        };
        assert!(mean(&tuned) <= mean(&zero));
    }

    #[test]
    fn input_validation() {
        assert!(PlacementSpec {
            min_distance_m: 600.0,
            ..Default::default()
        }
        .validate()
        .is_err());
        assert!(NoiseSpec { sigma_m: -1.0 }.validate().is_err());
        assert!(monte_carlo(
            &template(8),
            &small_spec(3, 1),
            &small_cfg(4),
            &[],
            5,
            None
        )
        .is_err());
        assert!(monte_carlo(
            &template(8),
            &small_spec(3, 1),
            &small_cfg(4),
            &[Strategy::Fixed],
            0,
            None
        )
        .is_err());
    }
}
