//! Batch front-end: reads a JSON run configuration, executes one of the
//! simulation commands, and emits machine-readable results (JSON summaries,
//! CSV tables) into the output directory together with the resolved
//! configuration for provenance.
//!
//! Exit codes: 0 on success, 2 for configuration problems, 3 when an
//! exhaustive search exceeds its combination budget, 1 otherwise.

mod config;
mod output;

use std::path::PathBuf;

use anyhow::anyhow;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use uavrot::beamforming::{gain_vs_rotation_curve, ground_pattern};
use uavrot::coordination::{run_decentralized, CoordinationLog};
use uavrot::experiments::{
    default_heatmap_grid, interference_heatmap, monte_carlo, power_sweep, robustness_sweep,
    NoiseSpec, Strategy, StrategyStats, SweepPoint,
};
use uavrot::geometry::{link_geometry, GridSpec, Position3D, RotationVector};
use uavrot::network::{sum_rate, Scenario};
use uavrot::optimizer::{aur, exhaustive_search_with_budget, fixed_baseline, OptResult};
use uavrot::channel::watts_to_dbm;

use config::{ConfigError, OutputFormat, RunConfig};
use output::{fmt_f64, Meta, OutputDir};

#[derive(Parser)]
#[command(name = "uavrot", version, about = "Multi-cell UAV rotation simulator")]
struct Cli {
    /// JSON run configuration; defaults apply when omitted.
    #[arg(long, global = true, env = "UAVROT_CONFIG")]
    config: Option<PathBuf>,

    /// Output directory override.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Optimize one scenario and report every configured strategy.
    Optimize,
    /// Monte Carlo comparison of the configured strategies.
    Montecarlo,
    /// Repeat the Monte Carlo run along a parameter axis.
    Sweep {
        #[arg(long, value_enum)]
        axis: SweepAxis,
    },
    /// Ground interference heatmap under a rotation vector.
    Heatmap {
        /// "zero", "aur", or explicit comma-separated angles in radians.
        #[arg(long, default_value = "zero")]
        rotations: String,
        /// Grid resolution in meters.
        #[arg(long, default_value_t = 10.0)]
        step: f64,
    },
    /// Projected beam pattern of one UAV steered at one of its users.
    Pattern {
        #[arg(long)]
        cell: usize,
        #[arg(long)]
        gu: usize,
        /// Rotation angle in radians.
        #[arg(long, default_value_t = 0.0)]
        omega: f64,
        /// Grid resolution in meters.
        #[arg(long, default_value_t = 10.0)]
        step: f64,
    },
    /// Interference gain versus rotation angle for one victim point.
    Curve {
        #[arg(long)]
        cell: usize,
        #[arg(long)]
        gu: usize,
        #[arg(long)]
        victim_x: f64,
        #[arg(long)]
        victim_y: f64,
        #[arg(long, default_value_t = 256)]
        samples: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SweepAxis {
    Power,
    Sigma,
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(cli) {
        eprintln!("error: {err:#}");
        std::process::exit(exit_code(&err));
    }
}

fn exit_code(err: &anyhow::Error) -> i32 {
    if err.downcast_ref::<ConfigError>().is_some() {
        return 2;
    }
    if let Some(uavrot::Error::BudgetExceeded { .. }) = err.downcast_ref::<uavrot::Error>() {
        return 3;
    }
    1
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let mut cfg = RunConfig::load(cli.config.as_deref())?;
    if let Some(out) = &cli.out {
        cfg.output.directory = out.to_string_lossy().into_owned();
    }
    let out = OutputDir::create(cfg.output.directory.as_ref())?;
    out.write_bytes("config.resolved.json", &cfg.resolved_bytes())?;
    let meta = Meta::new(cfg.hash(), cfg.experiment.seed);

    match cli.command {
        Command::Optimize => cmd_optimize(&cfg, &out, &meta),
        Command::Montecarlo => cmd_montecarlo(&cfg, &out, &meta),
        Command::Sweep { axis } => cmd_sweep(&cfg, &out, &meta, axis),
        Command::Heatmap { rotations, step } => cmd_heatmap(&cfg, &out, &meta, &rotations, step),
        Command::Pattern {
            cell,
            gu,
            omega,
            step,
        } => cmd_pattern(&cfg, &out, &meta, cell, gu, omega, step),
        Command::Curve {
            cell,
            gu,
            victim_x,
            victim_y,
            samples,
        } => cmd_curve(&cfg, &out, &meta, cell, gu, victim_x, victim_y, samples),
    }
}

#[derive(Serialize)]
struct StrategyRun {
    strategy: Strategy,
    rotations_rad: RotationVector,
    sum_rate_bps_hz: f64,
    avg_rate_bps_hz: f64,
    iterations: usize,
    evaluations: usize,
    converged: bool,
    rate_trace: Vec<f64>,
}

#[derive(Serialize)]
struct OptimizeSummary<'a> {
    meta: &'a Meta,
    strategies: Vec<StrategyRun>,
    coordination: Option<CoordinationLog>,
}

fn cmd_optimize(cfg: &RunConfig, out: &OutputDir, meta: &Meta) -> anyhow::Result<()> {
    let scenario = cfg.realize_scenario()?;
    let opt_cfg = cfg.optimizer();
    let mut runs = Vec::new();
    let mut coordination = None;
    for &strategy in &cfg.experiment.strategies {
        let result: OptResult = match strategy {
            Strategy::Fixed => fixed_baseline(&scenario)?,
            Strategy::Aur => {
                let (result, log) = run_decentralized(&scenario, &opt_cfg)?;
                coordination = Some(log);
                result
            }
            Strategy::Exhaustive => exhaustive_search_with_budget(
                &scenario,
                opt_cfg.grid_points,
                opt_cfg.exhaustive_budget,
            )?,
        };
        let report = sum_rate(&scenario, &result.rotations)?;
        runs.push(StrategyRun {
            strategy,
            rotations_rad: result.rotations,
            sum_rate_bps_hz: report.sum_rate,
            avg_rate_bps_hz: report.avg_rate,
            iterations: result.iterations,
            evaluations: result.evaluations,
            converged: result.converged,
            rate_trace: result.rate_trace,
        });
    }
    if cfg.wants(OutputFormat::Json) {
        let path = out.write_json(
            "summary.json",
            &OptimizeSummary {
                meta,
                strategies: runs,
                coordination,
            },
        )?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

#[derive(Serialize)]
struct MonteCarloSummary<'a> {
    meta: &'a Meta,
    trials: usize,
    noise_sigma_m: f64,
    strategies: Vec<StrategyStats>,
}

fn trial_rows(prefix: &str, strategies: &[StrategyStats]) -> Vec<String> {
    let mut rows = Vec::new();
    let trials = strategies
        .first()
        .map(|s| s.per_trial_avg_rate.len())
        .unwrap_or(0);
    for t in 0..trials {
        for s in strategies {
            rows.push(format!(
                "{prefix}{t},{},{},{}",
                s.strategy,
                fmt_f64(s.per_trial_avg_rate[t]),
                s.per_trial_iterations[t]
            ));
        }
    }
    rows
}

fn noise_of(cfg: &RunConfig) -> Option<NoiseSpec> {
    (cfg.experiment.noise_sigma_m > 0.0).then_some(NoiseSpec {
        sigma_m: cfg.experiment.noise_sigma_m,
    })
}

fn cmd_montecarlo(cfg: &RunConfig, out: &OutputDir, meta: &Meta) -> anyhow::Result<()> {
    let summary = monte_carlo(
        &cfg.template()?,
        &cfg.placement(),
        &cfg.optimizer(),
        &cfg.experiment.strategies,
        cfg.experiment.trials,
        noise_of(cfg).as_ref(),
    )?;
    if cfg.wants(OutputFormat::Json) {
        let path = out.write_json(
            "summary.json",
            &MonteCarloSummary {
                meta,
                trials: summary.trials,
                noise_sigma_m: cfg.experiment.noise_sigma_m,
                strategies: summary.strategies.clone(),
            },
        )?;
        println!("wrote {}", path.display());
    }
    if cfg.wants(OutputFormat::Csv) {
        let path = out.write_csv(
            "trials.csv",
            meta,
            "trial,strategy,avg_rate_bps_hz,iterations",
            trial_rows("", &summary.strategies),
        )?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

#[derive(Serialize)]
struct SweepPointOut {
    axis_value: f64,
    strategies: Vec<StrategyStats>,
}

#[derive(Serialize)]
struct SweepSummary<'a> {
    meta: &'a Meta,
    axis: &'static str,
    trials: usize,
    points: Vec<SweepPointOut>,
}

fn cmd_sweep(
    cfg: &RunConfig,
    out: &OutputDir,
    meta: &Meta,
    axis: SweepAxis,
) -> anyhow::Result<()> {
    let template = cfg.template()?;
    let (axis_name, points): (&'static str, Vec<SweepPoint>) = match axis {
        SweepAxis::Power => (
            "power_dbm",
            power_sweep(
                &template,
                &cfg.placement(),
                &cfg.optimizer(),
                &cfg.experiment.strategies,
                cfg.experiment.trials,
                noise_of(cfg).as_ref(),
                &cfg.experiment.power_sweep_dbm,
            )?,
        ),
        SweepAxis::Sigma => (
            "sigma_m",
            robustness_sweep(
                &template,
                &cfg.placement(),
                &cfg.optimizer(),
                &cfg.experiment.strategies,
                cfg.experiment.trials,
                &cfg.experiment.sigma_sweep_m,
            )?,
        ),
    };
    if cfg.wants(OutputFormat::Json) {
        let path = out.write_json(
            "summary.json",
            &SweepSummary {
                meta,
                axis: axis_name,
                trials: cfg.experiment.trials,
                points: points
                    .iter()
                    .map(|p| SweepPointOut {
                        axis_value: p.axis_value,
                        strategies: p.summary.strategies.clone(),
                    })
                    .collect(),
            },
        )?;
        println!("wrote {}", path.display());
    }
    if cfg.wants(OutputFormat::Csv) {
        let mut rows = Vec::new();
        for p in &points {
            rows.extend(trial_rows(
                &format!("{},", fmt_f64(p.axis_value)),
                &p.summary.strategies,
            ));
        }
        let path = out.write_csv(
            "trials.csv",
            meta,
            "axis_value,trial,strategy,avg_rate_bps_hz,iterations",
            rows,
        )?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn parse_rotations(
    arg: &str,
    scenario: &Scenario,
    cfg: &RunConfig,
) -> anyhow::Result<(RotationVector, String)> {
    match arg {
        "zero" => Ok((RotationVector::zeros(scenario.num_cells()), "zero".into())),
        "aur" => Ok((aur(scenario, &cfg.optimizer())?.rotations, "aur".into())),
        list => {
            let angles: Vec<f64> = list
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<f64>()
                        .map_err(|e| anyhow!("bad rotation angle '{s}': {e}"))
                })
                .collect::<anyhow::Result<_>>()?;
            if angles.len() != scenario.num_cells() {
                return Err(anyhow!(
                    "{} rotation angles given for {} cells",
                    angles.len(),
                    scenario.num_cells()
                ));
            }
            Ok((RotationVector::new(angles)?, "custom".into()))
        }
    }
}

fn cmd_heatmap(
    cfg: &RunConfig,
    out: &OutputDir,
    meta: &Meta,
    rotations: &str,
    step: f64,
) -> anyhow::Result<()> {
    let scenario = cfg.realize_scenario()?;
    let (rot, tag) = parse_rotations(rotations, &scenario, cfg)?;
    let grid = default_heatmap_grid(scenario.uavs(), cfg.scenario.cell_radius_m, step)?;
    let samples = interference_heatmap(&scenario, &rot, &grid)?;
    let rows = samples.iter().map(|s| {
        format!(
            "{},{},{},{}",
            fmt_f64(s.position.x),
            fmt_f64(s.position.y),
            fmt_f64(s.interference_w),
            fmt_f64(watts_to_dbm(s.interference_w)),
        )
    });
    let name = format!("heatmap_{tag}.csv");
    let angles = rot
        .angles()
        .iter()
        .map(|w| fmt_f64(*w))
        .collect::<Vec<_>>()
        .join(",");
    let header = format!("# rotations_rad={angles}\nx,y,value_watts,value_dbm");
    let path = out.write_csv(&name, meta, &header, rows)?;
    println!("wrote {}", path.display());
    Ok(())
}

fn cmd_pattern(
    cfg: &RunConfig,
    out: &OutputDir,
    meta: &Meta,
    cell: usize,
    gu: usize,
    omega: f64,
    step: f64,
) -> anyhow::Result<()> {
    let scenario = cfg.realize_scenario()?;
    if cell >= scenario.num_cells() || gu >= scenario.users(cell).len() {
        return Err(ConfigError(format!(
            "pattern target cell {cell} / gu {gu} is out of range"
        ))
        .into());
    }
    let uav = scenario.uav(cell);
    let radius = cfg.scenario.cell_radius_m;
    let grid = GridSpec::new(
        uav.x - radius,
        uav.x + radius,
        uav.y - radius,
        uav.y + radius,
        step,
    )?;
    let samples = ground_pattern(
        uav,
        &scenario.users(cell)[gu],
        scenario.array().elements_per_dim(),
        omega,
        &grid,
        Some(scenario.radio()),
    )?;
    let rows = samples.iter().map(|s| {
        format!(
            "{},{},{},{}",
            fmt_f64(s.position.x),
            fmt_f64(s.position.y),
            fmt_f64(s.gain),
            fmt_f64(s.rx_power_w.unwrap_or(f64::NAN)),
        )
    });
    let name = format!("pattern_cell{cell}_gu{gu}.csv");
    let header = format!("# omega_rad={}\nx,y,gain,rx_power_watts", fmt_f64(omega));
    let path = out.write_csv(&name, meta, &header, rows)?;
    println!("wrote {}", path.display());
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_curve(
    cfg: &RunConfig,
    out: &OutputDir,
    meta: &Meta,
    cell: usize,
    gu: usize,
    victim_x: f64,
    victim_y: f64,
    samples: usize,
) -> anyhow::Result<()> {
    let scenario = cfg.realize_scenario()?;
    if cell >= scenario.num_cells() || gu >= scenario.users(cell).len() {
        return Err(ConfigError(format!(
            "curve target cell {cell} / gu {gu} is out of range"
        ))
        .into());
    }
    let uav = scenario.uav(cell);
    let target = link_geometry(uav, &scenario.users(cell)[gu])?;
    let victim = link_geometry(uav, &Position3D::ground(victim_x, victim_y))?;
    let curve = gain_vs_rotation_curve(
        &target,
        &victim,
        scenario.array().elements_per_dim(),
        samples,
    )?;
    let rows = curve
        .iter()
        .map(|(w, g)| format!("{},{}", fmt_f64(*w), fmt_f64(*g)));
    let path = out.write_csv("curve.csv", meta, "omega_rad,gain", rows)?;
    println!("wrote {}", path.display());
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_distinguish_error_classes() {
        let config_err = anyhow::Error::from(ConfigError("bad".into()));
        assert_eq!(exit_code(&config_err), 2);
        let budget = anyhow::Error::from(uavrot::Error::BudgetExceeded {
            combinations: 10,
            budget: 5,
        });
        assert_eq!(exit_code(&budget), 3);
        let other = anyhow!("disk on fire");
        assert_eq!(exit_code(&other), 1);
    }
}
