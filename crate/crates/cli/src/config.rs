//! Run configuration: a single JSON document with every knob optional and
//! defaults matching the reference simulation setup (3 cells, 200 m altitude,
//! M = 8, K = 10 users, 50 dBm, 1 GHz bandwidth, −174 dBm/Hz noise PSD,
//! 50 trials, W = 32 rotation angles).

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use uavrot::channel::RadioConfig;
use uavrot::experiments::{PlacementSpec, ScenarioTemplate, Strategy};
use uavrot::geometry::Position3D;
use uavrot::network::Scenario;
use uavrot::optimizer::OptimizerConfig;

/// A configuration problem: unreadable file, malformed JSON, or a field out
/// of range. Exits with code 2.
#[derive(Debug, Error)]
#[error("{0}")]
pub struct ConfigError(pub String);

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub scenario: ScenarioBlock,
    pub radio: RadioBlock,
    pub array: ArrayBlock,
    pub optimizer: OptimizerBlock,
    pub experiment: ExperimentBlock,
    pub output: OutputBlock,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioBlock {
    /// UAV positions [x, y, z] in meters, one per cell.
    pub uav_positions: Vec<[f64; 3]>,
    pub gus_per_cell: usize,
    pub cell_radius_m: f64,
    pub min_gu_distance_m: f64,
    /// Explicit ground-user layouts [x, y] per cell; overrides sampling for
    /// the single-scenario commands.
    pub gu_positions: Option<Vec<Vec<[f64; 2]>>>,
}

impl Default for ScenarioBlock {
    fn default() -> Self {
        Self {
            uav_positions: vec![
                [500.0, 500.0, 200.0],
                [500.0, 1500.0, 200.0],
                [1000.0, 1500.0, 200.0],
            ],
            gus_per_cell: 10,
            cell_radius_m: 500.0,
            min_gu_distance_m: 200.0,
            gu_positions: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RadioBlock {
    pub power_dbm: f64,
    pub bandwidth_hz: f64,
    pub noise_psd_dbm_hz: f64,
    pub carrier_hz: f64,
}

impl Default for RadioBlock {
    fn default() -> Self {
        Self {
            power_dbm: 50.0,
            bandwidth_hz: 1e9,
            noise_psd_dbm_hz: -174.0,
            carrier_hz: 7e8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ArrayBlock {
    /// Antenna elements per dimension (the array is M×M).
    #[serde(rename = "M")]
    pub m: usize,
}

impl Default for ArrayBlock {
    fn default() -> Self {
        Self { m: 8 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OptimizerBlock {
    /// Rotation-angle grid points per UAV over [0, π/2).
    #[serde(rename = "W")]
    pub w: usize,
    /// Maximum optimizer sweeps.
    #[serde(rename = "L")]
    pub l: usize,
    /// Convergence threshold in bits/s/Hz.
    pub epsilon: f64,
    /// Cap on exhaustive-search combinations W^N.
    pub exhaustive_budget: u64,
}

impl Default for OptimizerBlock {
    fn default() -> Self {
        Self {
            w: 32,
            l: 20,
            epsilon: 1e-6,
            exhaustive_budget: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentBlock {
    pub trials: usize,
    pub seed: u64,
    pub strategies: Vec<Strategy>,
    /// Location-error standard deviation fed to the optimizer, meters.
    pub noise_sigma_m: f64,
    /// Transmit powers for `sweep --axis power`, dBm.
    pub power_sweep_dbm: Vec<f64>,
    /// Location-error levels for `sweep --axis sigma`, meters.
    pub sigma_sweep_m: Vec<f64>,
}

impl Default for ExperimentBlock {
    fn default() -> Self {
        Self {
            trials: 50,
            seed: 1,
            strategies: vec![Strategy::Fixed, Strategy::Aur],
            noise_sigma_m: 0.0,
            power_sweep_dbm: vec![10.0, 20.0, 30.0, 40.0, 50.0, 60.0],
            sigma_sweep_m: vec![0.0, 10.0, 20.0, 40.0, 60.0, 80.0, 100.0],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputBlock {
    pub directory: String,
    pub formats: Vec<OutputFormat>,
}

impl Default for OutputBlock {
    fn default() -> Self {
        Self {
            directory: "out".into(),
            formats: vec![OutputFormat::Csv, OutputFormat::Json],
        }
    }
}

impl RunConfig {
    /// Reads and fully resolves a configuration. A missing path or an empty
    /// file yields the all-defaults configuration.
    pub fn load(path: Option<&Path>) -> Result<Self, ConfigError> {
        let config: RunConfig = match path {
            None => RunConfig::default(),
            Some(p) => {
                let text = fs::read_to_string(p).map_err(|e| {
                    ConfigError(format!("cannot read config {}: {e}", p.display()))
                })?;
                if text.trim().is_empty() {
                    RunConfig::default()
                } else {
                    serde_json::from_str(&text).map_err(|e| {
                        ConfigError(format!("config {}: {e}", p.display()))
                    })?
                }
            }
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let err = |msg: String| Err(ConfigError(msg));
        if self.scenario.uav_positions.is_empty() {
            return err("scenario.uav_positions must list at least one UAV".into());
        }
        for (i, p) in self.scenario.uav_positions.iter().enumerate() {
            if p[2].is_nan() || p[2] <= 0.0 {
                return err(format!(
                    "scenario.uav_positions[{i}] needs altitude z > 0, got {}",
                    p[2]
                ));
            }
        }
        if self.scenario.gus_per_cell == 0 {
            return err("scenario.gus_per_cell must be at least 1".into());
        }
        if self.scenario.min_gu_distance_m.is_nan()
            || self.scenario.cell_radius_m.is_nan()
            || self.scenario.min_gu_distance_m < 0.0
            || self.scenario.min_gu_distance_m >= self.scenario.cell_radius_m
        {
            return err(format!(
                "scenario requires 0 <= min_gu_distance_m < cell_radius_m, got {} and {}",
                self.scenario.min_gu_distance_m, self.scenario.cell_radius_m
            ));
        }
        if let Some(cells) = &self.scenario.gu_positions {
            if cells.len() != self.scenario.uav_positions.len() {
                return err(format!(
                    "scenario.gu_positions has {} cells but {} UAVs",
                    cells.len(),
                    self.scenario.uav_positions.len()
                ));
            }
            if cells.iter().any(Vec::is_empty) {
                return err("scenario.gu_positions cells must be non-empty".into());
            }
        }
        if self.radio.bandwidth_hz.is_nan() || self.radio.bandwidth_hz <= 0.0 {
            return err(format!(
                "radio.bandwidth_hz must be positive, got {}",
                self.radio.bandwidth_hz
            ));
        }
        if self.radio.carrier_hz.is_nan() || self.radio.carrier_hz <= 0.0 {
            return err(format!(
                "radio.carrier_hz must be positive, got {}",
                self.radio.carrier_hz
            ));
        }
        if self.array.m == 0 {
            return err("array.M must be at least 1".into());
        }
        if self.optimizer.w == 0 {
            return err("optimizer.W must be at least 1".into());
        }
        if self.optimizer.l == 0 {
            return err("optimizer.L must be at least 1".into());
        }
        if self.optimizer.epsilon.is_nan() || self.optimizer.epsilon < 0.0 {
            return err(format!(
                "optimizer.epsilon must be non-negative, got {}",
                self.optimizer.epsilon
            ));
        }
        if self.experiment.trials == 0 {
            return err("experiment.trials must be at least 1".into());
        }
        if self.experiment.strategies.is_empty() {
            return err("experiment.strategies must list at least one strategy".into());
        }
        if self.experiment.noise_sigma_m.is_nan() || self.experiment.noise_sigma_m < 0.0 {
            return err(format!(
                "experiment.noise_sigma_m must be non-negative, got {}",
                self.experiment.noise_sigma_m
            ));
        }
        if self.experiment.sigma_sweep_m.iter().any(|s| s.is_nan() || *s < 0.0) {
            return err("experiment.sigma_sweep_m entries must be non-negative".into());
        }
        if self.output.formats.is_empty() {
            return err("output.formats must list at least one format".into());
        }
        Ok(())
    }

    pub fn radio(&self) -> Result<RadioConfig, ConfigError> {
        RadioConfig::new(
            self.radio.power_dbm,
            self.radio.bandwidth_hz,
            self.radio.noise_psd_dbm_hz,
            self.radio.carrier_hz,
        )
        .map_err(|e| ConfigError(format!("radio: {e}")))
    }

    pub fn template(&self) -> Result<ScenarioTemplate, ConfigError> {
        Ok(ScenarioTemplate {
            uavs: self
                .scenario
                .uav_positions
                .iter()
                .map(|p| Position3D::new(p[0], p[1], p[2]))
                .collect(),
            elements_per_dim: self.array.m,
            radio: self.radio()?,
        })
    }

    pub fn placement(&self) -> PlacementSpec {
        PlacementSpec {
            cell_radius_m: self.scenario.cell_radius_m,
            min_distance_m: self.scenario.min_gu_distance_m,
            gus_per_cell: self.scenario.gus_per_cell,
            seed: self.experiment.seed,
        }
    }

    pub fn optimizer(&self) -> OptimizerConfig {
        OptimizerConfig {
            grid_points: self.optimizer.w,
            max_iterations: self.optimizer.l,
            epsilon: self.optimizer.epsilon,
            exhaustive_budget: self.optimizer.exhaustive_budget,
        }
    }

    /// The concrete world of the single-scenario commands: explicit GU
    /// layouts when given, otherwise the trial-0 sampled placement.
    pub fn realize_scenario(&self) -> anyhow::Result<Scenario> {
        let template = self.template()?;
        match &self.scenario.gu_positions {
            Some(cells) => {
                let gus = cells
                    .iter()
                    .map(|cell| {
                        cell.iter()
                            .map(|p| Position3D::ground(p[0], p[1]))
                            .collect()
                    })
                    .collect();
                Ok(template.instantiate(gus)?)
            }
            None => Ok(uavrot::experiments::sample_scenario(
                &template,
                &self.placement(),
                0,
            )?),
        }
    }

    pub fn wants(&self, format: OutputFormat) -> bool {
        self.output.formats.contains(&format)
    }

    /// The exact bytes echoed to `config.resolved.json`.
    pub fn resolved_bytes(&self) -> Vec<u8> {
        let mut bytes =
            serde_json::to_vec_pretty(self).expect("config serialization cannot fail");
        bytes.push(b'\n');
        bytes
    }

    /// SHA-256 over the resolved-config bytes; identifies a run setup.
    pub fn hash(&self) -> String {
        hex::encode(Sha256::digest(self.resolved_bytes()))
    }
}
