//! Multi-cell world model: assembles per-GU SINR, rates, and system sum rate
//! for a given vector of UAV rotation angles.
//!
//! Each cell's UAV steers an MRT beam at one of its own users per slot; the
//! interference a victim sees from a neighbor UAV is averaged over that
//! neighbor's users with equal scheduling weight 1/K_u. Intra-cell
//! interference is zero by construction (single-user time division).

use serde::{Deserialize, Serialize};

use crate::beamforming::rotated_gain;
use crate::channel::{path_loss, ArrayConfig, RadioConfig};
use crate::error::{Error, Result};
use crate::geometry::{link_geometry, LinkGeometry, Position3D, RotationVector};

/// Full multi-cell world: one UAV per cell, its users, array and radio.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    uavs: Vec<Position3D>,
    gus: Vec<Vec<Position3D>>,
    array: ArrayConfig,
    radio: RadioConfig,
}

impl Scenario {
    /// Builds a scenario; the array wavelength is tied to the radio carrier.
    pub fn new(
        uavs: Vec<Position3D>,
        gus: Vec<Vec<Position3D>>,
        elements_per_dim: usize,
        radio: RadioConfig,
    ) -> Result<Self> {
        if uavs.is_empty() {
            return Err(Error::InvalidParameter("need at least one cell".into()));
        }
        if gus.len() != uavs.len() {
            return Err(Error::InvalidParameter(format!(
                "{} UAVs but {} GU lists",
                uavs.len(),
                gus.len()
            )));
        }
        for uav in &uavs {
            if uav.z <= 0.0 {
                return Err(Error::InvalidUavAltitude(uav.z));
            }
        }
        for cell in &gus {
            if cell.is_empty() {
                return Err(Error::InvalidParameter(
                    "every cell needs at least one GU".into(),
                ));
            }
            for gu in cell {
                if gu.z != 0.0 {
                    return Err(Error::NonGroundUser(gu.z));
                }
            }
        }
        let array = ArrayConfig::new(elements_per_dim, radio.wavelength_m())?;
        Ok(Self {
            uavs,
            gus,
            array,
            radio,
        })
    }

    pub fn num_cells(&self) -> usize {
        self.uavs.len()
    }

    pub fn num_users(&self) -> usize {
        self.gus.iter().map(Vec::len).sum()
    }

    pub fn uav(&self, cell: usize) -> &Position3D {
        &self.uavs[cell]
    }

    pub fn uavs(&self) -> &[Position3D] {
        &self.uavs
    }

    pub fn users(&self, cell: usize) -> &[Position3D] {
        &self.gus[cell]
    }

    pub fn all_users(&self) -> &[Vec<Position3D>] {
        &self.gus
    }

    pub fn array(&self) -> &ArrayConfig {
        &self.array
    }

    pub fn radio(&self) -> &RadioConfig {
        &self.radio
    }

    /// Same world with a different set of user positions (topology preserved).
    pub fn with_users(&self, gus: Vec<Vec<Position3D>>) -> Result<Self> {
        Self::new(
            self.uavs.clone(),
            gus,
            self.array.elements_per_dim(),
            self.radio,
        )
    }

    /// Same world with a different transmit power.
    pub fn with_power_dbm(&self, power_dbm: f64) -> Self {
        Self {
            radio: self.radio.with_power_dbm(power_dbm),
            ..self.clone()
        }
    }

    fn check_indices(&self, cell: usize, user: usize) -> Result<()> {
        if cell >= self.num_cells() || user >= self.gus[cell].len() {
            return Err(Error::IndexOutOfRange { cell, user });
        }
        Ok(())
    }

    /// Index of the cell whose UAV ground projection is nearest to a point.
    pub fn nearest_cell(&self, point: &Position3D) -> usize {
        let mut best = 0;
        let mut best_d2 = f64::INFINITY;
        for (c, uav) in self.uavs.iter().enumerate() {
            let dx = uav.x - point.x;
            let dy = uav.y - point.y;
            let d2 = dx * dx + dy * dy;
            if d2 < best_d2 {
                best_d2 = d2;
                best = c;
            }
        }
        best
    }
}

/// Per-GU SINR and rate plus cell and system aggregates for one rotation vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateReport {
    /// Linear SINR per GU, indexed [cell][user].
    pub sinr: Vec<Vec<f64>>,
    /// Shannon rate log2(1 + SINR) per GU in bits/s/Hz, indexed [cell][user].
    pub rate: Vec<Vec<f64>>,
    /// Per-cell rate sums in bits/s/Hz.
    pub cell_rate: Vec<f64>,
    /// System sum rate R in bits/s/Hz.
    pub sum_rate: f64,
    /// Average GU rate R̄ = R / ΣK_c in bits/s/Hz.
    pub avg_rate: f64,
    /// Rotation vector the report was evaluated at.
    pub rotations: RotationVector,
}

/// Inter-cell interference power at an arbitrary ground probe point assigned
/// to `cell`, in watts.
///
/// Σ over u ≠ cell, k_u of (P / (K_u · L_u→probe)) · g̃(ω_u), where the gain
/// pairs UAV u's beam toward its own user k_u against the probe link.
pub fn interference_power_at(
    scenario: &Scenario,
    cell: usize,
    probe: &Position3D,
    rotations: &RotationVector,
) -> Result<f64> {
    if cell >= scenario.num_cells() {
        return Err(Error::IndexOutOfRange { cell, user: 0 });
    }
    if rotations.len() != scenario.num_cells() {
        return Err(Error::InvalidParameter(format!(
            "rotation vector has {} entries for {} cells",
            rotations.len(),
            scenario.num_cells()
        )));
    }
    let power = scenario.radio().power_w();
    let wavelength = scenario.radio().wavelength_m();
    let m = scenario.array().elements_per_dim();
    let mut total = 0.0;
    for u in 0..scenario.num_cells() {
        if u == cell {
            continue;
        }
        let victim_link = link_geometry(scenario.uav(u), probe)?;
        let loss = path_loss(victim_link.distance(), wavelength)?;
        let k_u = scenario.users(u).len() as f64;
        let omega = rotations.angle(u);
        let mut cell_sum = 0.0;
        for served in scenario.users(u) {
            let target_link = link_geometry(scenario.uav(u), served)?;
            cell_sum += rotated_gain(&target_link, &victim_link, m, omega)?;
        }
        total += power / (k_u * loss) * cell_sum;
    }
    Ok(total)
}

/// Inter-cell interference power at GU `user` of `cell`, in watts.
pub fn interference_power(
    scenario: &Scenario,
    cell: usize,
    user: usize,
    rotations: &RotationVector,
) -> Result<f64> {
    scenario.check_indices(cell, user)?;
    interference_power_at(scenario, cell, &scenario.users(cell)[user], rotations)
}

/// Linear SINR of one GU: (P / L_serving) / (interference + σ_n²).
pub fn sinr(
    scenario: &Scenario,
    cell: usize,
    user: usize,
    rotations: &RotationVector,
) -> Result<f64> {
    scenario.check_indices(cell, user)?;
    let serving: LinkGeometry = link_geometry(scenario.uav(cell), &scenario.users(cell)[user])?;
    let loss = path_loss(serving.distance(), scenario.radio().wavelength_m())?;
    let interference = interference_power(scenario, cell, user, rotations)?;
    let signal = scenario.radio().power_w() / loss;
    Ok(signal / (interference + scenario.radio().noise_power_w()))
}

/// Evaluates the whole system at one rotation vector.
pub fn sum_rate(scenario: &Scenario, rotations: &RotationVector) -> Result<RateReport> {
    if rotations.len() != scenario.num_cells() {
        return Err(Error::InvalidParameter(format!(
            "rotation vector has {} entries for {} cells",
            rotations.len(),
            scenario.num_cells()
        )));
    }
    let mut sinr_table = Vec::with_capacity(scenario.num_cells());
    let mut rate_table = Vec::with_capacity(scenario.num_cells());
    let mut cell_rate = Vec::with_capacity(scenario.num_cells());
    let mut total = 0.0;
    for c in 0..scenario.num_cells() {
        let mut cell_sinr = Vec::with_capacity(scenario.users(c).len());
        let mut cell_rates = Vec::with_capacity(scenario.users(c).len());
        let mut cell_sum = 0.0;
        for k in 0..scenario.users(c).len() {
            let s = sinr(scenario, c, k, rotations)?;
            let r = (1.0 + s).log2();
            cell_sinr.push(s);
            cell_rates.push(r);
            cell_sum += r;
        }
        sinr_table.push(cell_sinr);
        rate_table.push(cell_rates);
        cell_rate.push(cell_sum);
        total += cell_sum;
    }
    let users = scenario.num_users() as f64;
    Ok(RateReport {
        sinr: sinr_table,
        rate: rate_table,
        cell_rate,
        sum_rate: total,
        avg_rate: total / users,
        rotations: rotations.clone(),
    })
}
