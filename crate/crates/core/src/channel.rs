//! LoS channel construction: half-wavelength steering vectors, the Kronecker
//! planar-array channel, free-space path loss, and the radio constants.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::LinkGeometry;

/// Speed of light in m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Square planar array of `M × M` elements at half-wavelength spacing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArrayConfig {
    elements_per_dim: usize,
    wavelength_m: f64,
}

impl ArrayConfig {
    pub fn new(elements_per_dim: usize, wavelength_m: f64) -> Result<Self> {
        if elements_per_dim == 0 {
            return Err(Error::EmptyArray);
        }
        if wavelength_m.is_nan() || wavelength_m <= 0.0 {
            return Err(Error::InvalidWavelength(wavelength_m));
        }
        Ok(Self {
            elements_per_dim,
            wavelength_m,
        })
    }

    /// Elements per dimension M; the array has M² elements in total.
    pub fn elements_per_dim(&self) -> usize {
        self.elements_per_dim
    }

    pub fn total_elements(&self) -> usize {
        self.elements_per_dim * self.elements_per_dim
    }

    pub fn wavelength_m(&self) -> f64 {
        self.wavelength_m
    }
}

/// Transmit power, noise, and carrier constants.
///
/// Power is configured in dBm and the noise floor in dBm/Hz spectral density;
/// both are exposed in watts. The carrier frequency fixes the wavelength used
/// for steering and path loss.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadioConfig {
    pub power_dbm: f64,
    pub bandwidth_hz: f64,
    pub noise_psd_dbm_hz: f64,
    pub carrier_hz: f64,
}

impl RadioConfig {
    pub fn new(
        power_dbm: f64,
        bandwidth_hz: f64,
        noise_psd_dbm_hz: f64,
        carrier_hz: f64,
    ) -> Result<Self> {
        if bandwidth_hz.is_nan() || bandwidth_hz <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "bandwidth must be positive, got {bandwidth_hz} Hz"
            )));
        }
        if carrier_hz.is_nan() || carrier_hz <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "carrier frequency must be positive, got {carrier_hz} Hz"
            )));
        }
        if !power_dbm.is_finite() || !noise_psd_dbm_hz.is_finite() {
            return Err(Error::InvalidParameter(
                "power and noise PSD must be finite".into(),
            ));
        }
        Ok(Self {
            power_dbm,
            bandwidth_hz,
            noise_psd_dbm_hz,
            carrier_hz,
        })
    }

    /// Transmit power in watts.
    pub fn power_w(&self) -> f64 {
        dbm_to_watts(self.power_dbm)
    }

    /// Integrated noise power in watts: PSD + 10·log10(bandwidth).
    pub fn noise_power_w(&self) -> f64 {
        dbm_to_watts(self.noise_psd_dbm_hz + 10.0 * self.bandwidth_hz.log10())
    }

    pub fn wavelength_m(&self) -> f64 {
        SPEED_OF_LIGHT / self.carrier_hz
    }

    /// Same radio with a different transmit power, for power sweeps.
    pub fn with_power_dbm(&self, power_dbm: f64) -> Self {
        Self { power_dbm, ..*self }
    }
}

pub fn dbm_to_watts(dbm: f64) -> f64 {
    10f64.powf((dbm - 30.0) / 10.0)
}

pub fn watts_to_dbm(watts: f64) -> f64 {
    10.0 * watts.log10() + 30.0
}

/// Unit-norm LoS channel of a UAV → ground-point link.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelVector {
    coefficients: Vec<Complex64>,
    phase: Complex64,
}

impl ChannelVector {
    /// The M² complex coefficients, horizontal axis major.
    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    /// The unit-modulus distance phase a_k = exp(−j·2π·d/λ).
    pub fn phase(&self) -> Complex64 {
        self.phase
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn norm(&self) -> f64 {
        self.coefficients
            .iter()
            .map(|c| c.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

/// 1/√M-normalized steering vector of a half-wavelength uniform linear array.
///
/// Element k is `(1/√M)·exp(j·k·π·cos)` for the given direction cosine.
pub fn steering_1d(m: usize, direction_cosine: f64) -> Result<Vec<Complex64>> {
    if m == 0 {
        return Err(Error::EmptyArray);
    }
    if !(-1.0..=1.0).contains(&direction_cosine) {
        return Err(Error::DirectionCosineOutOfRange(direction_cosine));
    }
    let amplitude = 1.0 / (m as f64).sqrt();
    Ok((0..m)
        .map(|k| Complex64::from_polar(amplitude, k as f64 * PI * direction_cosine))
        .collect())
}

/// Builds the planar-array channel for one link.
///
/// The horizontal axis sees direction cosine cos θ = cos φ_az · sin γ and the
/// vertical axis cos φ = sin φ_az · sin γ; the channel is the distance phase
/// times the Kronecker product ψ_h ⊗ ψ_v (horizontal factor major).
pub fn channel(geom: &LinkGeometry, array: &ArrayConfig) -> Result<ChannelVector> {
    let m = array.elements_per_dim();
    let horizontal = steering_1d(m, geom.horizontal_cosine())?;
    let vertical = steering_1d(m, geom.vertical_cosine())?;
    let phase = Complex64::from_polar(
        1.0,
        -2.0 * PI * geom.distance() / array.wavelength_m(),
    );
    let mut coefficients = Vec::with_capacity(m * m);
    for h in &horizontal {
        let scaled = phase * h;
        for v in &vertical {
            coefficients.push(scaled * v);
        }
    }
    Ok(ChannelVector {
        coefficients,
        phase,
    })
}

/// Free-space path loss `(4πd/λ)²`, as a linear power divisor.
pub fn path_loss(distance_m: f64, wavelength_m: f64) -> Result<f64> {
    if distance_m.is_nan() || distance_m <= 0.0 {
        return Err(Error::InvalidDistance(distance_m));
    }
    if wavelength_m.is_nan() || wavelength_m <= 0.0 {
        return Err(Error::InvalidWavelength(wavelength_m));
    }
    let ratio = 4.0 * PI * distance_m / wavelength_m;
    Ok(ratio * ratio)
}
