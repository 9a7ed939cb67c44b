//! MRT beam weights and the interference beam gain between two ground points
//! served/overheard by the same UAV.
//!
//! The gain of an M×M half-wavelength array factors into a horizontal and a
//! vertical Fejér-kernel term, each driven only by the difference of the
//! corresponding direction cosines. `gain_closed_form` evaluates that product
//! directly; `gain_bruteforce` rebuilds both channel vectors and takes the
//! squared inner product, serving as the independent oracle for the closed
//! form. Both are normalized so the serving gain is exactly 1.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::channel::{channel, path_loss, ArrayConfig, ChannelVector, RadioConfig};
use crate::error::{Error, Result};
use crate::geometry::{link_geometry, rotate, GridSpec, LinkGeometry, Position3D};

/// Below this |sin(ΔΩ/2)| the Fejér ratio is evaluated by its limit (1).
const SIN_HALF_GUARD: f64 = 1e-9;

/// Unit-norm MRT beamforming weights (conjugate of the serving channel).
#[derive(Debug, Clone, PartialEq)]
pub struct BeamWeights {
    weights: Vec<Complex64>,
}

impl BeamWeights {
    pub fn weights(&self) -> &[Complex64] {
        &self.weights
    }

    pub fn norm(&self) -> f64 {
        self.weights.iter().map(|w| w.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// One sampled ground point of a projected beam pattern.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GainSample {
    pub position: Position3D,
    /// Beam gain in [0, 1].
    pub gain: f64,
    /// Received power P·g/L in watts, when a radio config was supplied.
    pub rx_power_w: Option<f64>,
}

/// MRT weights for a serving channel: f = hᴴ, so |h·f|² = ‖h‖⁴ = 1.
pub fn mrt_weights(serving: &ChannelVector) -> BeamWeights {
    BeamWeights {
        weights: serving.coefficients().iter().map(|c| c.conj()).collect(),
    }
}

/// Beamforming power gain |h·f|² of a channel under given weights.
pub fn beam_gain(channel: &ChannelVector, weights: &BeamWeights) -> f64 {
    let acc: Complex64 = channel
        .coefficients()
        .iter()
        .zip(weights.weights())
        .map(|(h, w)| h * w)
        .sum();
    acc.norm_sqr()
}

/// One Fejér factor sin²(M·ΔΩ/2) / (M²·sin²(ΔΩ/2)).
///
/// The singularities at ΔΩ ≡ 0 (mod 2π) are removable with limit 1; the
/// guard keeps them from producing NaN.
fn fejer_factor(m: usize, delta_omega: f64) -> f64 {
    let half = 0.5 * delta_omega;
    let s = half.sin();
    if s.abs() < SIN_HALF_GUARD {
        return 1.0;
    }
    let m_f = m as f64;
    let num = (m_f * half).sin();
    ((num * num) / (m_f * m_f * s * s)).min(1.0)
}

/// Interference beam gain between two links of one UAV, in closed form.
///
/// `target` is the link toward the GU the beam is steered at (MRT), `victim`
/// the link toward the point overhearing it. Returns g = g_h·g_v with
/// ΔΩ = π·(cos_target − cos_victim) per axis.
pub fn gain_closed_form(
    target: &LinkGeometry,
    victim: &LinkGeometry,
    m: usize,
) -> Result<f64> {
    if m == 0 {
        return Err(Error::EmptyArray);
    }
    if !target.same_origin(victim) {
        return Err(Error::OriginMismatch);
    }
    let dh = PI * (target.horizontal_cosine() - victim.horizontal_cosine());
    let dv = PI * (target.vertical_cosine() - victim.vertical_cosine());
    Ok(fejer_factor(m, dh) * fejer_factor(m, dv))
}

/// Interference beam gain by explicit channel construction: |h_victim·h_targetᴴ|².
///
/// Independent oracle for [`gain_closed_form`]; the distance phases are
/// unit-modulus and cancel in the magnitude, so the wavelength is arbitrary.
pub fn gain_bruteforce(
    target: &LinkGeometry,
    victim: &LinkGeometry,
    m: usize,
) -> Result<f64> {
    if !target.same_origin(victim) {
        return Err(Error::OriginMismatch);
    }
    let array = ArrayConfig::new(m, 1.0)?;
    let target_channel = channel(target, &array)?;
    let victim_channel = channel(victim, &array)?;
    Ok(beam_gain(&victim_channel, &mrt_weights(&target_channel)))
}

/// Interference gain after rotating the UAV by ω: both links turn together.
pub fn rotated_gain(
    target: &LinkGeometry,
    victim: &LinkGeometry,
    m: usize,
    omega: f64,
) -> Result<f64> {
    gain_closed_form(&rotate(target, omega), &rotate(victim, omega), m)
}

/// Samples the rotated interference gain on a uniform ω grid over [0, π/2).
pub fn gain_vs_rotation_curve(
    target: &LinkGeometry,
    victim: &LinkGeometry,
    m: usize,
    samples: usize,
) -> Result<Vec<(f64, f64)>> {
    if samples < 2 {
        return Err(Error::TooFewSamples(samples));
    }
    let step = FRAC_PI_2 / samples as f64;
    (0..samples)
        .map(|i| {
            let omega = i as f64 * step;
            rotated_gain(target, victim, m, omega).map(|g| (omega, g))
        })
        .collect()
}

/// Projects the beam of a UAV steered at `target_gu` onto a ground grid.
///
/// Each grid point is treated as a probe victim of the rotated beam. With a
/// radio config the sample also carries the received power P·g/L(d).
pub fn ground_pattern(
    uav: &Position3D,
    target_gu: &Position3D,
    m: usize,
    omega: f64,
    grid: &GridSpec,
    radio: Option<&RadioConfig>,
) -> Result<Vec<GainSample>> {
    grid.validate()?;
    let target = link_geometry(uav, target_gu)?;
    let mut samples = Vec::with_capacity(grid.x_count() * grid.y_count());
    for point in grid.points() {
        let victim = link_geometry(uav, &point)?;
        let gain = rotated_gain(&target, &victim, m, omega)?;
        let rx_power_w = match radio {
            Some(r) => Some(
                r.power_w() * gain / path_loss(victim.distance(), r.wavelength_m())?,
            ),
            None => None,
        };
        samples.push(GainSample {
            position: point,
            gain,
            rx_power_w,
        });
    }
    Ok(samples)
}
