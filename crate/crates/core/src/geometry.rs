//! Coordinate bookkeeping between UAVs and ground points: distances, azimuth
//! and pitch angles, and the yaw-rotation transform applied to link geometry.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const TAU: f64 = 2.0 * PI;

/// A point in the ground-anchored Cartesian frame, in meters.
///
/// The ground is the z = 0 plane; UAVs fly at z > 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Position3D {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Position3D {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    /// A point on the ground plane.
    pub const fn ground(x: f64, y: f64) -> Self {
        Self { x, y, z: 0.0 }
    }

    pub fn distance_to(&self, other: &Position3D) -> f64 {
        let dx = other.x - self.x;
        let dy = other.y - self.y;
        let dz = other.z - self.z;
        (dx * dx + dy * dy + dz * dz).sqrt()
    }
}

/// Relative geometry of one UAV → ground-point link.
///
/// Stores the slant distance `d`, the azimuth of the ground point seen from
/// the UAV's ground projection (measured from the +x axis, in [0, 2π)), and
/// the pitch `γ` off the downward vertical (γ = 0 means directly beneath the
/// UAV). The angles `α` (to the x axis) and `β` (to the y axis) used by the
/// gain expressions are derived: cos α = cos φ_az and cos β = sin φ_az, which
/// reproduces the single-quadrant α + β = π/2 relation in every quadrant.
///
/// The UAV position is retained so that gain computations can reject pairs of
/// geometries taken from different UAVs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkGeometry {
    origin: Position3D,
    distance: f64,
    azimuth: f64,
    pitch: f64,
}

impl LinkGeometry {
    /// Slant distance in meters. Always ≥ the UAV altitude.
    pub fn distance(&self) -> f64 {
        self.distance
    }

    /// Azimuth φ_az in [0, 2π).
    pub fn azimuth(&self) -> f64 {
        self.azimuth
    }

    /// Pitch γ in [0, π/2); 0 iff the ground point is directly beneath.
    pub fn pitch(&self) -> f64 {
        self.pitch
    }

    /// UAV position this geometry was derived from.
    pub fn origin(&self) -> Position3D {
        self.origin
    }

    /// cos α, the direction cosine toward the x axis.
    pub fn cos_alpha(&self) -> f64 {
        self.azimuth.cos()
    }

    /// cos β, the direction cosine toward the y axis.
    pub fn cos_beta(&self) -> f64 {
        self.azimuth.sin()
    }

    /// Direction cosine cos θ = cos α · sin γ driving the horizontal array axis.
    pub fn horizontal_cosine(&self) -> f64 {
        self.cos_alpha() * self.pitch.sin()
    }

    /// Direction cosine cos φ = cos β · sin γ driving the vertical array axis.
    pub fn vertical_cosine(&self) -> f64 {
        self.cos_beta() * self.pitch.sin()
    }

    /// True when both geometries were derived from the same UAV position.
    pub fn same_origin(&self, other: &LinkGeometry) -> bool {
        self.origin == other.origin
    }
}

/// One yaw rotation angle ω per UAV, indexed by cell.
///
/// The optimizer confines entries to the canonical interval [0, π/2) — the
/// square array's pattern repeats every quarter turn — but any finite angle
/// is accepted for evaluation so that the quarter-turn equivalence itself can
/// be exercised.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RotationVector(Vec<f64>);

impl RotationVector {
    pub fn new(angles: Vec<f64>) -> Result<Self> {
        if let Some(bad) = angles.iter().find(|a| !a.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "rotation angle must be finite, got {bad}"
            )));
        }
        Ok(Self(angles))
    }

    /// The all-zero rotation (fixed orientation baseline).
    pub fn zeros(n: usize) -> Self {
        Self(vec![0.0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn angle(&self, cell: usize) -> f64 {
        self.0[cell]
    }

    pub fn set_angle(&mut self, cell: usize, omega: f64) {
        self.0[cell] = omega;
    }

    pub fn angles(&self) -> &[f64] {
        &self.0
    }

    /// Elementwise shift, used by the quarter-turn equivalence checks.
    pub fn shifted(&self, offset: f64) -> Self {
        Self(self.0.iter().map(|w| w + offset).collect())
    }

    /// True when every entry lies in the canonical interval [0, π/2).
    pub fn is_canonical(&self) -> bool {
        self.0.iter().all(|&w| (0.0..FRAC_PI_2).contains(&w))
    }
}

/// A rectangular ground-plane sampling grid.
///
/// Points run x-fastest within rows of constant y; rows run from `y_min`
/// upward. Both endpoints are included when the span is a multiple of `step_m`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub step_m: f64,
}

impl GridSpec {
    pub fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64, step_m: f64) -> Result<Self> {
        let grid = Self {
            x_min,
            x_max,
            y_min,
            y_max,
            step_m,
        };
        grid.validate()?;
        Ok(grid)
    }

    pub fn validate(&self) -> Result<()> {
        if self.step_m.is_nan() || self.step_m <= 0.0 || self.x_max < self.x_min || self.y_max < self.y_min {
            return Err(Error::EmptyGrid);
        }
        Ok(())
    }

    fn count(span: f64, step: f64) -> usize {
        (span / step + 1e-9).floor() as usize + 1
    }

    pub fn x_count(&self) -> usize {
        Self::count(self.x_max - self.x_min, self.step_m)
    }

    pub fn y_count(&self) -> usize {
        Self::count(self.y_max - self.y_min, self.step_m)
    }

    /// Ground points in row-major order (x fastest).
    pub fn points(&self) -> impl Iterator<Item = Position3D> + '_ {
        let nx = self.x_count();
        let ny = self.y_count();
        (0..ny).flat_map(move |j| {
            (0..nx).map(move |i| {
                Position3D::ground(
                    self.x_min + i as f64 * self.step_m,
                    self.y_min + j as f64 * self.step_m,
                )
            })
        })
    }
}

/// Computes the link geometry from a UAV to a ground point.
///
/// `d = √(Δx² + Δy² + z_u²)` with Δ taken ground-point minus UAV,
/// `φ_az = atan2(Δy, Δx)` mapped into [0, 2π), and `γ = arccos(z_u / d)`.
/// A ground point exactly beneath the UAV gets φ_az = 0 by convention.
pub fn link_geometry(uav: &Position3D, gu: &Position3D) -> Result<LinkGeometry> {
    if uav.z <= 0.0 {
        return Err(Error::InvalidUavAltitude(uav.z));
    }
    if gu.z != 0.0 {
        return Err(Error::NonGroundUser(gu.z));
    }
    let dx = gu.x - uav.x;
    let dy = gu.y - uav.y;
    let distance = (dx * dx + dy * dy + uav.z * uav.z).sqrt();
    let azimuth = if dx == 0.0 && dy == 0.0 {
        0.0
    } else {
        wrap_angle(dy.atan2(dx))
    };
    let pitch = (uav.z / distance).clamp(-1.0, 1.0).acos();
    Ok(LinkGeometry {
        origin: *uav,
        distance,
        azimuth,
        pitch,
    })
}

/// Applies a counterclockwise UAV yaw of `omega` radians to a link geometry.
///
/// Only the azimuth moves: φ_az' = (φ_az + ω) mod 2π. Distance and pitch are
/// invariant under rotation about the vertical axis.
pub fn rotate(geom: &LinkGeometry, omega: f64) -> LinkGeometry {
    LinkGeometry {
        origin: geom.origin,
        distance: geom.distance,
        azimuth: wrap_angle(geom.azimuth + omega),
        pitch: geom.pitch,
    }
}

fn wrap_angle(angle: f64) -> f64 {
    let wrapped = angle.rem_euclid(TAU);
    // rem_euclid can return exactly 2π for tiny negative inputs.
    if wrapped >= TAU {
        wrapped - TAU
    } else {
        wrapped
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::FRAC_PI_4;

    fn approx(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn diagonal_link() {
        let g = link_geometry(
            &Position3D::new(0.0, 0.0, 200.0),
            &Position3D::ground(100.0, 100.0),
        )
        .unwrap();
        assert!(approx(g.distance(), 244.94897427831781, 1e-9));
        assert!(approx(g.azimuth(), FRAC_PI_4, 1e-12));
        assert!(approx(g.pitch(), 0.6154797086703873, 1e-12));
    }

    #[test]
    fn point_directly_below() {
        let g = link_geometry(
            &Position3D::new(0.0, 0.0, 200.0),
            &Position3D::ground(0.0, 0.0),
        )
        .unwrap();
        assert_eq!(g.distance(), 200.0);
        assert_eq!(g.pitch(), 0.0);
        assert_eq!(g.azimuth(), 0.0);
    }

    #[test]
    fn point_on_x_axis() {
        let g = link_geometry(
            &Position3D::new(0.0, 0.0, 200.0),
            &Position3D::ground(50.0, 0.0),
        )
        .unwrap();
        assert_eq!(g.azimuth(), 0.0);
        assert!(approx(g.cos_alpha(), 1.0, 1e-15)); // α = 0
        assert!(approx(g.cos_beta(), 0.0, 1e-15)); // β = π/2
    }

    #[test]
    fn rejects_grounded_uav_and_airborne_gu() {
        let gu = Position3D::ground(1.0, 1.0);
        assert_eq!(
            link_geometry(&Position3D::new(0.0, 0.0, 0.0), &gu),
            Err(Error::InvalidUavAltitude(0.0))
        );
        assert_eq!(
            link_geometry(&Position3D::new(0.0, 0.0, -5.0), &gu),
            Err(Error::InvalidUavAltitude(-5.0))
        );
        assert_eq!(
            link_geometry(
                &Position3D::new(0.0, 0.0, 100.0),
                &Position3D::new(1.0, 1.0, 3.0)
            ),
            Err(Error::NonGroundUser(3.0))
        );
    }

    #[test]
    fn rotation_identity_and_additivity() {
        let g = link_geometry(
            &Position3D::new(0.0, 0.0, 200.0),
            &Position3D::ground(100.0, 100.0),
        )
        .unwrap();
        let same = rotate(&g, 0.0);
        assert_eq!(same, g);

        let r = rotate(&g, PI / 8.0);
        assert!(approx(r.azimuth(), 3.0 * PI / 8.0, 1e-12));
        assert_eq!(r.pitch(), g.pitch());
        assert_eq!(r.distance(), g.distance());

        let full = rotate(&g, TAU);
        assert!(approx(full.azimuth(), g.azimuth(), 1e-12));
    }

    #[test]
    fn rotation_composes() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let uav = Position3D::new(
                rng.random_range(-500.0..500.0),
                rng.random_range(-500.0..500.0),
                rng.random_range(50.0..400.0),
            );
            let gu = Position3D::ground(
                rng.random_range(-800.0..800.0),
                rng.random_range(-800.0..800.0),
            );
            let g = link_geometry(&uav, &gu).unwrap();
            let a = rng.random_range(-10.0..10.0);
            let b = rng.random_range(-10.0..10.0);
            let two_step = rotate(&rotate(&g, a), b);
            let one_step = rotate(&g, a + b);
            let diff = (two_step.azimuth() - one_step.azimuth()).abs();
            let circular = diff.min(TAU - diff);
            assert!(circular < 1e-12, "composition drift {circular}");
            assert_eq!(two_step.distance(), g.distance());
            assert_eq!(two_step.pitch(), g.pitch());
        }
    }

    #[test]
    fn translation_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let uav = Position3D::new(
                rng.random_range(-500.0..500.0),
                rng.random_range(-500.0..500.0),
                rng.random_range(50.0..400.0),
            );
            let gu = Position3D::ground(
                rng.random_range(-800.0..800.0),
                rng.random_range(-800.0..800.0),
            );
            let (sx, sy) = (rng.random_range(-1e4..1e4), rng.random_range(-1e4..1e4));
            let g = link_geometry(&uav, &gu).unwrap();
            let shifted = link_geometry(
                &Position3D::new(uav.x + sx, uav.y + sy, uav.z),
                &Position3D::ground(gu.x + sx, gu.y + sy),
            )
            .unwrap();
            assert!(approx(g.distance(), shifted.distance(), 1e-12 * g.distance().max(1.0)));
            assert!(approx(g.azimuth(), shifted.azimuth(), 1e-9));
            assert!(approx(g.pitch(), shifted.pitch(), 1e-12));
        }
    }

    #[test]
    fn direction_cosines_are_a_unit_vector() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..500 {
            let uav = Position3D::new(0.0, 0.0, rng.random_range(50.0..400.0));
            let gu = Position3D::ground(
                rng.random_range(-800.0..800.0),
                rng.random_range(-800.0..800.0),
            );
            let g = link_geometry(&uav, &gu).unwrap();
            let sum = g.cos_alpha().powi(2) + g.cos_beta().powi(2);
            assert!(approx(sum, 1.0, 1e-12));
            assert!(g.distance() >= uav.z);
            assert!((0.0..FRAC_PI_2).contains(&g.pitch()));
            assert!((0.0..TAU).contains(&g.azimuth()));
        }
    }

    #[test]
    fn rotation_vector_basics() {
        let v = RotationVector::new(vec![0.1, 0.2, 0.3]).unwrap();
        assert!(v.is_canonical());
        assert!(!v.shifted(FRAC_PI_2).is_canonical());
        assert_eq!(RotationVector::zeros(3).angles(), &[0.0, 0.0, 0.0]);
        assert!(RotationVector::new(vec![f64::NAN]).is_err());
    }
}
