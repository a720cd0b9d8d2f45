//! Buoyancy and drag wrench on the board from the ocean surface.
//!
//! Buoyancy uses an Archimedes probe model: each probe carries a share of
//! the board's displaced volume and contributes an upward force scaled by
//! its submerged fraction. The fraction saturates smoothly over the probe's
//! characteristic height so the force stays continuous as probes cross the
//! surface; a hard step would alias into the cueing filter.

use serde::{Deserialize, Serialize};

use crate::body::RigidBodyState;
use crate::error::{Error, Result};
use crate::math::{smoothstep01, Vec3};
use crate::ocean::OceanConfig;

/// Water density and gravitational acceleration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Water {
    /// kg/m³
    pub rho: f64,
    /// m/s²
    pub gravity: f64,
}

impl Default for Water {
    fn default() -> Self {
        Self {
            rho: 1000.0,
            gravity: 9.81,
        }
    }
}

/// One buoyancy probe: body-frame position plus its share of displaced volume.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbePoint {
    pub position: Vec3,
    pub volume: f64,
}

/// Board hull model: probe layout, displaced volume, and drag coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoardGeometry {
    pub probe_points: Vec<ProbePoint>,
    /// Total displaced volume at full submersion, m³.
    pub total_volume: f64,
    /// Height over which a probe's submerged fraction saturates, m.
    pub probe_height: f64,
    /// Linear drag per body axis, N·s/m.
    pub drag_linear: Vec3,
    /// Quadratic drag per body axis, N·s²/m².
    pub drag_quadratic: Vec3,
    /// Rotational damping, N·m·s/rad.
    pub angular_drag: f64,
}

impl Default for BoardGeometry {
    fn default() -> Self {
        // 3x2 probe grid over a 2.2 m x 0.6 m board. Volume sized so the
        // loaded 150 kg board floats ~60% submerged.
        Self::grid(2.2, 0.6, 3, 2, 0.25, 0.05)
    }
}

impl BoardGeometry {
    /// Probe grid at cell centers of a `rows` (longitudinal) by `cols`
    /// (lateral) subdivision of the deck, volume split evenly.
    pub fn grid(
        length: f64,
        width: f64,
        rows: usize,
        cols: usize,
        total_volume: f64,
        probe_height: f64,
    ) -> Self {
        let n = rows * cols;
        let volume = total_volume / n as f64;
        let mut probe_points = Vec::with_capacity(n);
        for i in 0..rows {
            for j in 0..cols {
                let z = length * ((i as f64 + 0.5) / rows as f64 - 0.5);
                let x = width * ((j as f64 + 0.5) / cols as f64 - 0.5);
                probe_points.push(ProbePoint {
                    position: Vec3::new(x, 0.0, z),
                    volume,
                });
            }
        }
        Self {
            probe_points,
            total_volume,
            probe_height,
            drag_linear: Vec3::new(200.0, 3000.0, 15.0),
            drag_quadratic: Vec3::new(300.0, 500.0, 25.0),
            angular_drag: 400.0,
        }
    }

    /// Checks probe-volume bookkeeping and that the board can float `mass`.
    pub fn validate(&self, mass: f64, water: &Water) -> Result<()> {
        let sum: f64 = self.probe_points.iter().map(|p| p.volume).sum();
        if (sum - self.total_volume).abs() > 1e-9 {
            return Err(Error::Config(format!(
                "probe volumes sum to {sum}, total_volume is {}",
                self.total_volume
            )));
        }
        if self.probe_height <= 0.0 {
            return Err(Error::Config("board.probe_height must be > 0".into()));
        }
        if water.rho * self.total_volume <= mass {
            return Err(Error::Config(format!(
                "board cannot float: rho*volume = {} kg <= mass = {mass} kg",
                water.rho * self.total_volume
            )));
        }
        if !(self.drag_linear.x >= 0.0 && self.drag_linear.y >= 0.0 && self.drag_linear.z >= 0.0) {
            return Err(Error::Config(
                "board.drag_linear components must be >= 0".into(),
            ));
        }
        if !(self.drag_quadratic.x >= 0.0
            && self.drag_quadratic.y >= 0.0
            && self.drag_quadratic.z >= 0.0)
        {
            return Err(Error::Config(
                "board.drag_quadratic components must be >= 0".into(),
            ));
        }
        if self.angular_drag < 0.0 {
            return Err(Error::Config("board.angular_drag must be >= 0".into()));
        }
        Ok(())
    }

    fn probe_fraction(&self, depth: f64) -> f64 {
        smoothstep01(depth / self.probe_height + 0.5)
    }

    /// Volume-weighted submerged fraction in [0, 1].
    pub fn submerged_fraction(&self, state: &RigidBodyState, ocean: &OceanConfig, t: f64) -> f64 {
        let mut submerged = 0.0;
        for probe in &self.probe_points {
            let world = state.position + state.orientation.rotate(probe.position);
            let depth = ocean.height_at(world.x, world.z, t) - world.y;
            submerged += probe.volume * self.probe_fraction(depth);
        }
        submerged / self.total_volume
    }

    /// True when at least one probe touches water.
    pub fn any_probe_submerged(&self, state: &RigidBodyState, ocean: &OceanConfig, t: f64) -> bool {
        self.probe_points.iter().any(|probe| {
            let world = state.position + state.orientation.rotate(probe.position);
            let depth = ocean.height_at(world.x, world.z, t) - world.y;
            self.probe_fraction(depth) > 0.0
        })
    }

    /// Board heave at which a level board floats in static equilibrium on
    /// flat water, found by bisecting the probe saturation curve.
    pub fn equilibrium_heave(&self, mass: f64, water: &Water) -> f64 {
        let target = mass / (water.rho * self.total_volume);
        let h = self.probe_height;
        let (mut lo, mut hi) = (-h / 2.0, h / 2.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if self.probe_fraction(mid) < target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        // Probes sit at body y = 0, so board y = -equilibrium depth.
        -0.5 * (lo + hi)
    }
}

/// Archimedes wrench from the probe model. A fully dry board gives zero.
pub fn buoyancy_wrench(
    geometry: &BoardGeometry,
    state: &RigidBodyState,
    ocean: &OceanConfig,
    water: &Water,
    t: f64,
) -> (Vec3, Vec3) {
    let mut force = Vec3::ZERO;
    let mut torque = Vec3::ZERO;
    for probe in &geometry.probe_points {
        let arm = state.orientation.rotate(probe.position);
        let world = state.position + arm;
        let depth = ocean.height_at(world.x, world.z, t) - world.y;
        let fraction = geometry.probe_fraction(depth);
        let probe_force = Vec3::Y * (water.rho * water.gravity * probe.volume * fraction);
        force += probe_force;
        torque += arm.cross(probe_force);
    }
    (force, torque)
}

/// Hydrodynamic resistance: per-axis linear-plus-quadratic drag on the
/// velocity relative to the local surface, evaluated in the body frame,
/// plus rotational damping. Applies only while at least one probe is wet.
pub fn drag_wrench(
    geometry: &BoardGeometry,
    state: &RigidBodyState,
    ocean: &OceanConfig,
    t: f64,
) -> (Vec3, Vec3) {
    if !geometry.any_probe_submerged(state, ocean, t) {
        return (Vec3::ZERO, Vec3::ZERO);
    }
    let surface_vel = ocean.surface_velocity_at(state.position.x, state.position.z, t);
    let rel_world = state.linear_velocity - surface_vel;
    let rel_body = state.orientation.rotate_inv(rel_world);
    let speed = rel_body.norm();
    let force_body = Vec3::new(
        -(geometry.drag_linear.x + geometry.drag_quadratic.x * speed) * rel_body.x,
        -(geometry.drag_linear.y + geometry.drag_quadratic.y * speed) * rel_body.y,
        -(geometry.drag_linear.z + geometry.drag_quadratic.z * speed) * rel_body.z,
    );
    let torque = state.angular_velocity * -geometry.angular_drag;
    (state.orientation.rotate(force_body), torque)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::body::{integrate_position, integrate_velocity};
    use crate::ocean::{spectrum_sample, OceanPreset};
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn board() -> BoardGeometry {
        BoardGeometry::default()
    }

    fn flat() -> OceanConfig {
        OceanConfig::flat()
    }

    /// Free-float step: gravity + buoyancy + drag, semi-implicit.
    fn float_step(
        geometry: &BoardGeometry,
        water: &Water,
        ocean: &OceanConfig,
        state: &RigidBodyState,
        t: f64,
        dt: f64,
    ) -> RigidBodyState {
        let (bf, bt) = buoyancy_wrench(geometry, state, ocean, water, t);
        let (df, dtq) = drag_wrench(geometry, state, ocean, t);
        let gravity = Vec3::new(0.0, -state.mass * water.gravity, 0.0);
        let kicked = integrate_velocity(state, bf + df + gravity, bt + dtq, dt).unwrap();
        integrate_position(&kicked, dt).unwrap()
    }

    #[test]
    fn dry_board_zero_wrench() {
        let mut state = RigidBodyState::default();
        state.position.y = 10.0;
        let (f, tq) = buoyancy_wrench(&board(), &state, &flat(), &Water::default(), 0.0);
        assert_eq!(f, Vec3::ZERO);
        assert_eq!(tq, Vec3::ZERO);
        let (df, dtq) = drag_wrench(&board(), &state, &flat(), 0.0);
        assert_eq!(df, Vec3::ZERO);
        assert_eq!(dtq, Vec3::ZERO);
    }

    #[test]
    fn fully_submerged_matches_archimedes() {
        let geometry = board();
        let water = Water::default();
        let mut state = RigidBodyState::default();
        state.position.y = -5.0;
        let (f, _) = buoyancy_wrench(&geometry, &state, &flat(), &water, 0.0);
        let expected = water.rho * water.gravity * geometry.total_volume;
        assert_relative_eq!(f.y, expected, max_relative = 1e-6);
    }

    #[test]
    fn symmetric_layout_level_board_zero_torque() {
        let geometry = board();
        let state = RigidBodyState::default();
        let (_, tq) = buoyancy_wrench(&geometry, &state, &flat(), &Water::default(), 0.0);
        assert!(tq.norm() < 1e-9);
    }

    #[test]
    fn rest_on_still_water_zero_drag() {
        let geometry = board();
        let state = RigidBodyState::default();
        let (f, tq) = drag_wrench(&geometry, &state, &flat(), 0.0);
        assert_eq!(f, Vec3::ZERO);
        assert_eq!(tq, Vec3::ZERO);
    }

    #[test]
    fn drag_opposes_relative_velocity() {
        let geometry = board();
        let ocean = spectrum_sample(3, OceanPreset::Ripples, 8);
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..10_000 {
            let mut state = RigidBodyState {
                position: Vec3::new(
                    rng.gen_range(-20.0..20.0),
                    rng.gen_range(-0.2..0.05),
                    rng.gen_range(-20.0..20.0),
                ),
                ..RigidBodyState::default()
            };
            state.linear_velocity = Vec3::new(
                rng.gen_range(-10.0..10.0),
                rng.gen_range(-3.0..3.0),
                rng.gen_range(-10.0..10.0),
            );
            state.orientation = crate::math::Quat::from_axis_angle(
                Vec3::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), 1.0),
                rng.gen_range(-0.5..0.5),
            );
            let t = rng.gen_range(0.0..20.0);
            let (f, _) = drag_wrench(&geometry, &state, &ocean, t);
            let rel = state.linear_velocity
                - ocean.surface_velocity_at(state.position.x, state.position.z, t);
            assert!(f.dot(rel) <= 1e-12);
        }
    }

    #[test]
    fn terminal_speed_matches_quadratic_root() {
        // Constant thrust along +z on a floating board: terminal speed solves
        // F = d1*v + d2*v^2.
        let geometry = board();
        let water = Water::default();
        let ocean = flat();
        let thrust = 500.0;
        let (d1, d2) = (geometry.drag_linear.z, geometry.drag_quadratic.z);
        let expected = (-d1 + (d1 * d1 + 4.0 * d2 * thrust).sqrt()) / (2.0 * d2);

        let mut state = RigidBodyState::default();
        state.position.y = geometry.equilibrium_heave(state.mass, &water);
        let dt = 0.01;
        for k in 0..6000 {
            let t = k as f64 * dt;
            let (bf, bt) = buoyancy_wrench(&geometry, &state, &ocean, &water, t);
            let (df, dtq) = drag_wrench(&geometry, &state, &ocean, t);
            let gravity = Vec3::new(0.0, -state.mass * water.gravity, 0.0);
            let force = bf + df + gravity + Vec3::new(0.0, 0.0, thrust);
            let kicked = integrate_velocity(&state, force, bt + dtq, dt).unwrap();
            state = integrate_position(&kicked, dt).unwrap();
        }
        assert!((state.linear_velocity.z - expected).abs() / expected < 0.01);
    }

    #[test]
    fn free_float_settles_to_archimedes_fraction() {
        let geometry = board();
        let water = Water::default();
        let ocean = flat();
        let mut state = RigidBodyState::default();
        let dt = 0.01;
        for k in 0..3000 {
            state = float_step(&geometry, &water, &ocean, &state, k as f64 * dt, dt);
        }
        let target = state.mass / (water.rho * geometry.total_volume);
        let fraction = geometry.submerged_fraction(&state, &ocean, 30.0);
        assert!(
            (fraction - target).abs() < 1e-3,
            "fraction {fraction} vs {target}"
        );

        let (bf, _) = buoyancy_wrench(&geometry, &state, &ocean, &water, 30.0);
        let net = bf + Vec3::new(0.0, -state.mass * water.gravity, 0.0);
        assert!(net.norm() < 1e-3, "residual force {}", net.norm());
    }

    #[test]
    fn static_equilibrium_stays_level() {
        let geometry = board();
        let water = Water::default();
        let ocean = flat();
        let mut state = RigidBodyState::default();
        state.position.y = geometry.equilibrium_heave(state.mass, &water);
        for k in 0..3000 {
            state = float_step(&geometry, &water, &ocean, &state, k as f64 * 0.01, 0.01);
        }
        let axes = state.axes();
        let pitch = axes.forward.y.atan2(axes.forward.z).abs();
        let roll = axes.right.y.atan2(axes.right.x).abs();
        assert!(pitch.to_degrees() < 0.1);
        assert!(roll.to_degrees() < 0.1);
    }

    #[test]
    fn ripples_rock_the_board() {
        let geometry = board();
        let water = Water::default();
        let run = |ocean: &OceanConfig| {
            let mut state = RigidBodyState::default();
            state.position.y = geometry.equilibrium_heave(state.mass, &water);
            let mut heave = Vec::new();
            let mut pitch = Vec::new();
            let mut roll = Vec::new();
            for k in 0..3000 {
                state = float_step(&geometry, &water, ocean, &state, k as f64 * 0.01, 0.01);
                let axes = state.axes();
                heave.push(state.position.y);
                pitch.push(axes.forward.y.atan2(axes.forward.z));
                roll.push(axes.right.y.atan2(axes.right.x));
            }
            let rms = |xs: &[f64]| {
                let mean = xs.iter().sum::<f64>() / xs.len() as f64;
                (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / xs.len() as f64).sqrt()
            };
            (rms(&heave), rms(&pitch), rms(&roll))
        };
        let calm = run(&flat());
        let rippled = run(&spectrum_sample(42, OceanPreset::Ripples, 8));
        assert!(rippled.0 > calm.0);
        assert!(rippled.1 > calm.1);
        assert!(rippled.2 > calm.2);
    }

    #[test]
    fn probe_volumes_validated() {
        let geometry = board();
        assert!(geometry.validate(150.0, &Water::default()).is_ok());
        let mut heavy = geometry.clone();
        heavy.total_volume = 0.1;
        heavy
            .probe_points
            .iter_mut()
            .for_each(|p| p.volume = 0.1 / 6.0);
        assert!(heavy.validate(150.0, &Water::default()).is_err());
    }
}
