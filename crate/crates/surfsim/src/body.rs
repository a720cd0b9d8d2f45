//! Rigid-body state, frame transforms, and fixed-step integration.
//!
//! Integration is semi-implicit Euler: velocities are updated from the
//! applied wrench first, then positions from the *new* velocities. The
//! orientation step uses the quaternion exponential map and renormalizes,
//! so the unit-norm invariant holds over arbitrarily long runs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::math::{Quat, Vec3};

/// Pose, velocities, and mass properties of the simulated board+rider body.
///
/// Position and velocities are world-frame; `inertia_diag` is the diagonal
/// of the inertia tensor in the body frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RigidBodyState {
    pub position: Vec3,
    pub orientation: Quat,
    pub linear_velocity: Vec3,
    pub angular_velocity: Vec3,
    pub mass: f64,
    pub inertia_diag: Vec3,
}

impl Default for RigidBodyState {
    fn default() -> Self {
        // Combined rider+board mass is standardized to 150 kg; inertia
        // approximates a 2.2 m x 0.6 m x 0.1 m slab of that mass.
        Self {
            position: Vec3::ZERO,
            orientation: Quat::IDENTITY,
            linear_velocity: Vec3::ZERO,
            angular_velocity: Vec3::ZERO,
            mass: 150.0,
            inertia_diag: Vec3::new(60.625, 65.0, 4.625),
        }
    }
}

impl RigidBodyState {
    /// Board axes expressed in the world frame.
    pub fn axes(&self) -> BodyAxes {
        BodyAxes {
            forward: self.orientation.rotate(Vec3::Z),
            right: self.orientation.rotate(Vec3::X),
            up: self.orientation.rotate(Vec3::Y),
        }
    }

    /// Heading angle in the horizontal plane, radians. Positive = nose right.
    pub fn heading(&self) -> f64 {
        let f = self.orientation.rotate(Vec3::Z);
        f.x.atan2(f.z)
    }

    pub fn is_finite(&self) -> bool {
        self.position.is_finite()
            && self.orientation.is_finite()
            && self.linear_velocity.is_finite()
            && self.angular_velocity.is_finite()
    }
}

/// Board basis vectors in world coordinates. Mutually orthogonal unit vectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BodyAxes {
    /// Board `+z` in world.
    pub forward: Vec3,
    /// Board `+x` in world.
    pub right: Vec3,
    /// Board `+y` in world.
    pub up: Vec3,
}

/// Transform a world-frame vector into the board's local frame.
pub fn world_to_body(state: &RigidBodyState, v: Vec3) -> Vec3 {
    state.orientation.rotate_inv(v)
}

/// Transform a board-frame vector into the world frame.
pub fn body_to_world(state: &RigidBodyState, v: Vec3) -> Vec3 {
    state.orientation.rotate(v)
}

/// Velocity half of the semi-implicit step: applies the wrench to the
/// linear and angular velocities, leaving pose untouched.
///
/// Angular dynamics solve Euler's equations in the body frame, including
/// the gyroscopic term `ω × (I ω)`.
pub fn integrate_velocity(
    state: &RigidBodyState,
    force: Vec3,
    torque: Vec3,
    dt: f64,
) -> Result<RigidBodyState> {
    if dt <= 0.0 || !dt.is_finite() {
        return Err(Error::InvalidTimestep { dt });
    }
    if !force.is_finite() {
        return Err(Error::NonFiniteInput { what: "force" });
    }
    if !torque.is_finite() {
        return Err(Error::NonFiniteInput { what: "torque" });
    }
    if !state.is_finite() {
        return Err(Error::NonFiniteInput { what: "state" });
    }

    let mut next = *state;
    next.linear_velocity += force * (dt / state.mass);

    let q = state.orientation;
    let inertia = state.inertia_diag;
    let omega_body = q.rotate_inv(state.angular_velocity);
    let torque_body = q.rotate_inv(torque);
    let momentum_body = omega_body.scale_axes(inertia);
    let ang_accel_body = Vec3::new(
        (torque_body.x - (omega_body.y * momentum_body.z - omega_body.z * momentum_body.y))
            / inertia.x,
        (torque_body.y - (omega_body.z * momentum_body.x - omega_body.x * momentum_body.z))
            / inertia.y,
        (torque_body.z - (omega_body.x * momentum_body.y - omega_body.y * momentum_body.x))
            / inertia.z,
    );
    next.angular_velocity = q.rotate(omega_body + ang_accel_body * dt);
    Ok(next)
}

/// Position half of the semi-implicit step: advances pose from the current
/// (already updated) velocities and renormalizes the orientation.
pub fn integrate_position(state: &RigidBodyState, dt: f64) -> Result<RigidBodyState> {
    if dt <= 0.0 || !dt.is_finite() {
        return Err(Error::InvalidTimestep { dt });
    }
    let mut next = *state;
    next.position += state.linear_velocity * dt;
    let dq = Quat::from_rotation_vector(state.angular_velocity * dt);
    next.orientation = (dq * state.orientation).normalized();
    Ok(next)
}

/// One full semi-implicit Euler step under the given world-frame wrench.
pub fn integrate_step(
    state: &RigidBodyState,
    force: Vec3,
    torque: Vec3,
    dt: f64,
) -> Result<RigidBodyState> {
    let kicked = integrate_velocity(state, force, torque, dt)?;
    integrate_position(&kicked, dt)
}

/// Backward finite difference `(v_now − v_prev) / dt`.
///
/// Used for both linear and angular acceleration estimates.
pub fn finite_difference_accel(v_now: Vec3, v_prev: Vec3, dt: f64) -> Result<Vec3> {
    if dt <= 0.0 || !dt.is_finite() {
        return Err(Error::InvalidTimestep { dt });
    }
    Ok((v_now - v_prev) / dt)
}
