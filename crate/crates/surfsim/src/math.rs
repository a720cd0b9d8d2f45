//! Minimal 3D vector and quaternion math.
//!
//! Coordinate frame used throughout the crate: `x` lateral (right),
//! `y` vertical (up), `z` longitudinal (forward). A positive yaw rotation
//! about `+y` takes the nose (`+z`) toward `+x`, i.e. turns the board right.

use serde::{Deserialize, Serialize};

/// 3D vector: `x` lateral, `y` vertical, `z` longitudinal.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3 {
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };
    pub const X: Vec3 = Vec3 {
        x: 1.0,
        y: 0.0,
        z: 0.0,
    };
    pub const Y: Vec3 = Vec3 {
        x: 0.0,
        y: 1.0,
        z: 0.0,
    };
    pub const Z: Vec3 = Vec3 {
        x: 0.0,
        y: 0.0,
        z: 1.0,
    };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn dot(self, other: Vec3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(self, other: Vec3) -> Vec3 {
        Vec3::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn norm_squared(self) -> f64 {
        self.dot(self)
    }

    /// Unit vector in the same direction, or `None` for (near-)zero vectors.
    pub fn normalized(self) -> Option<Vec3> {
        let n = self.norm();
        if n < 1e-12 {
            None
        } else {
            Some(self / n)
        }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Component-wise product.
    pub fn scale_axes(self, s: Vec3) -> Vec3 {
        Vec3::new(self.x * s.x, self.y * s.y, self.z * s.z)
    }
}

impl std::ops::Add for Vec3 {
    type Output = Vec3;
    fn add(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl std::ops::AddAssign for Vec3 {
    fn add_assign(&mut self, rhs: Vec3) {
        *self = *self + rhs;
    }
}

impl std::ops::Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl std::ops::Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl std::ops::Mul<Vec3> for f64 {
    type Output = Vec3;
    fn mul(self, v: Vec3) -> Vec3 {
        v * self
    }
}

impl std::ops::Div<f64> for Vec3 {
    type Output = Vec3;
    fn div(self, s: f64) -> Vec3 {
        Vec3::new(self.x / s, self.y / s, self.z / s)
    }
}

impl std::ops::Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

/// Unit quaternion `(w, x, y, z)` representing a body-to-world rotation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quat {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Default for Quat {
    fn default() -> Self {
        Quat::IDENTITY
    }
}

impl Quat {
    pub const IDENTITY: Quat = Quat {
        w: 1.0,
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    /// Rotation by `angle` radians about `axis` (need not be normalized).
    ///
    /// About `+y`, a positive angle takes `+z` toward `+x` (rightward yaw).
    pub fn from_axis_angle(axis: Vec3, angle: f64) -> Quat {
        match axis.normalized() {
            Some(u) => {
                let (s, c) = (angle / 2.0).sin_cos();
                Quat {
                    w: c,
                    x: u.x * s,
                    y: u.y * s,
                    z: u.z * s,
                }
            }
            None => Quat::IDENTITY,
        }
    }

    /// Exponential map: rotation vector `v = angle * axis` to quaternion.
    pub fn from_rotation_vector(v: Vec3) -> Quat {
        let angle = v.norm();
        if angle < 1e-12 {
            // First-order expansion keeps tiny rotations from collapsing to identity.
            Quat {
                w: 1.0,
                x: v.x / 2.0,
                y: v.y / 2.0,
                z: v.z / 2.0,
            }
            .normalized()
        } else {
            Quat::from_axis_angle(v, angle)
        }
    }

    pub fn norm(self) -> f64 {
        (self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn normalized(self) -> Quat {
        let n = self.norm();
        Quat {
            w: self.w / n,
            x: self.x / n,
            y: self.y / n,
            z: self.z / n,
        }
    }

    pub fn conjugate(self) -> Quat {
        Quat {
            w: self.w,
            x: -self.x,
            y: -self.y,
            z: -self.z,
        }
    }

    pub fn is_finite(self) -> bool {
        self.w.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Rotate a vector: `v' = q v q*`.
    pub fn rotate(self, v: Vec3) -> Vec3 {
        // t = 2 q_vec × v; v' = v + w t + q_vec × t
        let qv = Vec3::new(self.x, self.y, self.z);
        let t = qv.cross(v) * 2.0;
        v + t * self.w + qv.cross(t)
    }

    /// Rotate by the inverse: world-to-body for a body-to-world quaternion.
    pub fn rotate_inv(self, v: Vec3) -> Vec3 {
        self.conjugate().rotate(v)
    }
}

impl std::ops::Mul for Quat {
    type Output = Quat;
    fn mul(self, r: Quat) -> Quat {
        Quat {
            w: self.w * r.w - self.x * r.x - self.y * r.y - self.z * r.z,
            x: self.w * r.x + self.x * r.w + self.y * r.z - self.z * r.y,
            y: self.w * r.y - self.x * r.z + self.y * r.w + self.z * r.x,
            z: self.w * r.z + self.x * r.y - self.y * r.x + self.z * r.w,
        }
    }
}

/// Cubic smoothstep on `[0, 1]`: clamps, then `3u² − 2u³`.
pub fn smoothstep01(u: f64) -> f64 {
    let u = u.clamp(0.0, 1.0);
    u * u * (3.0 - 2.0 * u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn yaw_convention_turns_nose_right() {
        // Positive 90° yaw maps forward (+z) onto right (+x).
        let q = Quat::from_axis_angle(Vec3::Y, FRAC_PI_2);
        let f = q.rotate(Vec3::Z);
        assert_relative_eq!(f.x, 1.0, epsilon = 1e-12);
        assert_relative_eq!(f.z, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn rotate_preserves_norm() {
        let q = Quat::from_axis_angle(Vec3::new(0.3, -1.2, 0.7), 1.234);
        let v = Vec3::new(1.5, -2.5, 3.5);
        assert_relative_eq!(q.rotate(v).norm(), v.norm(), epsilon = 1e-12);
    }

    #[test]
    fn rotate_inv_inverts_rotate() {
        let q = Quat::from_axis_angle(Vec3::new(1.0, 2.0, -0.5), -0.81);
        let v = Vec3::new(0.2, 4.0, -1.0);
        let back = q.rotate_inv(q.rotate(v));
        assert_relative_eq!(back.x, v.x, epsilon = 1e-12);
        assert_relative_eq!(back.y, v.y, epsilon = 1e-12);
        assert_relative_eq!(back.z, v.z, epsilon = 1e-12);
    }

    #[test]
    fn smoothstep_saturates_exactly() {
        assert_eq!(smoothstep01(-0.5), 0.0);
        assert_eq!(smoothstep01(1.5), 1.0);
        assert_eq!(smoothstep01(0.5), 0.5);
    }
}
