//! Hand-paddling propulsion: converts timestamped two-hand motion samples
//! into a propulsive force and a steering torque on the board.
//!
//! A submerged hand produces a planar reaction force opposite its velocity,
//! `F = -S·v`, taken on the x and z components of the hand velocity in the
//! board frame; hand depth and hand size do not enter. The steering torque
//! comes from explicit moment arms at the hand offsets, which reproduces
//! the directional rule: a right-hand stroke turns the board left.

use serde::{Deserialize, Serialize};

use crate::body::RigidBodyState;
use crate::error::{Error, Result};
use crate::math::Vec3;
use crate::ocean::OceanConfig;

/// One tracked sample of both hand positions, world frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HandSample {
    pub t: f64,
    pub left_pos: Vec3,
    pub right_pos: Vec3,
}

/// Paddling force parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PaddleConfig {
    /// Force scaling S, N·s/m.
    pub force_scale: f64,
    /// Lateral distance of each hand's moment arm from the centerline, m.
    pub hand_offset_x: f64,
}

impl Default for PaddleConfig {
    fn default() -> Self {
        Self {
            force_scale: 40.0,
            hand_offset_x: 0.35,
        }
    }
}

impl PaddleConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.force_scale > 0.0) {
            return Err(Error::Config(format!(
                "paddle.force_scale must be > 0, got {}",
                self.force_scale
            )));
        }
        if !(self.hand_offset_x > 0.0) {
            return Err(Error::Config(format!(
                "paddle.hand_offset_x must be > 0, got {}",
                self.hand_offset_x
            )));
        }
        Ok(())
    }
}

/// Stroke phase of one hand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StrokePhase {
    /// Hand below the water surface, generating force.
    Propulsion,
    /// Hand lifted out, returning for the next stroke.
    Recovery,
}

/// True iff the hand is strictly below the local water surface.
pub fn detect_submersion(hand_pos: Vec3, ocean: &OceanConfig, t: f64) -> bool {
    hand_pos.y < ocean.height_at(hand_pos.x, hand_pos.z, t)
}

/// Submerged hands are in propulsion; at or above the surface is recovery.
pub fn classify_phase(hand_pos: Vec3, ocean: &OceanConfig, t: f64) -> StrokePhase {
    if detect_submersion(hand_pos, ocean, t) {
        StrokePhase::Propulsion
    } else {
        StrokePhase::Recovery
    }
}

/// Propulsion/steering wrench from one consecutive pair of hand samples.
///
/// Returns the planar force in the board frame and the torque about the
/// board's vertical axis. Hands out of the water contribute nothing.
pub fn paddle_wrench(
    prev: &HandSample,
    now: &HandSample,
    ocean: &OceanConfig,
    board: &RigidBodyState,
    config: &PaddleConfig,
) -> Result<(Vec3, f64)> {
    let dt = now.t - prev.t;
    if dt <= 0.0 {
        return Err(Error::Trace(format!(
            "hand samples must have strictly increasing t ({} then {})",
            prev.t, now.t
        )));
    }
    let mut force = Vec3::ZERO;
    let mut torque_y = 0.0;
    let hands = [
        (prev.left_pos, now.left_pos, -config.hand_offset_x),
        (prev.right_pos, now.right_pos, config.hand_offset_x),
    ];
    for (was, is, offset_x) in hands {
        if !detect_submersion(is, ocean, now.t) {
            continue;
        }
        let vel_world = (is - was) / dt;
        let vel_body = board.orientation.rotate_inv(vel_world);
        let hand_force = Vec3::new(
            -config.force_scale * vel_body.x,
            0.0,
            -config.force_scale * vel_body.z,
        );
        force += hand_force;
        // (r × F)·ŷ with r = (±offset, 0, 0)
        torque_y += -offset_x * hand_force.z;
    }
    Ok((force, torque_y))
}

/// Which hands a synthetic pattern drives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HandsMode {
    /// Both hands stroke together (forward paddling).
    Both,
    /// Left hand strokes, right hand stays out of the water.
    LeftOnly,
    /// Right hand strokes, left hand stays out of the water.
    RightOnly,
}

/// Synthetic stroke generator for tests and scripted runs.
///
/// Each cycle splits into a propulsion span (hand submerged, moving
/// backward at constant `stroke_speed`) and a recovery span (hand lifted
/// out, returning forward). Positions are world frame around the origin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StrokePattern {
    /// Backward hand speed while submerged, m/s.
    pub stroke_speed: f64,
    /// Full stroke cycles per second.
    pub cadence_hz: f64,
    /// Fraction of each cycle spent submerged, in (0, 1).
    pub duty: f64,
    pub hands: HandsMode,
    /// Hand y while submerged (below surface), m.
    pub submerged_y: f64,
    /// Hand y during recovery (above surface), m.
    pub recovery_y: f64,
    /// Lateral hand positions, m.
    pub hand_offset_x: f64,
}

impl Default for StrokePattern {
    fn default() -> Self {
        Self {
            stroke_speed: 1.2,
            cadence_hz: 1.0,
            duty: 0.8,
            hands: HandsMode::Both,
            submerged_y: -0.1,
            recovery_y: 0.3,
            hand_offset_x: 0.35,
        }
    }
}

impl StrokePattern {
    fn hand_at(&self, t: f64) -> (f64, f64) {
        let period = 1.0 / self.cadence_hz;
        let phase = (t / period).fract() * period;
        let stroke_time = self.duty * period;
        let travel = self.stroke_speed * stroke_time;
        if phase < stroke_time {
            (self.submerged_y, -self.stroke_speed * phase)
        } else {
            // Return at the speed that closes the cycle.
            let return_speed = travel / (period - stroke_time);
            (
                self.recovery_y,
                -travel + return_speed * (phase - stroke_time),
            )
        }
    }

    /// Samples the pattern at fixed `dt` for `duration` seconds.
    pub fn generate(&self, duration: f64, dt: f64) -> Vec<HandSample> {
        let n = (duration / dt).round() as usize;
        let parked = Vec3::new(0.0, self.recovery_y, 0.0);
        (0..=n)
            .map(|k| {
                let t = k as f64 * dt;
                let (y, z) = self.hand_at(t);
                let active = Vec3::new(0.0, y, z);
                let (left, right) = match self.hands {
                    HandsMode::Both => (active, active),
                    HandsMode::LeftOnly => (active, parked),
                    HandsMode::RightOnly => (parked, active),
                };
                HandSample {
                    t,
                    left_pos: Vec3::new(-self.hand_offset_x, left.y, left.z),
                    right_pos: Vec3::new(self.hand_offset_x, right.y, right.z),
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ocean::{spectrum_sample, OceanPreset};
    use approx::assert_relative_eq;

    fn flat() -> OceanConfig {
        OceanConfig::flat()
    }

    fn sample(t: f64, left: Vec3, right: Vec3) -> HandSample {
        HandSample {
            t,
            left_pos: left,
            right_pos: right,
        }
    }

    #[test]
    fn submersion_against_flat_water() {
        assert!(detect_submersion(Vec3::new(0.0, -1.0, 0.0), &flat(), 0.0));
        assert!(!detect_submersion(Vec3::new(0.0, 1.0, 0.0), &flat(), 0.0));
        // Exactly at the surface counts as recovery (strict inequality).
        assert_eq!(
            classify_phase(Vec3::ZERO, &flat(), 0.0),
            StrokePhase::Recovery
        );
    }

    #[test]
    fn submersion_under_a_ripple_crest() {
        // Find a crest tall enough to cover a hand at y = 0.03.
        let ocean = spectrum_sample(4, OceanPreset::Ripples, 8);
        let mut best = (0.0, 0.0, f64::MIN);
        for i in 0..2000 {
            let x = -10.0 + i as f64 * 0.01;
            let h = ocean.height_at(x, 0.0, 1.0);
            if h > best.2 {
                best = (x, 0.0, h);
            }
        }
        assert!(best.2 > 0.03, "spectrum never exceeded 0.03 m");
        let hand = Vec3::new(best.0, 0.03, best.1);
        assert!(detect_submersion(hand, &ocean, 1.0));
        assert_eq!(classify_phase(hand, &ocean, 1.0), StrokePhase::Propulsion);
    }

    #[test]
    fn stationary_hands_no_wrench() {
        let p = Vec3::new(-0.35, -0.1, 0.0);
        let q = Vec3::new(0.35, -0.1, 0.0);
        let board = RigidBodyState::default();
        let (f, tq) = paddle_wrench(
            &sample(0.0, p, q),
            &sample(0.01, p, q),
            &flat(),
            &board,
            &PaddleConfig::default(),
        )
        .unwrap();
        assert_eq!(f, Vec3::ZERO);
        assert_eq!(tq, 0.0);
    }

    #[test]
    fn symmetric_backward_stroke_drives_forward() {
        // Both hands submerged moving backward at 1 m/s with S = 40:
        // F = (0, 0, +80) N and zero steering torque.
        let config = PaddleConfig {
            force_scale: 40.0,
            hand_offset_x: 0.35,
        };
        let board = RigidBodyState::default();
        let dz = -0.01;
        let (f, tq) = paddle_wrench(
            &sample(0.0, Vec3::new(-0.35, -0.1, 0.0), Vec3::new(0.35, -0.1, 0.0)),
            &sample(0.01, Vec3::new(-0.35, -0.1, dz), Vec3::new(0.35, -0.1, dz)),
            &flat(),
            &board,
            &config,
        )
        .unwrap();
        assert_relative_eq!(f.z, 80.0, epsilon = 1e-9);
        assert_relative_eq!(f.x, 0.0, epsilon = 1e-12);
        assert_eq!(f.y, 0.0);
        assert_relative_eq!(tq, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn right_hand_stroke_torques_left() {
        // Right-hand backward stroke: negative yaw torque, which turns the
        // nose left under this crate's yaw convention.
        let config = PaddleConfig::default();
        let board = RigidBodyState::default();
        let parked = Vec3::new(-0.35, 0.3, 0.0);
        let (_, tq) = paddle_wrench(
            &sample(0.0, parked, Vec3::new(0.35, -0.1, 0.0)),
            &sample(0.01, parked, Vec3::new(0.35, -0.1, -0.012)),
            &flat(),
            &board,
            &config,
        )
        .unwrap();
        assert!(tq < 0.0);
    }

    #[test]
    fn left_right_torques_mirror_exactly() {
        let config = PaddleConfig::default();
        let board = RigidBodyState::default();
        let parked_l = Vec3::new(-0.35, 0.3, 0.0);
        let parked_r = Vec3::new(0.35, 0.3, 0.0);
        let (_, tq_right) = paddle_wrench(
            &sample(0.0, parked_l, Vec3::new(0.35, -0.1, 0.0)),
            &sample(0.01, parked_l, Vec3::new(0.35, -0.1, -0.012)),
            &flat(),
            &board,
            &config,
        )
        .unwrap();
        let (_, tq_left) = paddle_wrench(
            &sample(0.0, Vec3::new(-0.35, -0.1, 0.0), parked_r),
            &sample(0.01, Vec3::new(-0.35, -0.1, -0.012), parked_r),
            &flat(),
            &board,
            &config,
        )
        .unwrap();
        assert_eq!(tq_left, -tq_right);
        assert!(tq_left > 0.0);
    }

    #[test]
    fn doubling_scale_doubles_wrench() {
        let board = RigidBodyState::default();
        let a = sample(0.0, Vec3::new(-0.35, -0.1, 0.1), Vec3::new(0.35, -0.1, 0.2));
        let b = sample(
            0.01,
            Vec3::new(-0.34, -0.1, 0.08),
            Vec3::new(0.36, -0.1, 0.17),
        );
        let base = PaddleConfig {
            force_scale: 40.0,
            hand_offset_x: 0.35,
        };
        let twice = PaddleConfig {
            force_scale: 80.0,
            hand_offset_x: 0.35,
        };
        let (f1, t1) = paddle_wrench(&a, &b, &flat(), &board, &base).unwrap();
        let (f2, t2) = paddle_wrench(&a, &b, &flat(), &board, &twice).unwrap();
        assert_eq!(f2, f1 * 2.0);
        assert_eq!(t2, t1 * 2.0);
    }

    #[test]
    fn recovery_motion_contributes_nothing() {
        // Oscillation entirely above the surface: zero net impulse.
        let config = PaddleConfig::default();
        let board = RigidBodyState::default();
        let mut impulse = Vec3::ZERO;
        let dt = 0.01;
        let mut prev: Option<HandSample> = None;
        for k in 0..=200 {
            let t = k as f64 * dt;
            let z = 0.3 * (std::f64::consts::TAU * t).sin();
            let s = sample(t, Vec3::new(-0.35, 0.2, z), Vec3::new(0.35, 0.2, z));
            if let Some(p) = prev {
                let (f, _) = paddle_wrench(&p, &s, &flat(), &board, &config).unwrap();
                impulse += f * dt;
            }
            prev = Some(s);
        }
        assert_eq!(impulse, Vec3::ZERO);
    }

    #[test]
    fn non_monotone_samples_rejected() {
        let p = Vec3::new(0.0, -0.1, 0.0);
        let a = sample(1.0, p, p);
        let b = sample(1.0, p, p);
        assert!(paddle_wrench(
            &a,
            &b,
            &flat(),
            &RigidBodyState::default(),
            &PaddleConfig::default()
        )
        .is_err());
    }

    #[test]
    fn generator_closes_each_cycle() {
        let pattern = StrokePattern::default();
        let samples = pattern.generate(3.0, 0.01);
        assert_eq!(samples.len(), 301);
        // Hand z returns to the start of the stroke at every whole cycle.
        for cycle in 0..3 {
            let k = cycle * 100;
            assert_relative_eq!(samples[k].left_pos.z, 0.0, epsilon = 1e-9);
        }
        // Strictly increasing time.
        for w in samples.windows(2) {
            assert!(w[1].t > w[0].t);
        }
    }
}
