//! Simulated motion platform: consumes command frames and reports the
//! achieved pose through a per-DoF first-order lag, standing in for the
//! physical hexapod.

use serde::{Deserialize, Serialize};

use crate::cueing::{PlatformEnvelope, PlatformFrame};
use crate::error::{Error, Result};

/// Achieved pose and the actuator lag constant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlatformState {
    pub achieved: PlatformFrame,
    /// First-order lag time constant, s.
    pub tau: f64,
}

impl Default for PlatformState {
    fn default() -> Self {
        Self {
            achieved: PlatformFrame::neutral(0.0),
            tau: 0.05,
        }
    }
}

impl PlatformState {
    pub fn new(tau: f64) -> Result<Self> {
        if !(tau > 0.0) {
            return Err(Error::Config(format!(
                "platform.tau must be > 0, got {tau}"
            )));
        }
        Ok(Self {
            achieved: PlatformFrame::neutral(0.0),
            tau,
        })
    }
}

/// Advances the platform toward `frame` by one first-order lag step:
/// `achieved += (commanded − achieved)·(1 − e^(−dt/τ))` per DoF.
///
/// Commands are validated against the envelope before they move anything;
/// the cueing pipeline already guarantees legality, this is defense in
/// depth for frames arriving over the wire.
pub fn actuate(
    state: &PlatformState,
    frame: &PlatformFrame,
    envelope: &PlatformEnvelope,
    dt: f64,
) -> Result<PlatformState> {
    if dt <= 0.0 || !dt.is_finite() {
        return Err(Error::InvalidTimestep { dt });
    }
    envelope.check(frame)?;
    let alpha = 1.0 - (-dt / state.tau).exp();
    let was = state.achieved.dofs();
    let cmd = frame.dofs();
    let mut next = [0.0; 6];
    for i in 0..6 {
        next[i] = was[i] + (cmd[i] - was[i]) * alpha;
    }
    Ok(PlatformState {
        achieved: PlatformFrame {
            t: frame.t,
            surge: next[0],
            sway: next[1],
            heave: next[2],
            pitch: next[3],
            roll: next[4],
            yaw: next[5],
        },
        tau: state.tau,
    })
}

/// Per-DoF RMS error between commanded and achieved streams.
pub fn tracking_error(commanded: &[PlatformFrame], achieved: &[PlatformFrame]) -> Result<[f64; 6]> {
    if commanded.len() != achieved.len() {
        return Err(Error::LengthMismatch {
            left: commanded.len(),
            right: achieved.len(),
        });
    }
    let mut acc = [0.0f64; 6];
    for (c, a) in commanded.iter().zip(achieved) {
        for (slot, (cv, av)) in acc.iter_mut().zip(c.dofs().iter().zip(a.dofs())) {
            *slot += (cv - av).powi(2);
        }
    }
    let n = commanded.len().max(1) as f64;
    Ok(acc.map(|s| (s / n).sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn envelope() -> PlatformEnvelope {
        PlatformEnvelope::default()
    }

    fn frame(surge: f64) -> PlatformFrame {
        PlatformFrame {
            surge,
            ..PlatformFrame::neutral(0.0)
        }
    }

    #[test]
    fn matched_command_is_fixed_point() {
        let mut state = PlatformState::default();
        state.achieved.surge = 0.05;
        let next = actuate(&state, &frame(0.05), &envelope(), 0.01).unwrap();
        assert_eq!(next.achieved.surge, 0.05);
    }

    #[test]
    fn step_reaches_63_percent_at_tau() {
        // τ = 0.05 s, dt = 0.01 s: after 5 steps the discrete exponential
        // update lands exactly on 1 − e^{−1}.
        let mut state = PlatformState::default();
        let cmd = frame(0.08);
        for _ in 0..5 {
            state = actuate(&state, &cmd, &envelope(), 0.01).unwrap();
        }
        let reached = state.achieved.surge / 0.08;
        assert!((reached - (1.0 - (-1.0f64).exp())).abs() < 0.01 * reached);
        assert_relative_eq!(reached, 0.632_120_558_828_557_7, epsilon = 1e-12);
    }

    #[test]
    fn zero_command_returns_exponentially() {
        let mut state = PlatformState::default();
        state.achieved.surge = 0.09;
        let alpha = 1.0 - (-0.01f64 / 0.05).exp();
        let mut expected = 0.09;
        for _ in 0..200 {
            state = actuate(&state, &frame(0.0), &envelope(), 0.01).unwrap();
            expected *= 1.0 - alpha;
            assert_relative_eq!(state.achieved.surge, expected, epsilon = 1e-15);
        }
        assert!(state.achieved.surge < 0.09 * 0.02);
    }

    #[test]
    fn illegal_frame_rejected() {
        let state = PlatformState::default();
        let err = actuate(&state, &frame(0.5), &envelope(), 0.01);
        assert!(matches!(
            err,
            Err(Error::FrameOutOfEnvelope { dof: "surge", .. })
        ));
    }

    #[test]
    fn error_strictly_decreases_under_constant_command() {
        let mut state = PlatformState::default();
        let cmd = frame(0.07);
        let mut gap = (cmd.surge - state.achieved.surge).abs();
        for _ in 0..100 {
            state = actuate(&state, &cmd, &envelope(), 0.01).unwrap();
            let next_gap = (cmd.surge - state.achieved.surge).abs();
            assert!(next_gap < gap);
            gap = next_gap;
        }
    }

    #[test]
    fn achieved_pose_never_leaves_envelope() {
        use rand::{Rng, SeedableRng};
        let envelope = envelope();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
        let mut state = PlatformState::default();
        for k in 0..5000 {
            let limits = envelope.limits();
            let cmd = PlatformFrame {
                t: k as f64 * 0.01,
                surge: rng.gen_range(limits[0].min..=limits[0].max),
                sway: rng.gen_range(limits[1].min..=limits[1].max),
                heave: rng.gen_range(limits[2].min..=limits[2].max),
                pitch: rng.gen_range(limits[3].min..=limits[3].max),
                roll: rng.gen_range(limits[4].min..=limits[4].max),
                yaw: rng.gen_range(limits[5].min..=limits[5].max),
            };
            state = actuate(&state, &cmd, &envelope, 0.01).unwrap();
            assert!(envelope.check(&state.achieved).is_ok());
        }
    }

    #[test]
    fn tracking_error_identical_and_offset() {
        let cmds: Vec<PlatformFrame> = (0..50).map(|k| frame(0.001 * k as f64)).collect();
        assert_eq!(tracking_error(&cmds, &cmds).unwrap(), [0.0; 6]);
        let offset: Vec<PlatformFrame> = cmds
            .iter()
            .map(|f| PlatformFrame {
                surge: f.surge + 0.01,
                ..*f
            })
            .collect();
        let rms = tracking_error(&cmds, &offset).unwrap();
        assert_relative_eq!(rms[0], 0.01, epsilon = 1e-12);
        assert_eq!(rms[1], 0.0);
    }

    #[test]
    fn tracking_error_length_mismatch_rejected() {
        let cmds = vec![frame(0.0); 5];
        let ach = vec![frame(0.0); 4];
        assert!(matches!(
            tracking_error(&cmds, &ach),
            Err(Error::LengthMismatch { left: 5, right: 4 })
        ));
    }

    #[test]
    fn sinusoid_through_lag_matches_frequency_response() {
        // Discrete first-order lag y_k = (1-β)y_{k-1} + β u_k has error
        // transfer 1 − H(z) at z = e^{iωdt}, H(z) = βz/(z − (1−β)).
        // Sample an integer number of periods after the transient and the
        // measured RMS matches A·|1−H|/√2 to machine precision.
        let dt = 0.01f64;
        let tau = 0.05f64;
        let beta = 1.0 - (-dt / tau).exp();
        let freq_hz = 2.0;
        let omega = std::f64::consts::TAU * freq_hz;
        let amplitude = 0.05;

        let mut state = PlatformState::default();
        let mut commanded = Vec::new();
        let mut achieved = Vec::new();
        let samples_per_period = (1.0 / freq_hz / dt).round() as usize; // 50
        let transient = 2000;
        let measured = samples_per_period * 40;
        for k in 0..(transient + measured) {
            let u = amplitude * (omega * (k as f64) * dt).sin();
            let cmd = frame(u);
            state = actuate(&state, &cmd, &envelope(), dt).unwrap();
            if k >= transient {
                commanded.push(cmd);
                achieved.push(state.achieved);
            }
        }
        let rms = tracking_error(&commanded, &achieved).unwrap()[0];

        let z = num_complex_exp(omega * dt);
        let h = complex_div(complex_scale(z, beta), complex_sub(z, (1.0 - beta, 0.0)));
        let one_minus_h = complex_sub((1.0, 0.0), h);
        let gain = (one_minus_h.0 * one_minus_h.0 + one_minus_h.1 * one_minus_h.1).sqrt();
        let expected = amplitude * gain / 2f64.sqrt();
        assert_relative_eq!(rms, expected, max_relative = 1e-9);
    }

    // Tiny complex helpers, kept local to the test.
    fn num_complex_exp(theta: f64) -> (f64, f64) {
        (theta.cos(), theta.sin())
    }
    fn complex_scale(a: (f64, f64), s: f64) -> (f64, f64) {
        (a.0 * s, a.1 * s)
    }
    fn complex_sub(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
        (a.0 - b.0, a.1 - b.1)
    }
    fn complex_div(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
        let d = b.0 * b.0 + b.1 * b.1;
        ((a.0 * b.0 + a.1 * b.1) / d, (a.1 * b.0 - a.0 * b.1) / d)
    }
}
