//! Motion cueing: filters board kinematics and maps them onto a bounded
//! 6-DoF platform frame.
//!
//! The pipeline follows the board's mapping chain: finite-difference
//! accelerations in the body frame, one EMA filter feeding every mapping,
//! acceleration-scaled surge/sway/yaw, velocity-scaled heave, projection
//! pitch/roll, then envelope clamping and rate limiting. A classical
//! washout baseline is provided for comparison: it responds to the same
//! acceleration stream but returns toward neutral under sustained input.

use serde::{Deserialize, Serialize};

use crate::body::{finite_difference_accel, BodyAxes, RigidBodyState};
use crate::error::{Error, Result};
use crate::math::Vec3;

/// EMA filter coefficient and the previous outputs for each filtered channel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FilterState {
    /// Coefficient λ in (0, 1]. λ = 1 disables smoothing.
    pub lambda: f64,
    pub prev_lin_accel: Vec3,
    pub prev_ang_accel: Vec3,
    pub prev_lin_vel: Vec3,
}

impl FilterState {
    pub fn new(lambda: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda <= 1.0) {
            return Err(Error::Config(format!(
                "cueing.lambda must be in (0,1], got {lambda}"
            )));
        }
        Ok(Self {
            lambda,
            prev_lin_accel: Vec3::ZERO,
            prev_ang_accel: Vec3::ZERO,
            prev_lin_vel: Vec3::ZERO,
        })
    }
}

/// One recursive EMA step: `out = λ·sample + (1-λ)·prev`.
pub fn ema_step(lambda: f64, prev: Vec3, sample: Vec3) -> Vec3 {
    sample * lambda + prev * (1.0 - lambda)
}

/// Scaling factors from filtered accelerations to platform displacements.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScalingConfig {
    /// Surge per longitudinal acceleration, m/(m/s²).
    pub sf1: f64,
    /// Sway per lateral acceleration, m/(m/s²).
    pub sf2: f64,
    /// Yaw per vertical angular acceleration, rad/(rad/s²).
    pub sf3: f64,
}

impl Default for ScalingConfig {
    fn default() -> Self {
        Self {
            sf1: 0.02,
            sf2: 0.02,
            sf3: 0.05,
        }
    }
}

impl ScalingConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("sf1", self.sf1), ("sf2", self.sf2), ("sf3", self.sf3)] {
            if !(v > 0.0) {
                return Err(Error::Config(format!("cueing.{name} must be > 0, got {v}")));
            }
        }
        Ok(())
    }
}

/// One 6-DoF platform command. Translations in m, rotations in rad.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct PlatformFrame {
    pub t: f64,
    pub surge: f64,
    pub sway: f64,
    pub heave: f64,
    pub pitch: f64,
    pub roll: f64,
    pub yaw: f64,
}

impl PlatformFrame {
    /// Neutral pose at time `t`.
    pub fn neutral(t: f64) -> Self {
        Self {
            t,
            ..Self::default()
        }
    }

    pub fn dofs(&self) -> [f64; 6] {
        [
            self.surge, self.sway, self.heave, self.pitch, self.roll, self.yaw,
        ]
    }

    pub fn is_finite(&self) -> bool {
        self.t.is_finite() && self.dofs().iter().all(|v| v.is_finite())
    }
}

pub const DOF_NAMES: [&str; 6] = ["surge", "sway", "heave", "pitch", "roll", "yaw"];

/// Position and rate limits for one DoF.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DofLimit {
    pub min: f64,
    pub max: f64,
    /// Maximum commanded rate, units/s.
    pub max_rate: f64,
}

impl DofLimit {
    pub fn symmetric(bound: f64, max_rate: f64) -> Self {
        Self {
            min: -bound,
            max: bound,
            max_rate,
        }
    }
}

/// Admissible position and rate region per DoF.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlatformEnvelope {
    pub surge: DofLimit,
    pub sway: DofLimit,
    pub heave: DofLimit,
    pub pitch: DofLimit,
    pub roll: DofLimit,
    pub yaw: DofLimit,
}

impl Default for PlatformEnvelope {
    fn default() -> Self {
        // Compact 6-DoF platform: ±0.1 m translations at 0.5 m/s,
        // ±15° pitch/roll and ±20° yaw at 60°/s.
        let translation = DofLimit::symmetric(0.1, 0.5);
        let tilt = DofLimit::symmetric(15f64.to_radians(), 60f64.to_radians());
        let yaw = DofLimit::symmetric(20f64.to_radians(), 60f64.to_radians());
        Self {
            surge: translation,
            sway: translation,
            heave: translation,
            pitch: tilt,
            roll: tilt,
            yaw,
        }
    }
}

impl PlatformEnvelope {
    pub fn limits(&self) -> [DofLimit; 6] {
        [
            self.surge, self.sway, self.heave, self.pitch, self.roll, self.yaw,
        ]
    }

    pub fn validate(&self) -> Result<()> {
        for (limit, name) in self.limits().iter().zip(DOF_NAMES) {
            if !(limit.min < limit.max) {
                return Err(Error::Config(format!(
                    "envelope.{name}: min {} must be < max {}",
                    limit.min, limit.max
                )));
            }
            if !(limit.max_rate > 0.0) {
                return Err(Error::Config(format!(
                    "envelope.{name}.max_rate must be > 0, got {}",
                    limit.max_rate
                )));
            }
        }
        Ok(())
    }

    /// Errors on the first DoF outside its position limits.
    pub fn check(&self, frame: &PlatformFrame) -> Result<()> {
        for ((value, limit), name) in frame.dofs().iter().zip(self.limits()).zip(DOF_NAMES) {
            if !value.is_finite() || *value < limit.min || *value > limit.max {
                return Err(Error::FrameOutOfEnvelope {
                    t: frame.t,
                    dof: name,
                    value: *value,
                });
            }
        }
        Ok(())
    }
}

/// Maps filtered body-frame accelerations to (surge, sway, yaw).
pub fn map_accel_dofs(a_f: Vec3, alpha_f: Vec3, sc: &ScalingConfig) -> (f64, f64, f64) {
    (sc.sf1 * a_f.z, sc.sf2 * a_f.x, sc.sf3 * alpha_f.y)
}

/// Maps filtered vertical velocity to the heave command via the
/// unit-bridging gain `k_h` (seconds).
pub fn map_heave(v_f: Vec3, heave_gain: f64) -> f64 {
    heave_gain * v_f.y
}

/// Recovers pitch and roll by projecting the board orientation onto the
/// transverse plane.
///
/// The forward vector's vertical component is discarded to form the
/// horizontal heading; pitch and roll are then measured in that heading
/// frame, which makes both angles invariant to any composed yaw. atan2
/// does the quadrant bookkeeping the bare arctangent would lose.
pub fn map_pitch_roll(axes: &BodyAxes) -> Result<(f64, f64)> {
    let f = axes.forward;
    let heading = Vec3::new(f.x, 0.0, f.z)
        .normalized()
        .ok_or(Error::GimbalLock)?;
    let theta = f.y.atan2(f.dot(heading));
    let lateral = Vec3::Y.cross(heading);
    let r = axes.right;
    let psi = r.y.atan2(r.dot(lateral));
    Ok((theta, psi))
}

/// Clamps each DoF to the envelope, then rate-limits against the previous
/// frame. The output is always envelope-legal; a non-finite request holds
/// the previous pose for that DoF.
#[allow(clippy::too_many_arguments)]
pub fn compose_frame(
    t: f64,
    surge: f64,
    sway: f64,
    heave: f64,
    pitch: f64,
    roll: f64,
    yaw: f64,
    envelope: &PlatformEnvelope,
    prev: &PlatformFrame,
    dt: f64,
) -> PlatformFrame {
    let requested = [surge, sway, heave, pitch, roll, yaw];
    let previous = prev.dofs();
    let mut out = [0.0; 6];
    for (i, limit) in envelope.limits().iter().enumerate() {
        let wanted = if requested[i].is_finite() {
            requested[i]
        } else {
            previous[i]
        };
        let clamped = wanted.clamp(limit.min, limit.max);
        let max_step = limit.max_rate * dt;
        out[i] = previous[i] + (clamped - previous[i]).clamp(-max_step, max_step);
    }
    PlatformFrame {
        t,
        surge: out[0],
        sway: out[1],
        heave: out[2],
        pitch: out[3],
        roll: out[4],
        yaw: out[5],
    }
}

/// Full cueing configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CueingConfig {
    pub lambda: f64,
    pub scaling: ScalingConfig,
    /// Heave bridging gain k_h, s.
    pub heave_gain: f64,
    pub envelope: PlatformEnvelope,
    pub washout: WashoutParams,
}

impl Default for CueingConfig {
    fn default() -> Self {
        Self {
            lambda: 0.2,
            scaling: ScalingConfig::default(),
            heave_gain: 1.0,
            envelope: PlatformEnvelope::default(),
            washout: WashoutParams::default(),
        }
    }
}

impl CueingConfig {
    pub fn validate(&self) -> Result<()> {
        FilterState::new(self.lambda)?;
        self.scaling.validate()?;
        if !(self.heave_gain > 0.0) {
            return Err(Error::Config(format!(
                "cueing.heave_gain must be > 0, got {}",
                self.heave_gain
            )));
        }
        self.envelope.validate()?;
        self.washout.validate()
    }
}

/// Everything one pipeline step produces, pre- and post-clamp.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CueingStep {
    pub raw_lin_accel: Vec3,
    pub raw_ang_accel: Vec3,
    pub filtered_lin_accel: Vec3,
    pub filtered_ang_accel: Vec3,
    pub filtered_lin_vel: Vec3,
    /// Mapped command before envelope clamping.
    pub raw_frame: PlatformFrame,
    /// Envelope-legal command.
    pub frame: PlatformFrame,
}

/// Stateful stream transformer from board states to platform frames.
///
/// Single-owner: one instance per simulation.
#[derive(Debug, Clone)]
pub struct CueingPipeline {
    config: CueingConfig,
    filter: FilterState,
    prev_lin_vel: Vec3,
    prev_ang_vel: Vec3,
    prev_frame: PlatformFrame,
}

impl CueingPipeline {
    pub fn new(config: CueingConfig) -> Result<Self> {
        config.validate()?;
        Ok(Self {
            config,
            filter: FilterState::new(config.lambda)?,
            prev_lin_vel: Vec3::ZERO,
            prev_ang_vel: Vec3::ZERO,
            prev_frame: PlatformFrame::neutral(0.0),
        })
    }

    /// Seeds the differentiator with the starting velocities so the first
    /// step doesn't see a spurious acceleration spike.
    pub fn prime(&mut self, state: &RigidBodyState) {
        self.prev_lin_vel = state.linear_velocity;
        self.prev_ang_vel = state.angular_velocity;
    }

    pub fn config(&self) -> &CueingConfig {
        &self.config
    }

    pub fn last_frame(&self) -> &PlatformFrame {
        &self.prev_frame
    }

    /// Advances the pipeline by one board state sampled `dt` after the last.
    pub fn step(&mut self, state: &RigidBodyState, t: f64, dt: f64) -> Result<CueingStep> {
        let accel_world = finite_difference_accel(state.linear_velocity, self.prev_lin_vel, dt)?;
        let ang_accel_world =
            finite_difference_accel(state.angular_velocity, self.prev_ang_vel, dt)?;
        self.prev_lin_vel = state.linear_velocity;
        self.prev_ang_vel = state.angular_velocity;

        // Accelerations go through the filter in the board's local frame;
        // the heave channel filters the world-frame velocity.
        let raw_lin_accel = state.orientation.rotate_inv(accel_world);
        let raw_ang_accel = state.orientation.rotate_inv(ang_accel_world);

        let lambda = self.filter.lambda;
        let filtered_lin_accel = ema_step(lambda, self.filter.prev_lin_accel, raw_lin_accel);
        let filtered_ang_accel = ema_step(lambda, self.filter.prev_ang_accel, raw_ang_accel);
        let filtered_lin_vel = ema_step(lambda, self.filter.prev_lin_vel, state.linear_velocity);
        self.filter.prev_lin_accel = filtered_lin_accel;
        self.filter.prev_ang_accel = filtered_ang_accel;
        self.filter.prev_lin_vel = filtered_lin_vel;

        let (surge, sway, yaw) =
            map_accel_dofs(filtered_lin_accel, filtered_ang_accel, &self.config.scaling);
        let heave = map_heave(filtered_lin_vel, self.config.heave_gain);
        let (pitch, roll) = map_pitch_roll(&state.axes())?;

        let raw_frame = PlatformFrame {
            t,
            surge,
            sway,
            heave,
            pitch,
            roll,
            yaw,
        };
        let frame = compose_frame(
            t,
            surge,
            sway,
            heave,
            pitch,
            roll,
            yaw,
            &self.config.envelope,
            &self.prev_frame,
            dt,
        );
        self.prev_frame = frame;

        Ok(CueingStep {
            raw_lin_accel,
            raw_ang_accel,
            filtered_lin_accel,
            filtered_ang_accel,
            filtered_lin_vel,
            raw_frame,
            frame,
        })
    }
}

/// Washout return dynamics: natural frequency and damping ratio.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WashoutParams {
    /// rad/s
    pub omega_n: f64,
    /// Dimensionless; 1 = critically damped.
    pub zeta: f64,
}

impl Default for WashoutParams {
    fn default() -> Self {
        Self {
            omega_n: 1.0,
            zeta: 1.0,
        }
    }
}

impl WashoutParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.omega_n > 0.0) {
            return Err(Error::Config(format!(
                "washout.omega_n must be > 0, got {}",
                self.omega_n
            )));
        }
        if !(self.zeta > 0.0) {
            return Err(Error::Config(format!(
                "washout.zeta must be > 0, got {}",
                self.zeta
            )));
        }
        Ok(())
    }
}

/// Second-order washout channel.
///
/// Realizes the acceleration-to-position transfer `s / (s² + 2ζωs + ω²)`:
/// the high-passed, double-integrated displacement of a damped return
/// spring. A sustained acceleration produces a transient excursion that
/// decays back to neutral, and an impulse leaves zero steady-state
/// displacement. Discretized with the exact zero-order-hold solution, so
/// step responses match the continuous closed form at every sample.
#[derive(Debug, Clone, Copy)]
struct WashoutChannel {
    // Fundamental solutions of w'' + 2ζω w' + ω² w = 0 evaluated at dt:
    // c(0)=1, c'(0)=0; s(0)=0, s'(0)=1.
    c: f64,
    s: f64,
    omega_sq: f64,
    two_zeta_omega: f64,
    // State: spring deflection w and its rate y; the platform command is y.
    w: f64,
    y: f64,
}

impl WashoutChannel {
    fn new(params: &WashoutParams, dt: f64) -> Self {
        let omega = params.omega_n;
        let zeta = params.zeta;
        let (c, s) = if (zeta - 1.0).abs() < 1e-12 {
            let e = (-omega * dt).exp();
            (e * (1.0 + omega * dt), dt * e)
        } else if zeta < 1.0 {
            let wd = omega * (1.0 - zeta * zeta).sqrt();
            let e = (-zeta * omega * dt).exp();
            (
                e * ((wd * dt).cos() + zeta * omega / wd * (wd * dt).sin()),
                e * (wd * dt).sin() / wd,
            )
        } else {
            let we = omega * (zeta * zeta - 1.0).sqrt();
            let e = (-zeta * omega * dt).exp();
            (
                e * ((we * dt).cosh() + zeta * omega / we * (we * dt).sinh()),
                e * (we * dt).sinh() / we,
            )
        };
        Self {
            c,
            s,
            omega_sq: omega * omega,
            two_zeta_omega: 2.0 * zeta * omega,
            w: 0.0,
            y: 0.0,
        }
    }

    fn step(&mut self, accel: f64) -> f64 {
        let (w, y) = (self.w, self.y);
        self.w = self.c * w + self.s * y + (1.0 - self.c) / self.omega_sq * accel;
        self.y = -self.omega_sq * self.s * w
            + (self.c - self.two_zeta_omega * self.s) * y
            + self.s * accel;
        self.y
    }
}

/// Classical washout baseline over the three translational DoF.
///
/// Consumes the same scaled body-frame accelerations as the EMA pipeline
/// (sf2·x, sf1·y, sf1·z); rotational DoFs stay neutral. Output frames pass
/// through the same envelope clamping.
#[derive(Debug, Clone)]
pub struct WashoutPipeline {
    envelope: PlatformEnvelope,
    scaling: ScalingConfig,
    channels: [WashoutChannel; 3],
    prev_frame: PlatformFrame,
    dt: f64,
}

impl WashoutPipeline {
    pub fn new(config: &CueingConfig, dt: f64) -> Result<Self> {
        config.validate()?;
        if dt <= 0.0 {
            return Err(Error::InvalidTimestep { dt });
        }
        let channel = WashoutChannel::new(&config.washout, dt);
        Ok(Self {
            envelope: config.envelope,
            scaling: config.scaling,
            channels: [channel; 3],
            prev_frame: PlatformFrame::neutral(0.0),
            dt,
        })
    }

    /// Advances one step from a body-frame acceleration sample.
    pub fn step(&mut self, accel_body: Vec3, t: f64) -> PlatformFrame {
        let sway = self.channels[0].step(self.scaling.sf2 * accel_body.x);
        let heave = self.channels[1].step(self.scaling.sf1 * accel_body.y);
        let surge = self.channels[2].step(self.scaling.sf1 * accel_body.z);
        let frame = compose_frame(
            t,
            surge,
            sway,
            heave,
            0.0,
            0.0,
            0.0,
            &self.envelope,
            &self.prev_frame,
            self.dt,
        );
        self.prev_frame = frame;
        frame
    }

    /// Runs a whole acceleration stream, returning one frame per sample.
    pub fn run(&mut self, accel_body: &[Vec3], dt: f64) -> Vec<PlatformFrame> {
        accel_body
            .iter()
            .enumerate()
            .map(|(k, a)| self.step(*a, (k + 1) as f64 * dt))
            .collect()
    }
}

/// Cross-pipeline comparison metrics.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CueingReport {
    /// Cross-correlation peak offset per translational DoF, seconds.
    /// Positive means the washout command lags the EMA command.
    pub onset_lag_s: DofLag,
    /// Mean |EMA surge| over mean |washout surge| during the sustained phase.
    pub steady_ratio: f64,
    /// Envelope or rate violations across both emitted streams.
    pub envelope_violations: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DofLag {
    pub surge: f64,
    pub sway: f64,
    pub heave: f64,
}

/// Board kinematics sample for offline comparison runs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KinematicSample {
    /// Body-frame linear acceleration, m/s².
    pub lin_accel: Vec3,
    /// World-frame linear velocity, m/s.
    pub lin_vel: Vec3,
}

/// Lag (in samples) at the cross-correlation peak: positive when `b`
/// lags `a`. Ties resolve to the smallest magnitude.
pub fn xcorr_peak_lag(a: &[f64], b: &[f64], max_lag: usize) -> i64 {
    let n = a.len().min(b.len());
    let mut best = (f64::MIN, 0i64);
    let max_lag = max_lag.min(n.saturating_sub(1)) as i64;
    for lag in -max_lag..=max_lag {
        let mut acc = 0.0;
        for i in 0..n as i64 {
            let j = i - lag;
            if j >= 0 && j < n as i64 {
                acc += a[j as usize] * b[i as usize];
            }
        }
        if acc > best.0 + 1e-15 || (acc > best.0 - 1e-15 && lag.abs() < best.1.abs()) {
            best = (acc, lag);
        }
    }
    best.1
}

/// Sustained window of a signal: the second half of the longest contiguous
/// run where |x| stays at or above 5% of the peak. Empty signals get the
/// whole range.
fn sustained_window(signal: &[f64]) -> std::ops::Range<usize> {
    let peak = signal.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if peak == 0.0 {
        return 0..signal.len();
    }
    let threshold = 0.05 * peak;
    let mut best = 0..0;
    let mut start = None;
    for (i, v) in signal.iter().enumerate() {
        if v.abs() >= threshold {
            start.get_or_insert(i);
        } else if let Some(s) = start.take() {
            if i - s > best.len() {
                best = s..i;
            }
        }
    }
    if let Some(s) = start {
        if signal.len() - s > best.len() {
            best = s..signal.len();
        }
    }
    let mid = best.start + best.len() / 2;
    mid..best.end
}

fn mean_abs(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return 0.0;
    }
    xs.iter().map(|x| x.abs()).sum::<f64>() / xs.len() as f64
}

/// Ratio of mean magnitudes over a shared window; identical inputs give 1.
pub fn steady_ratio(a: &[f64], b: &[f64], window: std::ops::Range<usize>) -> f64 {
    let num = mean_abs(&a[window.clone()]);
    let den = mean_abs(&b[window]);
    if num == den {
        1.0
    } else {
        num / den
    }
}

/// Runs both pipelines over a board kinematic log and quantifies how they
/// differ: command retention during sustained input and onset lag.
pub fn compare_cueing(
    samples: &[KinematicSample],
    dt: f64,
    config: &CueingConfig,
) -> Result<CueingReport> {
    if dt <= 0.0 {
        return Err(Error::InvalidTimestep { dt });
    }
    let covered = samples.len() as f64 * dt;
    if covered < 5.0 {
        return Err(Error::LogTooShort {
            got: covered,
            need: 5.0,
        });
    }

    let mut filter = FilterState::new(config.lambda)?;
    let mut washout = WashoutPipeline::new(config, dt)?;
    let mut prev_ema = PlatformFrame::neutral(0.0);
    let mut ema = Vec::with_capacity(samples.len());
    let mut wash = Vec::with_capacity(samples.len());
    let mut violations = 0usize;

    for (k, s) in samples.iter().enumerate() {
        let t = (k + 1) as f64 * dt;
        let a_f = ema_step(config.lambda, filter.prev_lin_accel, s.lin_accel);
        let v_f = ema_step(config.lambda, filter.prev_lin_vel, s.lin_vel);
        filter.prev_lin_accel = a_f;
        filter.prev_lin_vel = v_f;
        let (surge, sway, _) = map_accel_dofs(a_f, Vec3::ZERO, &config.scaling);
        let heave = map_heave(v_f, config.heave_gain);
        let frame = compose_frame(
            t,
            surge,
            sway,
            heave,
            0.0,
            0.0,
            0.0,
            &config.envelope,
            &prev_ema,
            dt,
        );
        prev_ema = frame;
        ema.push(frame);
        wash.push(washout.step(s.lin_accel, t));
        for f in [&frame, wash.last().unwrap()] {
            if config.envelope.check(f).is_err() {
                violations += 1;
            }
        }
    }

    let channel = |frames: &[PlatformFrame], pick: fn(&PlatformFrame) -> f64| -> Vec<f64> {
        frames.iter().map(pick).collect()
    };
    let ema_surge = channel(&ema, |f| f.surge);
    let wash_surge = channel(&wash, |f| f.surge);
    let input_z: Vec<f64> = samples.iter().map(|s| s.lin_accel.z).collect();
    let window = sustained_window(&input_z);

    let max_lag = (2.0 / dt).round() as usize;
    let lag = |a: &[f64], b: &[f64]| xcorr_peak_lag(a, b, max_lag) as f64 * dt;

    Ok(CueingReport {
        onset_lag_s: DofLag {
            surge: lag(&ema_surge, &wash_surge),
            sway: lag(&channel(&ema, |f| f.sway), &channel(&wash, |f| f.sway)),
            heave: lag(&channel(&ema, |f| f.heave), &channel(&wash, |f| f.heave)),
        },
        steady_ratio: steady_ratio(&ema_surge, &wash_surge, window),
        envelope_violations: violations,
    })
}
