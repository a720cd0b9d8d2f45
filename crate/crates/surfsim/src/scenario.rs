//! Scripted experiment scenarios: acceleration trials, passive floats, and
//! paddle-trace runs, plus counterbalanced trial ordering and metrics.
//!
//! Trials drive the board kinematically — a prescribed longitudinal
//! velocity profile replaces the horizontal velocity after the force kick,
//! mirroring an experiment where the system, not the paddler, accelerates
//! the board — while buoyancy, drag, and ripples keep driving heave,
//! pitch, and roll. Batches of independent scenarios run in parallel when
//! the `parallel` feature is enabled.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::body::{integrate_position, integrate_velocity, RigidBodyState};
use crate::config::SimConfig;
use crate::cueing::{xcorr_peak_lag, CueingPipeline};
use crate::error::{Error, Result};
use crate::hydro::{buoyancy_wrench, drag_wrench};
use crate::log::{BodyKinematics, LogRow, SimulationLog, WrenchSources};
use crate::math::Vec3;
use crate::paddle::{paddle_wrench, HandSample};
use crate::platform::{actuate, PlatformState};

/// Rider posture. Logged metadata only; posture has no effect on the
/// dynamics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Posture {
    Sitting,
    Kneeling,
    Standing,
}

pub const POSTURES: [Posture; 3] = [Posture::Sitting, Posture::Kneeling, Posture::Standing];

/// Named acceleration levels: 0.5, 1.5, and 3 m/s².
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TrialLevel {
    Low,
    Medium,
    High,
}

pub const LEVELS: [TrialLevel; 3] = [TrialLevel::Low, TrialLevel::Medium, TrialLevel::High];

impl TrialLevel {
    pub fn acceleration(self) -> f64 {
        match self {
            TrialLevel::Low => 0.5,
            TrialLevel::Medium => 1.5,
            TrialLevel::High => 3.0,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            TrialLevel::Low => "LA",
            TrialLevel::Medium => "MA",
            TrialLevel::High => "HA",
        }
    }
}

/// One scripted acceleration trial.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrialSpec {
    /// Forward acceleration, m/s².
    pub level: f64,
    pub ripples: bool,
    pub posture: Posture,
    /// Length of the acceleration phase, s; deceleration mirrors it.
    pub accel_duration: f64,
}

impl TrialSpec {
    pub fn new(level: TrialLevel, ripples: bool) -> Self {
        Self {
            level: level.acceleration(),
            ripples,
            posture: Posture::Sitting,
            accel_duration: 5.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.level > 0.0 && self.level.is_finite()) {
            return Err(Error::Config(format!(
                "trial level must be > 0, got {}",
                self.level
            )));
        }
        if !(self.accel_duration > 0.0) {
            return Err(Error::Config(format!(
                "trial accel_duration must be > 0, got {}",
                self.accel_duration
            )));
        }
        Ok(())
    }

    /// Prescribed speed: ramp up for `accel_duration`, mirror back to rest.
    pub fn speed_at(&self, t: f64) -> f64 {
        let ramp = self.accel_duration;
        if t <= 0.0 {
            0.0
        } else if t <= ramp {
            self.level * t
        } else if t < 2.0 * ramp {
            self.level * (2.0 * ramp - t)
        } else {
            0.0
        }
    }

    /// Trial length: both ramps plus a settling tail.
    pub fn duration(&self) -> f64 {
        2.0 * self.accel_duration + 1.0
    }
}

/// What drives the board for one run.
#[derive(Debug, Clone, PartialEq)]
pub enum Scenario {
    /// Free float under hydro forces only.
    Passive { duration: f64 },
    /// Scripted acceleration trial.
    Trial(TrialSpec),
    /// Propulsion from a hand trace.
    PaddleTrace { samples: Vec<HandSample> },
}

impl Scenario {
    fn duration(&self) -> Result<f64> {
        match self {
            Scenario::Passive { duration } => {
                if !(*duration > 0.0) {
                    return Err(Error::Config(format!(
                        "passive duration must be > 0, got {duration}"
                    )));
                }
                Ok(*duration)
            }
            Scenario::Trial(spec) => {
                spec.validate()?;
                Ok(spec.duration())
            }
            Scenario::PaddleTrace { samples } => {
                if samples.len() < 2 {
                    return Err(Error::Trace(
                        "paddle trace needs at least two samples".into(),
                    ));
                }
                Ok(samples.last().unwrap().t)
            }
        }
    }
}

/// Expands a trial spec into a runnable scenario.
pub fn generate_trial(spec: TrialSpec) -> Scenario {
    Scenario::Trial(spec)
}

/// Runs the full fixed-step loop: ocean → wrenches → integrate →
/// differentiate → filter → map → clamp → actuate → log.
pub fn run_scenario(config: &SimConfig, scenario: &Scenario) -> Result<SimulationLog> {
    config.validate()?;
    let duration = scenario.duration()?;
    let dt = config.timestep;
    let geometry = config.board.geometry();
    let water = config.water;
    let ocean = match scenario {
        Scenario::Trial(spec) => config.ocean.build(Some(spec.ripples)),
        _ => config.ocean.build(None),
    };

    let mut state = RigidBodyState {
        position: Vec3::new(0.0, geometry.equilibrium_heave(config.mass, &water), 0.0),
        mass: config.mass,
        inertia_diag: config.inertia_diag,
        ..RigidBodyState::default()
    };
    let mut pipeline = CueingPipeline::new(config.cueing)?;
    pipeline.prime(&state);
    let mut platform = PlatformState::new(config.platform_tau)?;

    let steps = (duration / dt).round() as usize;
    let mut rows = Vec::with_capacity(steps + 1);
    rows.push(LogRow {
        t: 0.0,
        body: kinematics(&state),
        raw_lin_accel: Vec3::ZERO,
        raw_ang_accel: Vec3::ZERO,
        filtered_lin_accel: Vec3::ZERO,
        filtered_ang_accel: Vec3::ZERO,
        filtered_lin_vel: Vec3::ZERO,
        raw_frame: crate::cueing::PlatformFrame::neutral(0.0),
        frame: crate::cueing::PlatformFrame::neutral(0.0),
        achieved: platform.achieved,
        sources: WrenchSources::default(),
    });

    let mut trace_cursor = 0usize;
    for k in 0..steps {
        let t = k as f64 * dt;
        let t_next = (k + 1) as f64 * dt;

        let (buoy_force, buoy_torque) = buoyancy_wrench(&geometry, &state, &ocean, &water, t);
        let (drag_force, drag_torque) = drag_wrench(&geometry, &state, &ocean, t);
        let gravity = Vec3::new(0.0, -state.mass * water.gravity, 0.0);
        let mut force = buoy_force + drag_force + gravity;
        let mut torque = buoy_torque + drag_torque;
        let mut sources = WrenchSources {
            hydro: geometry.any_probe_submerged(&state, &ocean, t),
            ..WrenchSources::default()
        };

        if let Scenario::PaddleTrace { samples } = scenario {
            while trace_cursor + 1 < samples.len() && samples[trace_cursor + 1].t <= t {
                trace_cursor += 1;
            }
            if trace_cursor + 1 < samples.len() && samples[trace_cursor].t <= t {
                let (force_body, torque_y) = paddle_wrench(
                    &samples[trace_cursor],
                    &samples[trace_cursor + 1],
                    &ocean,
                    &state,
                    &config.paddle,
                )?;
                if force_body != Vec3::ZERO || torque_y != 0.0 {
                    sources.paddle = true;
                }
                force += state.orientation.rotate(force_body);
                torque += state.orientation.rotate(Vec3::new(0.0, torque_y, 0.0));
            }
        }

        let mut kicked = integrate_velocity(&state, force, torque, dt)?;

        if let Scenario::Trial(spec) = scenario {
            // Kinematic drive: the prescribed profile replaces the
            // horizontal velocity; hydro keeps ownership of the vertical.
            let forward = kicked.orientation.rotate(Vec3::Z);
            let heading = Vec3::new(forward.x, 0.0, forward.z)
                .normalized()
                .ok_or(Error::GimbalLock)?;
            let speed = spec.speed_at(t_next);
            kicked.linear_velocity =
                heading * speed + Vec3::new(0.0, kicked.linear_velocity.y, 0.0);
            if t_next < 2.0 * spec.accel_duration {
                sources.scripted = true;
            }
        }

        state = integrate_position(&kicked, dt)?;
        if !state.is_finite() {
            return Err(Error::Diverged {
                t: t_next,
                what: "board state",
            });
        }

        let step = pipeline.step(&state, t_next, dt)?;
        platform = actuate(&platform, &step.frame, &config.cueing.envelope, dt)?;

        rows.push(LogRow {
            t: t_next,
            body: kinematics(&state),
            raw_lin_accel: step.raw_lin_accel,
            raw_ang_accel: step.raw_ang_accel,
            filtered_lin_accel: step.filtered_lin_accel,
            filtered_ang_accel: step.filtered_ang_accel,
            filtered_lin_vel: step.filtered_lin_vel,
            raw_frame: step.raw_frame,
            frame: step.frame,
            achieved: platform.achieved,
            sources,
        });
    }

    Ok(SimulationLog { dt, rows })
}

fn kinematics(state: &RigidBodyState) -> BodyKinematics {
    BodyKinematics {
        position: state.position,
        orientation: state.orientation,
        linear_velocity: state.linear_velocity,
        angular_velocity: state.angular_velocity,
    }
}

/// A finished trial: what was asked and what happened.
#[derive(Debug, Clone)]
pub struct TrialRun {
    pub spec: TrialSpec,
    pub log: SimulationLog,
}

/// Runs one scripted trial.
pub fn run_trial(config: &SimConfig, spec: TrialSpec) -> Result<TrialRun> {
    let log = run_scenario(config, &generate_trial(spec))?;
    Ok(TrialRun { spec, log })
}

/// Sequential batch execution, always available.
pub fn run_batch_sequential(
    config: &SimConfig,
    scenarios: &[Scenario],
) -> Result<Vec<SimulationLog>> {
    scenarios.iter().map(|s| run_scenario(config, s)).collect()
}

/// Batch execution over independent scenarios. Runs data-parallel with the
/// `parallel` feature; output order always matches the input order, so the
/// results are identical either way.
#[cfg(feature = "parallel")]
pub fn run_batch(config: &SimConfig, scenarios: &[Scenario]) -> Result<Vec<SimulationLog>> {
    use rayon::prelude::*;
    scenarios
        .par_iter()
        .map(|s| run_scenario(config, s))
        .collect()
}

/// Batch execution over independent scenarios (sequential fallback).
#[cfg(not(feature = "parallel"))]
pub fn run_batch(config: &SimConfig, scenarios: &[Scenario]) -> Result<Vec<SimulationLog>> {
    run_batch_sequential(config, scenarios)
}

// ---------------------------------------------------------------------------
// Trial ordering
// ---------------------------------------------------------------------------

/// One slot in a session schedule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionTrial {
    pub posture: Posture,
    pub level: TrialLevel,
    pub ripples: bool,
}

fn cyclic_latin(order: usize, row: usize, col: usize) -> usize {
    (row + col) % order
}

fn cyclic_greek(order: usize, row: usize, col: usize) -> usize {
    (row + 2 * col) % order
}

/// Six counterbalanced trials for one posture block: the three levels in
/// the order of one row of a cyclic order-3 Graeco-Latin square, each
/// visited once per ripple state, with the Greek symbol deciding which
/// ripple state a level sees first.
pub fn graeco_latin_block(row: usize) -> Vec<(TrialLevel, bool)> {
    let order = 3;
    let mut trials = Vec::with_capacity(2 * order);
    for pass in 0..2 {
        for col in 0..order {
            let level = LEVELS[cyclic_latin(order, row % order, col)];
            let ripples_first = cyclic_greek(order, row % order, col) % 2 == 1;
            let ripples = if pass == 0 {
                ripples_first
            } else {
                !ripples_first
            };
            trials.push((level, ripples));
        }
    }
    trials
}

/// Counterbalanced 6-trial order for a single block, with the square row
/// picked from the seed.
pub fn graeco_latin_order(seed: u64) -> Vec<(TrialLevel, bool)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    graeco_latin_block(rng.gen_range(0..3usize))
}

/// Full 18-trial session: three posture blocks of six trials, posture
/// order shuffled and square rows rotated from the seed.
pub fn session_order(seed: u64) -> Vec<SessionTrial> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut postures = POSTURES;
    postures.shuffle(&mut rng);
    let first_row = rng.gen_range(0..3usize);
    let mut session = Vec::with_capacity(18);
    for (block, &posture) in postures.iter().enumerate() {
        for (level, ripples) in graeco_latin_block(first_row + block) {
            session.push(SessionTrial {
                posture,
                level,
                ripples,
            });
        }
    }
    session
}

/// Runs a whole counterbalanced session from one seed.
pub fn run_session(config: &SimConfig, seed: u64) -> Result<Vec<(SessionTrial, TrialRun)>> {
    let order = session_order(seed);
    let scenarios: Vec<Scenario> = order
        .iter()
        .map(|trial| {
            let mut spec = TrialSpec::new(trial.level, trial.ripples);
            spec.posture = trial.posture;
            generate_trial(spec)
        })
        .collect();
    let logs = run_batch(config, &scenarios)?;
    Ok(order
        .into_iter()
        .zip(logs)
        .map(|(slot, log)| {
            let mut spec = TrialSpec::new(slot.level, slot.ripples);
            spec.posture = slot.posture;
            (slot, TrialRun { spec, log })
        })
        .collect())
}

// ---------------------------------------------------------------------------
// Metrics
// ---------------------------------------------------------------------------

/// Aggregates for one (level, ripples) condition.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConditionSummary {
    pub level: f64,
    pub ripples: bool,
    pub runs: usize,
    /// Mean |pre-clamp surge| over the sustained phase [T/2, T).
    pub mean_raw_surge: f64,
    /// RMS of the clamped heave/pitch/roll command channels.
    pub heave_rms: f64,
    pub pitch_rms: f64,
    pub roll_rms: f64,
    /// Cross-correlation lag from body acceleration to the surge command, s.
    pub onset_lag: f64,
}

/// Surge ratios between the named levels, from still-water runs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LevelRatios {
    pub ma_over_la: f64,
    pub ha_over_la: f64,
}

/// Ripple-on minus ripple-off command RMS for one level.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RippleDelta {
    pub level: f64,
    pub heave_rms_delta: f64,
    pub pitch_rms_delta: f64,
    pub roll_rms_delta: f64,
}

/// Metrics across a set of trial runs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrialReport {
    pub conditions: Vec<ConditionSummary>,
    pub level_ratios: Option<LevelRatios>,
    pub ripple_deltas: Vec<RippleDelta>,
    /// Conditions that were needed for a ratio or delta but absent.
    pub missing: Vec<String>,
}

fn rms(xs: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut n = 0usize;
    for x in xs {
        sum += x * x;
        n += 1;
    }
    if n == 0 {
        0.0
    } else {
        (sum / n as f64).sqrt()
    }
}

fn summarize(runs: &[&TrialRun]) -> ConditionSummary {
    let spec = runs[0].spec;
    let mut mean_raw_surge = 0.0;
    let mut heave = 0.0;
    let mut pitch = 0.0;
    let mut roll = 0.0;
    let mut lag = 0.0;
    for run in runs {
        let sustained_start = spec.accel_duration / 2.0;
        let sustained: Vec<f64> = run
            .log
            .window(sustained_start, spec.accel_duration)
            .map(|r| r.raw_frame.surge.abs())
            .collect();
        mean_raw_surge += sustained.iter().sum::<f64>() / sustained.len().max(1) as f64;
        heave += rms(run.log.rows.iter().map(|r| r.frame.heave));
        pitch += rms(run.log.rows.iter().map(|r| r.frame.pitch));
        roll += rms(run.log.rows.iter().map(|r| r.frame.roll));
        let accel: Vec<f64> = run.log.rows.iter().map(|r| r.raw_lin_accel.z).collect();
        let surge: Vec<f64> = run.log.rows.iter().map(|r| r.frame.surge).collect();
        let max_lag = (1.0 / run.log.dt).round() as usize;
        lag += xcorr_peak_lag(&accel, &surge, max_lag) as f64 * run.log.dt;
    }
    let n = runs.len() as f64;
    ConditionSummary {
        level: spec.level,
        ripples: spec.ripples,
        runs: runs.len(),
        mean_raw_surge: mean_raw_surge / n,
        heave_rms: heave / n,
        pitch_rms: pitch / n,
        roll_rms: roll / n,
        onset_lag: lag / n,
    }
}

/// Builds the per-condition report. Ratios and ripple deltas are computed
/// where both operands exist; anything absent is flagged in `missing`.
pub fn trial_metrics(runs: &[TrialRun]) -> Result<TrialReport> {
    if runs.is_empty() {
        return Err(Error::MissingCondition("no trial runs supplied".into()));
    }
    let mut grouped: Vec<(f64, bool, Vec<&TrialRun>)> = Vec::new();
    for run in runs {
        match grouped
            .iter_mut()
            .find(|(level, ripples, _)| *level == run.spec.level && *ripples == run.spec.ripples)
        {
            Some((_, _, bucket)) => bucket.push(run),
            None => grouped.push((run.spec.level, run.spec.ripples, vec![run])),
        }
    }
    let conditions: Vec<ConditionSummary> = grouped
        .iter()
        .map(|(_, _, bucket)| summarize(bucket))
        .collect();

    let mut missing = Vec::new();
    let still = |level: TrialLevel| -> Option<f64> {
        conditions
            .iter()
            .find(|c| c.level == level.acceleration() && !c.ripples)
            .map(|c| c.mean_raw_surge)
    };
    let level_ratios = match (
        still(TrialLevel::Low),
        still(TrialLevel::Medium),
        still(TrialLevel::High),
    ) {
        (Some(la), Some(ma), Some(ha)) if la > 0.0 => Some(LevelRatios {
            ma_over_la: ma / la,
            ha_over_la: ha / la,
        }),
        (la, ma, ha) => {
            for (value, level) in [(la, "LA"), (ma, "MA"), (ha, "HA")] {
                if value.is_none() {
                    missing.push(format!("{level} still-water run"));
                }
            }
            None
        }
    };

    let mut ripple_deltas = Vec::new();
    let mut levels: Vec<f64> = conditions.iter().map(|c| c.level).collect();
    levels.sort_by(|a, b| a.partial_cmp(b).unwrap());
    levels.dedup();
    for level in levels {
        let on = conditions.iter().find(|c| c.level == level && c.ripples);
        let off = conditions.iter().find(|c| c.level == level && !c.ripples);
        match (on, off) {
            (Some(on), Some(off)) => ripple_deltas.push(RippleDelta {
                level,
                heave_rms_delta: on.heave_rms - off.heave_rms,
                pitch_rms_delta: on.pitch_rms - off.pitch_rms,
                roll_rms_delta: on.roll_rms - off.roll_rms,
            }),
            (None, Some(_)) => missing.push(format!("level {level} with ripples")),
            (Some(_), None) => missing.push(format!("level {level} without ripples")),
            (None, None) => {}
        }
    }

    Ok(TrialReport {
        conditions,
        level_ratios,
        ripple_deltas,
        missing,
    })
}
