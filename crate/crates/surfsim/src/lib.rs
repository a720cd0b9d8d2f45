//! Deterministic, headless surfing-dynamics simulator and 6-DoF
//! motion-cueing library.
//!
//! The crate simulates a buoyant surfboard on a parametric Gerstner ocean,
//! drives it with scripted acceleration trials or hand-paddling traces,
//! and maps the resulting kinematics onto bounded motion-platform command
//! frames: EMA-filtered acceleration mappings for surge/sway/yaw, a
//! velocity mapping for heave, and projection-based pitch/roll, next to a
//! classical washout baseline for comparison. Everything is fixed-step and
//! bitwise deterministic for a given config, seed, and scenario.
//!
//! Scenario batches run data-parallel via rayon under the default
//! `parallel` feature; disable default features for a fully sequential
//! build. `benches/batch_trials.rs` compares the two paths.

// Validation predicates use `!(x > 0.0)` so NaN fails the check too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod body;
pub mod config;
pub mod cueing;
pub mod error;
pub mod frame_codec;
pub mod hydro;
pub mod log;
pub mod math;
pub mod ocean;
pub mod paddle;
pub mod platform;
pub mod scenario;
pub mod stream;
pub mod trace;

pub use body::{
    body_to_world, finite_difference_accel, integrate_step, world_to_body, BodyAxes, RigidBodyState,
};
pub use config::{load_config, SimConfig, CONFIG_ENV_VAR};
pub use cueing::{
    compare_cueing, compose_frame, ema_step, map_accel_dofs, map_heave, map_pitch_roll,
    CueingConfig, CueingPipeline, CueingReport, FilterState, KinematicSample, PlatformEnvelope,
    PlatformFrame, ScalingConfig, WashoutPipeline,
};
pub use error::{Error, Result};
pub use frame_codec::{decode_frame, encode_frame, read_frame_file, FRAME_RECORD_BYTES};
pub use hydro::{buoyancy_wrench, drag_wrench, BoardGeometry, Water};
pub use log::{LogRow, SimulationLog};
pub use math::{Quat, Vec3};
pub use ocean::{spectrum_sample, OceanConfig, OceanPreset, WaveComponent};
pub use paddle::{
    classify_phase, detect_submersion, paddle_wrench, HandSample, PaddleConfig, StrokePattern,
    StrokePhase,
};
pub use platform::{actuate, tracking_error, PlatformState};
pub use scenario::{
    generate_trial, graeco_latin_block, graeco_latin_order, run_batch, run_batch_sequential,
    run_scenario, run_session, run_trial, session_order, trial_metrics, Posture, Scenario,
    SessionTrial, TrialLevel, TrialReport, TrialRun, TrialSpec,
};
pub use stream::{stream_frames, FileSink, FrameSink, StreamStats, UdpSink};
pub use trace::{load_trace, read_trace, save_trace, write_trace};
