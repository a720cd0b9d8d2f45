use thiserror::Error;

/// Errors surfaced by the simulation library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("non-finite {what} encountered during integration")]
    NonFiniteInput { what: &'static str },

    #[error("timestep must be positive, got {dt}")]
    InvalidTimestep { dt: f64 },

    #[error("degenerate board attitude: forward vector is vertical, pitch/roll undefined")]
    GimbalLock,

    #[error("kinematic log covers {got:.3} s, need at least {need:.3} s")]
    LogTooShort { got: f64, need: f64 },

    #[error("frame at t={t} violates the platform envelope: {dof} = {value}")]
    FrameOutOfEnvelope {
        t: f64,
        dof: &'static str,
        value: f64,
    },

    #[error("stream length mismatch: {left} commanded vs {right} achieved")]
    LengthMismatch { left: usize, right: usize },

    #[error("config: {0}")]
    Config(String),

    #[error("frame record needs {expected} bytes, got {got}")]
    ShortFrameBuffer { expected: usize, got: usize },

    #[error("frame field {field} is not finite")]
    NonFiniteFrameField { field: &'static str },

    #[error("hand trace: {0}")]
    Trace(String),

    #[error("log format: {0}")]
    LogFormat(String),

    #[error("simulation diverged at t={t:.3}: {what} is not finite")]
    Diverged { t: f64, what: &'static str },

    #[error("missing trial condition: {0}")]
    MissingCondition(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
