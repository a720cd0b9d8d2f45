//! Simulation configuration: one JSON document, validated on load.
//!
//! Unknown keys are rejected and every numeric constraint from the owning
//! module is re-validated here, so a config that loads is a config that
//! runs. An empty file or `{}` yields the full defaults.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::cueing::CueingConfig;
use crate::error::{Error, Result};
use crate::hydro::{BoardGeometry, Water};
use crate::math::Vec3;
use crate::ocean::{spectrum_sample, OceanConfig, OceanPreset, WaveComponent};
use crate::paddle::PaddleConfig;

pub const CONFIG_VERSION: u32 = 1;

/// Environment variable consulted when no config path is given.
pub const CONFIG_ENV_VAR: &str = "SURFSIM_CONFIG";

/// Board hull parameters as written in the config file; expands to a
/// probe-grid [`BoardGeometry`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BoardSettings {
    pub length: f64,
    pub width: f64,
    pub probe_rows: usize,
    pub probe_cols: usize,
    pub total_volume: f64,
    pub probe_height: f64,
    pub drag_linear: Vec3,
    pub drag_quadratic: Vec3,
    pub angular_drag: f64,
}

impl Default for BoardSettings {
    fn default() -> Self {
        let geometry = BoardGeometry::default();
        Self {
            length: 2.2,
            width: 0.6,
            probe_rows: 3,
            probe_cols: 2,
            total_volume: geometry.total_volume,
            probe_height: geometry.probe_height,
            drag_linear: geometry.drag_linear,
            drag_quadratic: geometry.drag_quadratic,
            angular_drag: geometry.angular_drag,
        }
    }
}

impl BoardSettings {
    pub fn geometry(&self) -> BoardGeometry {
        let mut geometry = BoardGeometry::grid(
            self.length,
            self.width,
            self.probe_rows,
            self.probe_cols,
            self.total_volume,
            self.probe_height,
        );
        geometry.drag_linear = self.drag_linear;
        geometry.drag_quadratic = self.drag_quadratic;
        geometry.angular_drag = self.angular_drag;
        geometry
    }

    fn validate(&self) -> Result<()> {
        if !(self.length > 0.0 && self.width > 0.0) {
            return Err(Error::Config(
                "board.length and board.width must be > 0".into(),
            ));
        }
        if self.probe_rows == 0 || self.probe_cols == 0 {
            return Err(Error::Config(
                "board probe grid must have at least one cell".into(),
            ));
        }
        if !(self.total_volume > 0.0) {
            return Err(Error::Config(format!(
                "board.total_volume must be > 0, got {}",
                self.total_volume
            )));
        }
        Ok(())
    }
}

/// Wave field selection: a preset sampled from `seed`, or explicit components.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OceanSettings {
    pub preset: OceanPreset,
    pub seed: u64,
    pub n_components: usize,
    /// Explicit component list; overrides the preset when present.
    pub components: Option<Vec<WaveComponent>>,
    pub gravity: f64,
}

impl Default for OceanSettings {
    fn default() -> Self {
        Self {
            preset: OceanPreset::Flat,
            seed: 42,
            n_components: 8,
            components: None,
            gravity: 9.81,
        }
    }
}

impl OceanSettings {
    /// Builds the wave field, optionally forcing the ripples condition on
    /// or off (scripted trials use still water for the "without" case).
    pub fn build(&self, ripples_override: Option<bool>) -> OceanConfig {
        let preset = match ripples_override {
            Some(true) => OceanPreset::Ripples,
            Some(false) => OceanPreset::Flat,
            None => self.preset,
        };
        if ripples_override.is_none() {
            if let Some(components) = &self.components {
                return OceanConfig {
                    components: components.clone(),
                    gravity: self.gravity,
                    seed: self.seed,
                    ripples_enabled: preset == OceanPreset::Ripples,
                };
            }
        }
        let mut ocean = spectrum_sample(self.seed, preset, self.n_components);
        ocean.gravity = self.gravity;
        ocean
    }

    fn validate(&self) -> Result<()> {
        if self.n_components > 64 {
            return Err(Error::Config(format!(
                "ocean.n_components must be <= 64, got {}",
                self.n_components
            )));
        }
        if let Some(components) = &self.components {
            if components.len() > 64 {
                return Err(Error::Config(format!(
                    "ocean.components must have <= 64 entries, got {}",
                    components.len()
                )));
            }
        }
        self.build(None).validate()
    }
}

/// Top-level simulation configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimConfig {
    pub version: u32,
    /// Fixed integration and command timestep, s.
    pub timestep: f64,
    /// Combined board + rider mass, kg.
    pub mass: f64,
    /// Body-frame inertia diagonal, kg·m².
    pub inertia_diag: Vec3,
    pub board: BoardSettings,
    pub water: Water,
    pub paddle: PaddleConfig,
    pub cueing: CueingConfig,
    pub ocean: OceanSettings,
    /// Platform first-order lag constant, s.
    pub platform_tau: f64,
    /// Default directory for logs and reports.
    pub output_dir: Option<PathBuf>,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            version: CONFIG_VERSION,
            timestep: 0.01,
            mass: 150.0,
            inertia_diag: Vec3::new(60.625, 65.0, 4.625),
            board: BoardSettings::default(),
            water: Water::default(),
            paddle: PaddleConfig::default(),
            cueing: CueingConfig::default(),
            ocean: OceanSettings::default(),
            platform_tau: 0.05,
            output_dir: None,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if self.version != CONFIG_VERSION {
            return Err(Error::Config(format!(
                "unsupported config version {}, expected {CONFIG_VERSION}",
                self.version
            )));
        }
        if !(self.timestep > 0.0 && self.timestep.is_finite()) {
            return Err(Error::Config(format!(
                "timestep must be > 0, got {}",
                self.timestep
            )));
        }
        if !(self.mass > 0.0) {
            return Err(Error::Config(format!(
                "mass must be > 0, got {}",
                self.mass
            )));
        }
        if !(self.inertia_diag.x > 0.0 && self.inertia_diag.y > 0.0 && self.inertia_diag.z > 0.0) {
            return Err(Error::Config("inertia_diag components must be > 0".into()));
        }
        if !(self.water.rho > 0.0 && self.water.gravity > 0.0) {
            return Err(Error::Config(
                "water.rho and water.gravity must be > 0".into(),
            ));
        }
        self.board.validate()?;
        self.board.geometry().validate(self.mass, &self.water)?;
        self.paddle.validate()?;
        self.cueing.validate()?;
        self.ocean.validate()?;
        if !(self.platform_tau > 0.0) {
            return Err(Error::Config(format!(
                "platform_tau must be > 0, got {}",
                self.platform_tau
            )));
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let config: SimConfig = if text.trim().is_empty() {
            SimConfig::default()
        } else {
            serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?
        };
        config.validate()?;
        Ok(config)
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("config serializes");
        text.push('\n');
        text
    }

    pub fn save<P: AsRef<Path>>(&self, path: P) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }
}

/// Loads and validates a config file.
pub fn load_config<P: AsRef<Path>>(path: P) -> Result<SimConfig> {
    let text = std::fs::read_to_string(&path)?;
    SimConfig::from_json(&text)
}
