//! Parametric ocean surface: a Gerstner sum of sinusoids with seeded
//! spectrum sampling and a ripples preset.
//!
//! All queries are closed-form sums over the component list. The surface
//! height field is `h(x, z, t) = Σ Aᵢ sin θᵢ`; the normal and surface
//! velocity are analytic derivatives of the same sum, never numerical
//! differentiation. Horizontal chop displacement is carried per component
//! by the Gerstner steepness parameter.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::math::Vec3;

/// One sinusoidal wave train.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WaveComponent {
    /// Crest height above mean water level, m.
    pub amplitude: f64,
    /// Crest-to-crest distance, m.
    pub wavelength: f64,
    /// Unit propagation direction in the xz-plane.
    pub direction: Vec3,
    /// Phase offset, rad.
    pub phase: f64,
    /// Gerstner chop parameter in [0, 1].
    pub steepness: f64,
}

impl WaveComponent {
    /// Wave number k = 2π / wavelength.
    pub fn wave_number(&self) -> f64 {
        TAU / self.wavelength
    }

    /// Deep-water dispersion: ω = sqrt(g·k).
    pub fn angular_frequency(&self, gravity: f64) -> f64 {
        (gravity * self.wave_number()).sqrt()
    }

    fn theta(&self, x: f64, z: f64, t: f64, gravity: f64) -> f64 {
        let k = self.wave_number();
        k * (self.direction.x * x + self.direction.z * z) - self.angular_frequency(gravity) * t
            + self.phase
    }
}

/// Spectrum presets for seeded sampling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OceanPreset {
    /// No components; height 0 everywhere.
    Flat,
    /// Small wind-driven waves: amplitudes ≤ 0.05 m, wavelengths 0.5–3 m.
    Ripples,
    /// Long waves: amplitudes 0.3–1 m, wavelengths 20–60 m.
    Swell,
}

/// An immutable wave field. All queries are pure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OceanConfig {
    pub components: Vec<WaveComponent>,
    pub gravity: f64,
    pub seed: u64,
    pub ripples_enabled: bool,
}

impl Default for OceanConfig {
    fn default() -> Self {
        Self::flat()
    }
}

/// Ceiling used when rescaling steepness so the Gerstner surface cannot
/// self-intersect (the exact limit is Σ q·A·k = 1).
const STEEPNESS_BUDGET: f64 = 0.9;

impl OceanConfig {
    /// Flat water: no components.
    pub fn flat() -> Self {
        Self {
            components: Vec::new(),
            gravity: 9.81,
            seed: 0,
            ripples_enabled: false,
        }
    }

    /// Checks component invariants: non-negative amplitude, positive
    /// wavelength, unit in-plane direction, and the Gerstner
    /// self-intersection bound Σ q·A·k ≤ 1.
    pub fn validate(&self) -> Result<()> {
        if !(self.gravity > 0.0) {
            return Err(Error::Config(format!(
                "ocean.gravity must be > 0, got {}",
                self.gravity
            )));
        }
        let mut chop_sum = 0.0;
        for (i, c) in self.components.iter().enumerate() {
            if !(c.amplitude >= 0.0) {
                return Err(Error::Config(format!("wave[{i}].amplitude must be >= 0")));
            }
            if !(c.wavelength > 0.0) {
                return Err(Error::Config(format!("wave[{i}].wavelength must be > 0")));
            }
            if !(0.0..=1.0).contains(&c.steepness) {
                return Err(Error::Config(format!(
                    "wave[{i}].steepness must be in [0,1]"
                )));
            }
            if c.direction.y.abs() > 1e-9 || (c.direction.norm() - 1.0).abs() > 1e-9 {
                return Err(Error::Config(format!(
                    "wave[{i}].direction must be a unit vector in the xz-plane"
                )));
            }
            chop_sum += c.steepness * c.amplitude * c.wave_number();
        }
        if chop_sum > 1.0 + 1e-9 {
            return Err(Error::Config(format!(
                "sum of steepness*amplitude*k is {chop_sum:.3}, must be <= 1 \
                 (Gerstner surface would self-intersect)"
            )));
        }
        Ok(())
    }

    /// Surface height above mean water level at `(x, z)` and time `t`.
    pub fn height_at(&self, x: f64, z: f64, t: f64) -> f64 {
        self.components
            .iter()
            .map(|c| c.amplitude * c.theta(x, z, t, self.gravity).sin())
            .sum()
    }

    /// Full displaced surface position for the material point parameterized
    /// by `(x, z)`: horizontal Gerstner chop plus the height sum.
    pub fn displaced_position_at(&self, x: f64, z: f64, t: f64) -> Vec3 {
        let mut p = Vec3::new(x, 0.0, z);
        for c in &self.components {
            let theta = c.theta(x, z, t, self.gravity);
            let chop = c.steepness * c.amplitude * theta.cos();
            p.x += chop * c.direction.x;
            p.z += chop * c.direction.z;
            p.y += c.amplitude * theta.sin();
        }
        p
    }

    /// Unit surface normal from the analytic height-field gradient.
    pub fn normal_at(&self, x: f64, z: f64, t: f64) -> Vec3 {
        let mut dh_dx = 0.0;
        let mut dh_dz = 0.0;
        for c in &self.components {
            let slope = c.amplitude * c.wave_number() * c.theta(x, z, t, self.gravity).cos();
            dh_dx += slope * c.direction.x;
            dh_dz += slope * c.direction.z;
        }
        Vec3::new(-dh_dx, 1.0, -dh_dz)
            .normalized()
            .expect("normal cannot vanish: y component is 1")
    }

    /// Velocity of the surface point at `(x, z)`: vertical component is
    /// ∂h/∂t, horizontal components are the chop displacement rates.
    pub fn surface_velocity_at(&self, x: f64, z: f64, t: f64) -> Vec3 {
        let mut v = Vec3::ZERO;
        for c in &self.components {
            let theta = c.theta(x, z, t, self.gravity);
            let omega = c.angular_frequency(self.gravity);
            v.y -= c.amplitude * omega * theta.cos();
            let chop_rate = c.steepness * c.amplitude * omega * theta.sin();
            v.x += chop_rate * c.direction.x;
            v.z += chop_rate * c.direction.z;
        }
        v
    }
}

/// Draws a component list from a parametric directional spectrum.
/// Deterministic for a given `(seed, preset, n_components)`.
pub fn spectrum_sample(seed: u64, preset: OceanPreset, n_components: usize) -> OceanConfig {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ripples = preset == OceanPreset::Ripples;
    let (amp_range, len_range, spread) = match preset {
        OceanPreset::Flat => {
            return OceanConfig {
                seed,
                ..OceanConfig::flat()
            };
        }
        OceanPreset::Ripples => ((0.015, 0.05), (0.5, 3.0), 60f64.to_radians()),
        OceanPreset::Swell => ((0.3, 1.0), (20.0, 60.0), 30f64.to_radians()),
    };

    let mut components: Vec<WaveComponent> = (0..n_components)
        .map(|_| {
            let angle = rng.gen_range(-spread..=spread);
            WaveComponent {
                amplitude: rng.gen_range(amp_range.0..=amp_range.1),
                wavelength: rng.gen_range(len_range.0..=len_range.1),
                direction: Vec3::new(angle.sin(), 0.0, angle.cos()),
                phase: rng.gen_range(0.0..TAU),
                steepness: rng.gen_range(0.3..=0.7),
            }
        })
        .collect();

    // Keep the combined chop inside the self-intersection budget.
    let chop_sum: f64 = components
        .iter()
        .map(|c| c.steepness * c.amplitude * c.wave_number())
        .sum();
    if chop_sum > STEEPNESS_BUDGET {
        let scale = STEEPNESS_BUDGET / chop_sum;
        for c in &mut components {
            c.steepness *= scale;
        }
    }

    OceanConfig {
        components,
        gravity: 9.81,
        seed,
        ripples_enabled: ripples,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::Rng;

    #[test]
    fn flat_preset_is_flat() {
        let ocean = spectrum_sample(7, OceanPreset::Flat, 16);
        assert!(ocean.components.is_empty());
        assert_eq!(ocean.height_at(3.0, -2.0, 1.5), 0.0);
        assert_eq!(ocean.normal_at(3.0, -2.0, 1.5), Vec3::Y);
        assert_eq!(ocean.surface_velocity_at(3.0, -2.0, 1.5), Vec3::ZERO);
    }

    #[test]
    fn same_seed_same_components() {
        let a = spectrum_sample(99, OceanPreset::Ripples, 8);
        let b = spectrum_sample(99, OceanPreset::Ripples, 8);
        assert_eq!(a, b);
    }

    #[test]
    fn ripple_amplitude_bound_over_1000_seeds() {
        for seed in 0..1000 {
            let ocean = spectrum_sample(seed, OceanPreset::Ripples, 8);
            for c in &ocean.components {
                assert!(
                    c.amplitude <= 0.05,
                    "seed {seed}: amplitude {}",
                    c.amplitude
                );
                assert!((0.5..=3.0).contains(&c.wavelength));
            }
            ocean.validate().unwrap();
        }
    }

    #[test]
    fn swell_amplitude_and_wavelength_ranges() {
        for seed in 0..100 {
            let ocean = spectrum_sample(seed, OceanPreset::Swell, 8);
            for c in &ocean.components {
                assert!((0.3..=1.0).contains(&c.amplitude));
                assert!((20.0..=60.0).contains(&c.wavelength));
            }
            ocean.validate().unwrap();
        }
    }

    fn single_wave() -> OceanConfig {
        OceanConfig {
            components: vec![WaveComponent {
                amplitude: 0.8,
                wavelength: 12.0,
                direction: Vec3::new(0.6, 0.0, 0.8),
                phase: 0.3,
                steepness: 0.5,
            }],
            gravity: 9.81,
            seed: 0,
            ripples_enabled: false,
        }
    }

    #[test]
    fn crest_height_equals_amplitude() {
        let ocean = single_wave();
        let c = ocean.components[0];
        // Solve θ = π/2 along the propagation direction at t = 0.
        let along = (std::f64::consts::FRAC_PI_2 - c.phase) / c.wave_number();
        let (x, z) = (along * c.direction.x, along * c.direction.z);
        assert_relative_eq!(ocean.height_at(x, z, 0.0), c.amplitude, epsilon = 1e-12);
    }

    #[test]
    fn spatial_periodicity_along_direction() {
        let ocean = single_wave();
        let c = ocean.components[0];
        let (x, z, t) = (1.7, -4.2, 2.9);
        let shifted = ocean.height_at(
            x + c.wavelength * c.direction.x,
            z + c.wavelength * c.direction.z,
            t,
        );
        assert_relative_eq!(shifted, ocean.height_at(x, z, t), epsilon = 1e-9);
    }

    #[test]
    fn analytic_normal_matches_central_difference() {
        let ocean = spectrum_sample(5, OceanPreset::Ripples, 8);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let h = 1e-4;
        for _ in 0..10_000 {
            let x = rng.gen_range(-50.0..50.0);
            let z = rng.gen_range(-50.0..50.0);
            let t = rng.gen_range(0.0..30.0);
            let dh_dx = (ocean.height_at(x + h, z, t) - ocean.height_at(x - h, z, t)) / (2.0 * h);
            let dh_dz = (ocean.height_at(x, z + h, t) - ocean.height_at(x, z - h, t)) / (2.0 * h);
            let numeric = Vec3::new(-dh_dx, 1.0, -dh_dz).normalized().unwrap();
            let analytic = ocean.normal_at(x, z, t);
            assert!((analytic - numeric).norm() < 1e-5);
        }
    }

    #[test]
    fn analytic_velocity_matches_time_difference() {
        let ocean = spectrum_sample(5, OceanPreset::Swell, 8);
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let h = 1e-5;
        for _ in 0..10_000 {
            let x = rng.gen_range(-50.0..50.0);
            let z = rng.gen_range(-50.0..50.0);
            let t = rng.gen_range(0.0..30.0);
            let dh_dt = (ocean.height_at(x, z, t + h) - ocean.height_at(x, z, t - h)) / (2.0 * h);
            assert!((ocean.surface_velocity_at(x, z, t).y - dh_dt).abs() < 1e-5);
        }
    }

    #[test]
    fn height_time_average_over_full_periods_is_zero() {
        let ocean = single_wave();
        let c = ocean.components[0];
        let period = TAU / c.angular_frequency(ocean.gravity);
        let n = 4096;
        let mean: f64 = (0..n)
            .map(|k| ocean.height_at(2.0, 3.0, 3.0 * period * k as f64 / n as f64))
            .sum::<f64>()
            / n as f64;
        assert!(mean.abs() < 1e-6);
    }

    #[test]
    fn chop_displaces_toward_crest() {
        let ocean = single_wave();
        let p = ocean.displaced_position_at(0.4, 0.9, 1.3);
        // Horizontal displacement bounded by steepness budget.
        let c = ocean.components[0];
        let max_chop = c.steepness * c.amplitude;
        assert!((p.x - 0.4).abs() <= max_chop + 1e-12);
        assert!((p.z - 0.9).abs() <= max_chop + 1e-12);
        assert_relative_eq!(p.y, ocean.height_at(0.4, 0.9, 1.3), epsilon = 1e-12);
    }

    #[test]
    fn self_intersection_bound_rejected() {
        let mut ocean = single_wave();
        ocean.components[0].amplitude = 10.0;
        ocean.components[0].steepness = 1.0;
        assert!(ocean.validate().is_err());
    }
}
