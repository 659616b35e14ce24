use serde::{Deserialize, Serialize};

use super::push::{gyrofrequency, PushScheme};
use super::squid::SquidLoop;
use super::vec3::Vec3;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::monopole::charge_table;
use crate::units::{cgs, field_si_to_gaussian, UnitSystem};

/// Unit system of a config file. Internally everything is Gaussian-CGS.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InputUnits {
    /// statvolt/cm, cm, cm/s, g, s
    #[default]
    #[serde(alias = "cgs")]
    Gaussian,
    /// V/m, m, m/s, kg, s
    Si,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SourceConfig {
    /// Beam speed along +x.
    pub speed: f64,
    /// Gaussian sigma of the transverse (y, z) start position.
    pub transverse_sigma: f64,
    /// Gaussian sigma of the transverse velocity components.
    pub velocity_sigma: f64,
    pub particles_per_species: usize,
    /// Draw noise in mirrored pairs `(+y, +z)`, `(-y, -z)`.
    pub antithetic: bool,
}

impl Default for SourceConfig {
    fn default() -> Self {
        Self {
            speed: 2.0e5,
            transverse_sigma: 0.01,
            velocity_sigma: 0.0,
            particles_per_species: 1000,
            antithetic: true,
        }
    }
}

/// Beam experiment geometry and fields.
///
/// The field fills the chamber `0 <= x <= chamber_length`; particles start at
/// `x = 0` moving along +x and are recorded where they cross `detector_plane`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimConfig {
    pub units: InputUnits,
    pub e_field: Vec3,
    pub chamber_length: f64,
    /// Omitted: chosen so the velocity turns by at most 1e-3 rad per step and
    /// the chamber spans at least 1000 steps.
    pub dt: Option<f64>,
    pub source: SourceConfig,
    /// Magnetic charges in units of e.
    pub charge_species: Vec<f64>,
    pub detector_plane: f64,
    pub squid_loop: SquidLoop,
    pub rng_seed: u64,
    pub mass: f64,
    /// Particles per species whose trajectories and flux traces are kept.
    pub trajectory_samples: usize,
    /// Keep every n-th step of recorded trajectories.
    pub trajectory_stride: usize,
    pub execution: Execution,
    pub scheme: PushScheme,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            units: InputUnits::Gaussian,
            // 10 V/cm along z
            e_field: Vec3::new(0.0, 0.0, 10.0 / cgs::VOLTS_PER_STATVOLT),
            chamber_length: 10.0,
            dt: None,
            source: SourceConfig::default(),
            charge_species: n2_species(),
            detector_plane: 20.0,
            squid_loop: SquidLoop {
                radius: 0.5,
                axial_position: 15.0,
            },
            rng_seed: 2024,
            mass: cgs::M_HYDROGEN,
            trajectory_samples: 3,
            trajectory_stride: 20,
            execution: Execution::default(),
            scheme: PushScheme::default(),
        }
    }
}

/// Distinct charges (units of e) of the n = 2 table, descending.
pub fn n2_species() -> Vec<f64> {
    let table = charge_table(2, &UnitSystem::default(), Execution::Sequential).expect("n = 2 manifold");
    let mut gs: Vec<f64> = table.iter().map(|r| r.g.round() + 0.0).collect();
    gs.sort_by(|a, b| b.total_cmp(a));
    gs.dedup();
    gs
}

impl SimConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: SimConfig = serde_json::from_str(text).map_err(|e| Error::config("<json>", e.to_string()))?;
        let cfg = cfg.into_gaussian();
        cfg.validate()?;
        Ok(cfg)
    }

    /// Convert SI inputs to Gaussian-CGS; no-op for Gaussian configs.
    pub fn into_gaussian(mut self) -> Self {
        if self.units == InputUnits::Si {
            let e = self.e_field;
            self.e_field = Vec3::new(
                field_si_to_gaussian(e.x),
                field_si_to_gaussian(e.y),
                field_si_to_gaussian(e.z),
            );
            self.chamber_length *= 100.0;
            self.detector_plane *= 100.0;
            self.squid_loop.radius *= 100.0;
            self.squid_loop.axial_position *= 100.0;
            self.source.speed *= 100.0;
            self.source.transverse_sigma *= 100.0;
            self.source.velocity_sigma *= 100.0;
            self.mass *= 1000.0;
            self.units = InputUnits::Gaussian;
        }
        self
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| -> Result<()> {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::config(name, format!("must be finite and > 0, got {v}")))
            }
        };
        if !self.e_field.is_finite() {
            return Err(Error::config("e_field", "components must be finite"));
        }
        positive("chamber_length", self.chamber_length)?;
        if let Some(dt) = self.dt {
            positive("dt", dt)?;
        }
        positive("source.speed", self.source.speed)?;
        if !(self.source.transverse_sigma >= 0.0 && self.source.transverse_sigma.is_finite()) {
            return Err(Error::config("source.transverse_sigma", "must be finite and >= 0"));
        }
        if !(self.source.velocity_sigma >= 0.0 && self.source.velocity_sigma.is_finite()) {
            return Err(Error::config("source.velocity_sigma", "must be finite and >= 0"));
        }
        if self.source.particles_per_species == 0 {
            return Err(Error::config("source.particles_per_species", "must be at least 1"));
        }
        if self.charge_species.is_empty() || self.charge_species.iter().any(|g| !g.is_finite()) {
            return Err(Error::config("charge_species", "need at least one finite value"));
        }
        positive("detector_plane", self.detector_plane)?;
        positive("squid_loop.radius", self.squid_loop.radius)?;
        if !self.squid_loop.axial_position.is_finite() {
            return Err(Error::config("squid_loop.axial_position", "must be finite"));
        }
        positive("mass", self.mass)?;
        if self.trajectory_stride == 0 {
            return Err(Error::config("trajectory_stride", "must be at least 1"));
        }
        Ok(())
    }

    /// Largest velocity-rotation rate over all species, rad/s.
    pub fn max_gyrofrequency(&self) -> f64 {
        let g_max = self.charge_species.iter().fold(0.0f64, |acc, g| acc.max(g.abs()));
        gyrofrequency(g_max * cgs::E_CHARGE, self.e_field.norm(), self.mass)
    }

    /// The step used by the simulation: `dt` if given (rejected when it turns the
    /// velocity by more than 0.1 rad per step), otherwise the default rule.
    pub fn resolve_dt(&self) -> Result<f64> {
        let omega = self.max_gyrofrequency();
        let suggested = {
            let spatial = self.chamber_length / (1000.0 * self.source.speed);
            if omega > 0.0 {
                spatial.min(1e-3 / omega)
            } else {
                spatial
            }
        };
        match self.dt {
            None => Ok(suggested),
            Some(dt) => {
                let angle = omega * dt;
                if angle > 0.1 {
                    Err(Error::UnstableTimeStep { dt, angle, suggested })
                } else {
                    Ok(dt)
                }
            }
        }
    }
}
