//! Classical simulation of the beam experiment: hydrogen atoms carrying a
//! hypothetical magnetic charge `g` cross a uniform electric field, are
//! deflected, land on a detector plane, and pass a SQUID loop.
//!
//! Modeling assumption: a magnetic charge in a pure electric field feels the
//! dual Lorentz force `F = -(g/c) v x E`, acting at the atom's centre of mass.
//! All quantities are Gaussian-CGS.

mod config;
mod push;
mod sim;
mod squid;
mod vec3;

pub use config::{n2_species, InputUnits, SimConfig, SourceConfig};
pub use push::{boris_step, boris_step_with, dual_lorentz_force, gyrofrequency, gyroradius, BeamParticle, PushScheme};
pub use sim::{initial_particle, simulate_beam, DetectorRecord, SimOutput, SpeciesSummary, Trajectory};
pub use squid::{disk_solid_angle, squid_flux, FluxTrace, SquidLoop, TrajectoryPoint};
pub use vec3::Vec3;
