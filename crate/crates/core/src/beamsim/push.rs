use serde::{Deserialize, Serialize};

use super::vec3::Vec3;
use crate::error::{Error, Result};
use crate::units::cgs;

/// Classical state of one beam atom, Gaussian-CGS units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamParticle {
    pub id: usize,
    /// cm
    pub position: Vec3,
    /// cm/s
    pub velocity: Vec3,
    /// Magnetic charge, esu.
    pub g: f64,
    /// g
    pub mass: f64,
}

impl BeamParticle {
    pub fn new(id: usize, position: Vec3, velocity: Vec3, g: f64, mass: f64) -> Result<Self> {
        if !(mass > 0.0 && mass.is_finite()) {
            return Err(Error::config("mass", format!("must be > 0, got {mass}")));
        }
        if !(velocity.norm() > 0.0 && velocity.is_finite()) {
            return Err(Error::config("velocity", "speed must be > 0 and finite"));
        }
        if !position.is_finite() || !g.is_finite() {
            return Err(Error::config("position", "non-finite particle state"));
        }
        Ok(Self {
            id,
            position,
            velocity,
            g,
            mass,
        })
    }

    pub fn speed(&self) -> f64 {
        self.velocity.norm()
    }

    pub fn kinetic_energy(&self) -> f64 {
        0.5 * self.mass * self.velocity.dot(self.velocity)
    }
}

/// Force on a magnetic charge moving through a pure electric field:
/// `F = g (B - v x E / c)` with `B = 0`.
pub fn dual_lorentz_force(g: f64, v: Vec3, e: Vec3) -> Vec3 {
    v.cross(e) * (-g / cgs::C)
}

/// Angular frequency `|g| |E| / (m c)` of the velocity rotation.
pub fn gyrofrequency(g: f64, e_magnitude: f64, mass: f64) -> f64 {
    g.abs() * e_magnitude / (mass * cgs::C)
}

/// `r = m v c / (|g| E)` for speed `v` perpendicular to `E`.
pub fn gyroradius(g: f64, speed_perp: f64, e_magnitude: f64, mass: f64) -> f64 {
    mass * speed_perp * cgs::C / (g.abs() * e_magnitude)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PushScheme {
    /// Textbook Boris: rotation vector `t = -Omega dt / 2`, drift `x += v dt`.
    /// Gyrophase error O((omega dt)^3) per step.
    Classic,
    /// Boris rotation with `|t| = tan(omega dt / 2)` and a drift whose component
    /// perpendicular to `E` is scaled by `sin(omega dt/2) / (omega dt/2)`.
    /// Exact for uniform fields.
    #[default]
    ExactGyration,
}

/// Advance one step under a uniform `E` (statvolt/cm).
///
/// The velocity obeys `dv/dt = (g / m c) E x v`: `E` plays the role `-B` plays
/// for an electric charge, so the Boris half-kicks vanish and only the
/// speed-preserving rotation remains.
pub fn boris_step(p: &BeamParticle, e: Vec3, dt: f64) -> BeamParticle {
    boris_step_with(p, e, dt, PushScheme::default())
}

pub fn boris_step_with(p: &BeamParticle, e: Vec3, dt: f64, scheme: PushScheme) -> BeamParticle {
    let e_mag = e.norm();
    let omega = gyrofrequency(p.g, e_mag, p.mass);
    let mut next = *p;
    if omega == 0.0 {
        next.position += p.velocity * dt;
        return next;
    }
    let axis = e * (p.g.signum() / e_mag);
    let half_angle = 0.5 * omega * dt;
    let t_mag = match scheme {
        PushScheme::Classic => half_angle,
        PushScheme::ExactGyration => half_angle.tan(),
    };
    let t = axis * -t_mag;
    let s = t * (2.0 / (1.0 + t_mag * t_mag));
    let v = p.velocity;
    let v_prime = v + v.cross(t);
    let v_new = v + v_prime.cross(s);
    next.velocity = v_new;

    let drift = match scheme {
        PushScheme::Classic => v_new * dt,
        PushScheme::ExactGyration => {
            let e_hat = e * (1.0 / e_mag);
            let v_par = e_hat * v_new.dot(e_hat);
            let v_perp = v_new - v_par;
            (v_par + v_perp * (half_angle.sin() / half_angle)) * dt
        }
    };
    next.position += drift;
    next
}

#[cfg(test)]
mod tests {
    use super::*;

    fn particle(g: f64) -> BeamParticle {
        BeamParticle::new(0, Vec3::ZERO, Vec3::new(2e5, 0.0, 0.0), g, cgs::M_HYDROGEN).unwrap()
    }

    #[test]
    fn force_vanishes_for_zero_charge_or_parallel_motion() {
        let e = Vec3::new(0.0, 0.0, 3.0);
        assert_eq!(dual_lorentz_force(0.0, Vec3::new(1.0, 2.0, 3.0), e), Vec3::ZERO);
        assert_eq!(dual_lorentz_force(cgs::E_CHARGE, Vec3::new(0.0, 0.0, 7.0), e).norm(), 0.0);
    }

    #[test]
    fn force_direction_and_magnitude() {
        let (v, e) = (2e5, 0.05);
        let f = dual_lorentz_force(cgs::E_CHARGE, Vec3::new(v, 0.0, 0.0), Vec3::new(0.0, 0.0, e));
        let expected = cgs::E_CHARGE * v * e / cgs::C;
        assert!((f.y - expected).abs() <= 1e-15 * expected);
        assert_eq!((f.x, f.z), (0.0, 0.0));
        let vel = Vec3::new(v, 3e4, -1e4);
        let f = dual_lorentz_force(cgs::E_CHARGE, vel, Vec3::new(0.01, -0.02, e));
        assert!(f.dot(vel).abs() < 1e-12 * f.norm() * vel.norm());
    }

    #[test]
    fn neutral_particle_flies_straight() {
        let mut p = particle(0.0);
        let dt = 1e-7;
        for _ in 0..1000 {
            p = boris_step(&p, Vec3::new(0.0, 0.0, 1.0), dt);
        }
        assert!((p.position.x - 2e5 * 1e-4).abs() < 1e-12);
        assert_eq!((p.position.y, p.position.z), (0.0, 0.0));
    }

    #[test]
    fn rejects_bad_particles() {
        assert!(BeamParticle::new(0, Vec3::ZERO, Vec3::ZERO, 1.0, 1.0).is_err());
        assert!(BeamParticle::new(0, Vec3::ZERO, Vec3::new(1.0, 0.0, 0.0), 1.0, 0.0).is_err());
    }

    #[test]
    fn one_step_rotation_angle() {
        let e = Vec3::new(0.0, 0.0, 10.0);
        let p = particle(cgs::E_CHARGE);
        let omega = gyrofrequency(p.g, 10.0, p.mass);
        let dt = 0.01 / omega;
        for (scheme, angle) in [
            (PushScheme::ExactGyration, 0.01),
            (PushScheme::Classic, 2.0 * (0.005f64).atan()),
        ] {
            let q = boris_step_with(&p, e, dt, scheme);
            let got = q.velocity.y.atan2(q.velocity.x);
            assert!((got - angle).abs() < 1e-15, "{scheme:?}: {got} vs {angle}");
        }
    }
}
