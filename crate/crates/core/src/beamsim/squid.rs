//! Magnetic flux of a point monopole through a circular SQUID loop.
//!
//! The loop lies in the plane `x = axial_position`, centred on the beam axis,
//! normal along +x. The field `B = g r_hat / r^2` threads the loop with flux
//! `g * Omega`, where `Omega` is the solid angle the loop disk subtends at the
//! charge. Upstream the trace is `g * Omega`; each downstream passage through
//! the loop interior adds the `4 pi g` branch jump, giving `g (4 pi - Omega)`
//! afterwards, so the trace is continuous across the loop and its total jump
//! tends to `4 pi g`. On axis this is `2 pi g (1 - cos theta)`.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::vec3::Vec3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SquidLoop {
    /// cm
    pub radius: f64,
    /// cm, along the beam axis.
    pub axial_position: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryPoint {
    pub t: f64,
    pub position: Vec3,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FluxTrace {
    pub particle_id: usize,
    /// (t in s, flux in gauss cm^2)
    pub samples: Vec<(f64, f64)>,
    /// False when the trajectory never reaches the loop plane; `samples` is then empty.
    pub crossed_plane: bool,
    /// Net number of downstream passages through the loop interior.
    pub interior_crossings: i32,
    /// Time of the first plane crossing, if any.
    pub crossing_time: Option<f64>,
}

impl FluxTrace {
    /// Last minus first flux sample.
    pub fn total_jump(&self) -> f64 {
        match (self.samples.first(), self.samples.last()) {
            (Some(a), Some(b)) => b.1 - a.1,
            _ => 0.0,
        }
    }
}

/// Solid angle of a disk of radius `radius` seen from a point at axial distance
/// `axial` from the disk plane and radial distance `radial` from its axis.
///
/// Off axis the radial integral is done in closed form, leaving a smooth
/// periodic integral over the azimuth:
/// `Omega = |d| * int_0^{2 pi} R^2 / (D (r0 D + r0^2 - R s cos phi)) dphi`,
/// with `D` the distance to the rim point and `r0` the distance to the centre.
/// Where `r0^2 < R s cos phi` (inside the rim, close to the plane) that
/// denominator cancels, and the equivalent
/// `(r0 - (r0^2 - R s cos phi) / D) / k`, `k = d^2 + s^2 sin^2 phi`, is used.
pub fn disk_solid_angle(axial: f64, radial: f64, radius: f64) -> f64 {
    let d = axial.abs();
    let s = radial.abs();
    let r = radius;
    let plane_limit = if s < r {
        2.0 * PI
    } else if s == r {
        PI
    } else {
        0.0
    };
    if d == 0.0 {
        return plane_limit;
    }
    if s == 0.0 {
        return 2.0 * PI * (1.0 - d / d.hypot(r));
    }
    // Corrections are O(d / |R - s|) relative.
    if d <= 1e-13 * (r - s).abs() {
        return plane_limit;
    }
    let r0_sq = s * s + d * d;
    let r0 = r0_sq.sqrt();
    let integrand = |phi: f64| {
        let (sin, c) = phi.sin_cos();
        let rim = (r * r - 2.0 * r * s * c + r0_sq).sqrt();
        let w = r0_sq - r * s * c;
        if w >= 0.0 {
            r * r / (rim * (r0 * rim + w))
        } else {
            (r0 - w / rim) / (d * d + s * s * sin * sin)
        }
    };
    // Symmetric in phi, so integrate over [0, pi] and double.
    2.0 * d * integrate(&integrand, 0.0, PI, 1e-13)
}

// 15-point Kronrod extension of 7-point Gauss-Legendre; non-negative nodes of [-1, 1].
const KRONROD_NODES: [f64; 8] = [
    0.9914553711208126,
    0.9491079123427585,
    0.8648644233597691,
    0.7415311855993945,
    0.5860872354676911,
    0.4058451513773972,
    0.20778495500789848,
    0.0,
];
const KRONROD_WEIGHTS: [f64; 8] = [
    0.022935322010529224,
    0.06309209262997856,
    0.10479001032225019,
    0.14065325971552592,
    0.1690047266392679,
    0.19035057806478542,
    0.20443294007529889,
    0.20948214108472782,
];
// Gauss weights for Kronrod nodes 1, 3, 5 and the centre.
const GAUSS_WEIGHTS: [f64; 4] = [
    0.1294849661688697,
    0.27970539148927664,
    0.3818300505051189,
    0.4179591836734694,
];

fn kronrod_15(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut kronrod = KRONROD_WEIGHTS[7] * fc;
    let mut gauss = GAUSS_WEIGHTS[3] * fc;
    for k in 0..7 {
        let dx = half * KRONROD_NODES[k];
        let pair = f(centre - dx) + f(centre + dx);
        kronrod += KRONROD_WEIGHTS[k] * pair;
        if k % 2 == 1 {
            gauss += GAUSS_WEIGHTS[k / 2] * pair;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

/// Globally adaptive Gauss-Kronrod: bisect the interval with the largest error
/// estimate until the summed estimate drops below `rel_tol * |integral|` or
/// the interval budget runs out.
fn integrate(f: &impl Fn(f64) -> f64, a: f64, b: f64, rel_tol: f64) -> f64 {
    const MAX_INTERVALS: usize = 2000;
    let mut parts = vec![(a, b, kronrod_15(f, a, b))];
    loop {
        let total: f64 = parts.iter().map(|p| p.2 .0).sum();
        let error: f64 = parts.iter().map(|p| p.2 .1).sum();
        if error <= rel_tol * total.abs() || parts.len() >= MAX_INTERVALS {
            return total;
        }
        let worst = (0..parts.len())
            .max_by(|&i, &j| parts[i].2 .1.total_cmp(&parts[j].2 .1))
            .expect("non-empty");
        let (lo, hi, _) = parts.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        parts.push((lo, mid, kronrod_15(f, lo, mid)));
        parts.push((mid, hi, kronrod_15(f, mid, hi)));
    }
}

/// Flux `Phi(t)` (gauss cm^2) of charge `g` (esu) through `squid` along a
/// sampled trajectory. A sample is inserted at each plane crossing.
pub fn squid_flux(particle_id: usize, g: f64, trajectory: &[TrajectoryPoint], squid: &SquidLoop) -> FluxTrace {
    let axial = |p: &TrajectoryPoint| squid.axial_position - p.position.x;
    let radial = |p: Vec3| p.y.hypot(p.z);

    // Points on the plane count as downstream.
    let upstream = |d: f64| d > 0.0;
    let crossed = trajectory
        .windows(2)
        .any(|w| upstream(axial(&w[0])) != upstream(axial(&w[1])));
    if !crossed {
        return FluxTrace {
            particle_id,
            samples: Vec::new(),
            crossed_plane: false,
            interior_crossings: 0,
            crossing_time: None,
        };
    }

    let flux_at = |d: f64, s: f64, crossings: i32| -> f64 {
        let omega = disk_solid_angle(d, s, squid.radius);
        let signed = if upstream(d) { omega } else { -omega };
        // `+ 0.0` turns -0.0 into 0.0 when g = 0.
        g * (signed + 4.0 * PI * crossings as f64) + 0.0
    };

    let mut samples = Vec::with_capacity(trajectory.len() + 2);
    let mut crossings = 0;
    let mut crossing_time = None;
    for (k, p) in trajectory.iter().enumerate() {
        let d = axial(p);
        if k > 0 {
            let prev = &trajectory[k - 1];
            let da = axial(prev);
            if upstream(da) != upstream(d) {
                let frac = da / (da - d);
                let t = prev.t + frac * (p.t - prev.t);
                let at = prev.position + (p.position - prev.position) * frac;
                let inside = radial(at) < squid.radius;
                crossing_time.get_or_insert(t);
                if upstream(da) && inside {
                    crossings += 1;
                }
                samples.push((t, flux_at(0.0, radial(at), crossings)));
                if !upstream(da) && inside {
                    crossings -= 1;
                }
                if d == 0.0 {
                    continue;
                }
            }
        }
        samples.push((p.t, flux_at(d, radial(p.position), crossings)));
    }

    FluxTrace {
        particle_id,
        samples,
        crossed_plane: true,
        interior_crossings: crossings,
        crossing_time,
    }
}
