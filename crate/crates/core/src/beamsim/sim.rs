use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::Serialize;

use super::config::SimConfig;
use super::push::{boris_step_with, BeamParticle};
use super::squid::{squid_flux, FluxTrace, TrajectoryPoint};
use super::vec3::Vec3;
use crate::error::Result;
use crate::units::cgs;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DetectorRecord {
    pub particle_id: usize,
    /// Units of e.
    pub species_g: f64,
    /// cm
    pub y: f64,
    /// cm
    pub z: f64,
    /// s
    pub time_of_flight: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub particle_id: usize,
    pub species_g: f64,
    pub points: Vec<TrajectoryPoint>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpeciesSummary {
    pub g_over_e: f64,
    pub launched: usize,
    pub hits: usize,
    pub mean_y: f64,
    pub mean_z: f64,
    pub sigma_y: f64,
    pub sigma_z: f64,
    pub stderr_y: f64,
    pub stderr_z: f64,
}

#[derive(Debug, Clone)]
pub struct SimOutput {
    pub dt: f64,
    /// Strided trajectories of the recorded particles, id order.
    pub trajectories: Vec<Trajectory>,
    /// One per particle that reached the detector, id order.
    pub detector: Vec<DetectorRecord>,
    /// Strided flux traces of the recorded particles, id order.
    pub flux: Vec<FluxTrace>,
    /// One per species, config order.
    pub summary: Vec<SpeciesSummary>,
}

struct Outcome {
    hit: Option<DetectorRecord>,
    path: Option<Vec<TrajectoryPoint>>,
}

/// SplitMix64 finalizer, used to derive independent per-particle streams.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Initial state of particle `index` of species `species`. Noise depends only on
/// `(rng_seed, index)`, so every species sees the same source draws.
pub fn initial_particle(cfg: &SimConfig, species: usize, index: usize) -> Result<BeamParticle> {
    let n = cfg.source.particles_per_species;
    let (stream, sign) = if cfg.source.antithetic {
        (index / 2, if index.is_multiple_of(2) { 1.0 } else { -1.0 })
    } else {
        (index, 1.0)
    };
    let mut rng = ChaCha8Rng::seed_from_u64(mix(cfg.rng_seed ^ mix(stream as u64)));
    let pos = Normal::new(0.0, cfg.source.transverse_sigma).expect("validated sigma");
    let vel = Normal::new(0.0, cfg.source.velocity_sigma).expect("validated sigma");
    let (y, z) = (pos.sample(&mut rng), pos.sample(&mut rng));
    let (vy, vz) = (vel.sample(&mut rng), vel.sample(&mut rng));
    BeamParticle::new(
        species * n + index,
        Vec3::new(0.0, sign * y, sign * z),
        Vec3::new(cfg.source.speed, sign * vy, sign * vz),
        cfg.charge_species[species] * cgs::E_CHARGE,
        cfg.mass,
    )
}

fn field_at(cfg: &SimConfig, x: f64) -> Vec3 {
    if (0.0..=cfg.chamber_length).contains(&x) {
        cfg.e_field
    } else {
        Vec3::ZERO
    }
}

fn propagate(cfg: &SimConfig, start: BeamParticle, species_g: f64, dt: f64, record: bool) -> Outcome {
    let squid_x = cfg.squid_loop.axial_position;
    let stop_x = cfg.detector_plane.max(squid_x);
    let max_steps = (4.0 * stop_x / (cfg.source.speed * dt)).ceil() as usize + 16;

    let mut p = start;
    let mut t = 0.0;
    let mut path = record.then(|| vec![TrajectoryPoint { t, position: p.position }]);
    let mut hit = None;
    for step in 1..=max_steps {
        let next = boris_step_with(&p, field_at(cfg, p.position.x), dt, cfg.scheme);
        let t_next = step as f64 * dt;
        if hit.is_none() && p.position.x < cfg.detector_plane && next.position.x >= cfg.detector_plane {
            let frac = (cfg.detector_plane - p.position.x) / (next.position.x - p.position.x);
            let at = p.position + (next.position - p.position) * frac;
            hit = Some(DetectorRecord {
                particle_id: p.id,
                species_g,
                y: at.y,
                z: at.z,
                time_of_flight: t + frac * dt,
            });
        }
        p = next;
        t = t_next;
        if let Some(path) = path.as_mut() {
            path.push(TrajectoryPoint { t, position: p.position });
        }
        if hit.is_some() && (!record || p.position.x > squid_x) {
            break;
        }
    }
    Outcome { hit, path }
}

fn stride_points<T: Copy>(items: &[T], stride: usize, keep: impl Fn(&T) -> bool) -> Vec<T> {
    let last = items.len().saturating_sub(1);
    items
        .iter()
        .enumerate()
        .filter(|(k, it)| k % stride == 0 || *k == last || keep(it))
        .map(|(_, it)| *it)
        .collect()
}

fn summarize(g_over_e: f64, launched: usize, hits: &[&DetectorRecord]) -> SpeciesSummary {
    let n = hits.len() as f64;
    let mean = |f: &dyn Fn(&DetectorRecord) -> f64| hits.iter().map(|h| f(h)).sum::<f64>() / n;
    let (my, mz) = (mean(&|h| h.y), mean(&|h| h.z));
    let var = |f: &dyn Fn(&DetectorRecord) -> f64, m: f64| {
        if hits.len() < 2 {
            0.0
        } else {
            hits.iter().map(|h| (f(h) - m).powi(2)).sum::<f64>() / (n - 1.0)
        }
    };
    let (sy, sz) = (var(&|h| h.y, my).sqrt(), var(&|h| h.z, mz).sqrt());
    SpeciesSummary {
        g_over_e,
        launched,
        hits: hits.len(),
        mean_y: my,
        mean_z: mz,
        sigma_y: sy,
        sigma_z: sz,
        stderr_y: sy / n.sqrt(),
        stderr_z: sz / n.sqrt(),
    }
}

/// Fly every particle of every species from the chamber entrance to the
/// detector. Deterministic for a given config, independent of scheduling.
pub fn simulate_beam(config: &SimConfig) -> Result<SimOutput> {
    let cfg = config.clone().into_gaussian();
    cfg.validate()?;
    let dt = cfg.resolve_dt()?;
    let per_species = cfg.source.particles_per_species;
    let total = per_species * cfg.charge_species.len();

    let outcomes: Vec<Result<(Outcome, f64, bool)>> = cfg.execution.map_range(total, |id| {
        let (species, index) = (id / per_species, id % per_species);
        let g = cfg.charge_species[species];
        let record = index < cfg.trajectory_samples;
        let start = initial_particle(&cfg, species, index)?;
        Ok((propagate(&cfg, start, g, dt, record), g, record))
    });

    let mut detector = Vec::with_capacity(total);
    let mut trajectories = Vec::new();
    let mut flux = Vec::new();
    for (id, outcome) in outcomes.into_iter().enumerate() {
        let (outcome, g, _) = outcome?;
        if let Some(hit) = outcome.hit {
            detector.push(hit);
        }
        if let Some(path) = outcome.path {
            let mut trace = squid_flux(id, g * cgs::E_CHARGE, &path, &cfg.squid_loop);
            let crossing = trace.crossing_time;
            trace.samples = stride_points(&trace.samples, cfg.trajectory_stride, |s| Some(s.0) == crossing);
            flux.push(trace);
            trajectories.push(Trajectory {
                particle_id: id,
                species_g: g,
                points: stride_points(&path, cfg.trajectory_stride, |_| false),
            });
        }
    }

    let summary = cfg
        .charge_species
        .iter()
        .enumerate()
        .map(|(s, &g)| {
            let ids = s * per_species..(s + 1) * per_species;
            let hits: Vec<&DetectorRecord> = detector.iter().filter(|h| ids.contains(&h.particle_id)).collect();
            summarize(g, per_species, &hits)
        })
        .collect();

    Ok(SimOutput {
        dt,
        trajectories,
        detector,
        flux,
        summary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::beamsim::SourceConfig;

    fn small() -> SimConfig {
        SimConfig {
            source: SourceConfig {
                particles_per_species: 64,
                ..SourceConfig::default()
            },
            ..SimConfig::default()
        }
    }

    #[test]
    fn zero_field_leaves_all_species_centered() {
        let cfg = SimConfig {
            e_field: Vec3::ZERO,
            ..small()
        };
        let out = simulate_beam(&cfg).unwrap();
        for s in &out.summary {
            assert_eq!(s.hits, 64);
            assert!(s.mean_y.abs() < 1e-15 && s.mean_z.abs() < 1e-15);
        }
    }

    #[test]
    fn hits_lie_on_detector_and_ids_are_ordered() {
        let out = simulate_beam(&small()).unwrap();
        assert_eq!(out.detector.len(), 3 * 64);
        assert!(out.detector.windows(2).all(|w| w[0].particle_id < w[1].particle_id));
        assert_eq!(out.trajectories.len(), 9);
        assert!(out.flux.iter().all(|f| f.crossed_plane));
    }

    #[test]
    fn antithetic_pairs_mirror_noise() {
        let cfg = small();
        let a = initial_particle(&cfg, 0, 4).unwrap();
        let b = initial_particle(&cfg, 0, 5).unwrap();
        assert_eq!(a.position.y, -b.position.y);
        assert_eq!(a.position.z, -b.position.z);
        let c = initial_particle(&cfg, 2, 4).unwrap();
        assert_eq!(a.position, c.position);
        assert_eq!(c.id, 2 * 64 + 4);
    }
}
