//! File formats: CSV with one header row preceded by `#` metadata lines, and
//! the beam-simulation `summary.json`.

use std::fmt::Write as _;

use serde::Serialize;

use crate::beamsim::{SimConfig, SimOutput, SpeciesSummary};
use crate::monopole::ChargeRecord;
use crate::stark::StarkMapRow;
use crate::units::{cgs, UnitSystem, FIELD_AU_IN_V_PER_CM};

/// `#`-prefixed header lines echoed into every output.
#[derive(Debug, Clone, Default)]
pub struct Metadata {
    entries: Vec<(String, String)>,
}

impl Metadata {
    pub fn new(units: &str) -> Self {
        let mut m = Self::default();
        m.push("generator", format!("stark-monopole {}", env!("CARGO_PKG_VERSION")));
        m.push("units", units);
        m
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.entries.push((key.into(), value.to_string()));
        self
    }

    pub fn with_atomic_constants(mut self, units: &UnitSystem) -> Self {
        self.push("alpha", units.alpha)
            .push("hbar", units.hbar())
            .push("e", units.e())
            .push("c", units.c())
            .push("field_au_in_V_per_cm", FIELD_AU_IN_V_PER_CM);
        self
    }

    pub fn with_gaussian_constants(mut self) -> Self {
        self.push("e_esu", cgs::E_CHARGE)
            .push("m_hydrogen_g", cgs::M_HYDROGEN)
            .push("c_cm_per_s", cgs::C);
        self
    }

    fn render(&self, out: &mut String) {
        for (k, v) in &self.entries {
            let _ = writeln!(out, "# {k}: {v}");
        }
    }

    pub fn as_pairs(&self) -> &[(String, String)] {
        &self.entries
    }
}

pub fn charges_csv(records: &[ChargeRecord], meta: &Metadata) -> String {
    let mut out = String::new();
    meta.render(&mut out);
    out.push_str("n,n1,n2,m,spin,g_over_e,ratio_over_alpha\n");
    for r in records {
        let l = &r.label;
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            l.n(),
            l.n1(),
            l.n2(),
            l.m(),
            r.spin,
            r.g + 0.0,
            r.ratio + 0.0
        );
    }
    out
}

pub fn stark_csv(rows: &[StarkMapRow], meta: &Metadata) -> String {
    let mut out = String::new();
    meta.render(&mut out);
    out.push_str("n,n1,n2,m,F_au,shift_hartree\n");
    for r in rows {
        let l = &r.label;
        let _ = writeln!(
            out,
            "{},{},{},{},{:e},{:e}",
            l.n(),
            l.n1(),
            l.n2(),
            l.m(),
            r.field_au,
            r.shift + 0.0
        );
    }
    out
}

pub fn trajectories_csv(sim: &SimOutput, meta: &Metadata) -> String {
    let mut out = String::new();
    meta.render(&mut out);
    out.push_str("id,species,t,x,y,z\n");
    for tr in &sim.trajectories {
        for p in &tr.points {
            let _ = writeln!(
                out,
                "{},{},{:e},{:e},{:e},{:e}",
                tr.particle_id, tr.species_g, p.t, p.position.x, p.position.y, p.position.z
            );
        }
    }
    out
}

pub fn detector_csv(sim: &SimOutput, meta: &Metadata) -> String {
    let mut out = String::new();
    meta.render(&mut out);
    out.push_str("id,species,y,z,time_of_flight\n");
    for h in &sim.detector {
        let _ = writeln!(
            out,
            "{},{},{:e},{:e},{:e}",
            h.particle_id, h.species_g, h.y, h.z, h.time_of_flight
        );
    }
    out
}

pub fn flux_csv(sim: &SimOutput, meta: &Metadata) -> String {
    let mut out = String::new();
    meta.render(&mut out);
    out.push_str("id,t,flux\n");
    for tr in &sim.flux {
        for (t, f) in &tr.samples {
            let _ = writeln!(out, "{},{:e},{:e}", tr.particle_id, t, f);
        }
    }
    out
}

#[derive(Serialize)]
struct Summary<'a> {
    metadata: std::collections::BTreeMap<&'a str, &'a str>,
    dt_s: f64,
    config: &'a SimConfig,
    species: &'a [SpeciesSummary],
    flux_jumps: Vec<FluxJump>,
}

#[derive(Serialize)]
struct FluxJump {
    id: usize,
    crossed_plane: bool,
    interior_crossings: i32,
    total_jump: f64,
}

pub fn summary_json(sim: &SimOutput, config: &SimConfig, meta: &Metadata) -> String {
    let summary = Summary {
        metadata: meta.as_pairs().iter().map(|(k, v)| (k.as_str(), v.as_str())).collect(),
        dt_s: sim.dt,
        config,
        species: &sim.summary,
        flux_jumps: sim
            .flux
            .iter()
            .map(|f| FluxJump {
                id: f.particle_id,
                crossed_plane: f.crossed_plane,
                interior_crossings: f.interior_crossings,
                total_jump: f.total_jump(),
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&summary).expect("summary serializes");
    s.push('\n');
    s
}
