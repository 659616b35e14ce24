use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use stark_monopole::beamsim::{simulate_beam, SimConfig, SourceConfig};
use stark_monopole::monopole::charge_table;
use stark_monopole::stark::stark_map;
use stark_monopole::{Execution, UnitSystem};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn beam(c: &mut Criterion) {
    let mut group = c.benchmark_group("simulate_beam");
    group.sample_size(10);
    for (name, mode) in MODES {
        let cfg = SimConfig {
            source: SourceConfig {
                particles_per_species: 2000,
                ..SourceConfig::default()
            },
            trajectory_samples: 0,
            execution: mode,
            ..SimConfig::default()
        };
        group.bench_with_input(BenchmarkId::new(name, 2000), &cfg, |b, cfg| {
            b.iter(|| simulate_beam(black_box(cfg)).unwrap())
        });
    }
    group.finish();
}

fn tables(c: &mut Criterion) {
    let units = UnitSystem::default();
    let mut group = c.benchmark_group("charge_table");
    for (name, mode) in MODES {
        group.bench_with_input(BenchmarkId::new(name, 6), &6u32, |b, &n| {
            b.iter(|| charge_table(black_box(n), &units, mode).unwrap())
        });
    }
    group.finish();

    let grid: Vec<f64> = (1..=16).map(|k| k as f64 * 1e-6).collect();
    let mut group = c.benchmark_group("stark_map");
    for (name, mode) in MODES {
        group.bench_with_input(BenchmarkId::new(name, 6), &grid, |b, grid| {
            b.iter(|| stark_map(6, black_box(grid), mode).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, beam, tables);
criterion_main!(benches);
