use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};

use stark_monopole::beamsim::{simulate_beam, SimConfig};
use stark_monopole::io::{
    charges_csv, detector_csv, flux_csv, stark_csv, summary_json, trajectories_csv, Metadata,
};
use stark_monopole::manifold::build_so4;
use stark_monopole::monopole::charge_table;
use stark_monopole::stark::stark_map;
use stark_monopole::units::field_vcm_to_au;
use stark_monopole::verify::run_verification;
use stark_monopole::{Error, Execution, Tolerances, UnitSystem};

#[derive(Debug, Parser)]
#[command(name = "stark-monopole", version, about = "SO(4) operator checks, charge tables, Stark maps and beam simulation")]
struct Cli {
    /// Directory for output files (created if missing).
    #[arg(long, global = true, default_value = ".")]
    out_dir: PathBuf,

    /// Overrides `rng_seed` of a simulation config; echoed into all metadata.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// `au`: fields in atomic units, configs in Gaussian units unless they say
    /// otherwise. `si`: fields in V/m, configs without a `units` key read as SI.
    #[arg(long, global = true, value_enum, default_value_t = UnitMode::Au)]
    units: UnitMode,

    #[arg(long, global = true, value_enum, default_value_t = ToleranceProfile::Default)]
    tolerance_profile: ToleranceProfile,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum UnitMode {
    Au,
    Si,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ToleranceProfile {
    Default,
    Strict,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the operator, manifold and charge invariant suite; writes verify_report.json.
    Verify {
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..=8))]
        n_max: u32,
        /// Also write operators_n<N>.json with L, A and the spherical transform.
        #[arg(long)]
        dump_operators: bool,
    },
    /// Magnetic charge table of manifold n; writes charges.csv.
    Charges {
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..=10))]
        n: u32,
    },
    /// First-order Stark shifts for n = 1..=n_max over a field grid; writes stark_map.csv.
    StarkMap {
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..=10))]
        n_max: u32,
        /// Field values in the `--units` system (a.u. or V/m). Repeatable, comma separated.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        field: Vec<f64>,
        /// Field values in atomic units, whatever `--units` says.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        field_au: Vec<f64>,
        /// Field values in V/cm.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        field_vcm: Vec<f64>,
        /// Without explicit fields: uniform grid F_max/steps, ..., F_max (a.u.).
        #[arg(long, default_value_t = 1e-4)]
        field_max_au: f64,
        #[arg(long, default_value_t = 10)]
        steps: usize,
    },
    /// Fly a beam through the deflection chamber and past the SQUID loop.
    Simulate {
        /// JSON config; omit for the built-in defaults.
        config: Option<PathBuf>,
    },
}

/// Exit 1: numerical or check failure. Exit 2: bad input.
enum Failure {
    Numerical(anyhow::Error),
    Usage(anyhow::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidConfig { .. }
            | Error::InvalidField { .. }
            | Error::InvalidLabel { .. }
            | Error::InvalidSpin(_)
            | Error::ZeroManifold => Failure::Usage(e.into()),
            _ => Failure::Numerical(e.into()),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Numerical(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Numerical(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let tol = match cli.tolerance_profile {
        ToleranceProfile::Default => Tolerances::default(),
        ToleranceProfile::Strict => Tolerances::strict(),
    };
    let units = UnitSystem::default();
    fs::create_dir_all(&cli.out_dir)
        .with_context(|| format!("cannot create output directory {}", cli.out_dir.display()))?;

    match &cli.command {
        Command::Verify { n_max, dump_operators } => {
            let report = run_verification(*n_max, &tol, &units)?;
            let json = serde_json::to_string_pretty(&report).context("serializing report")? + "\n";
            write(&cli.out_dir, "verify_report.json", &json)?;
            if *dump_operators {
                for n in 1..=*n_max {
                    let dump = build_so4(n)?.dump();
                    let json = serde_json::to_string_pretty(&dump).context("serializing operators")? + "\n";
                    write(&cli.out_dir, &format!("operators_n{n}.json"), &json)?;
                }
            }
            let failures: Vec<_> = report.failures().collect();
            println!(
                "{} checks, {} failed, max [A1,A2]-iL3 residual {:.3e}",
                report.checks.len(),
                failures.len(),
                report.max_residual("A1A2_commutator").unwrap_or(0.0)
            );
            if !failures.is_empty() {
                for f in &failures {
                    let n = f.n.map(|n| format!(" (n = {n})")).unwrap_or_default();
                    eprintln!("FAILED {}{n}: residual {:.3e} > tolerance {:.1e}", f.name, f.residual, f.tolerance);
                }
                return Err(Failure::Numerical(anyhow!("{} invariant checks failed", failures.len())));
            }
        }
        Command::Charges { n } => {
            let table = charge_table(*n, &units, Execution::default())?;
            let meta = metadata(cli, "atomic (g in units of e)").with_atomic_constants(&units);
            write(&cli.out_dir, "charges.csv", &charges_csv(&table, &meta))?;
            for r in &table {
                println!("{} spin {:<4} g/e = {:+} ratio = {:+} alpha", r.label, r.spin, r.g + 0.0, r.ratio + 0.0);
            }
        }
        Command::StarkMap {
            n_max,
            field,
            field_au,
            field_vcm,
            field_max_au,
            steps,
        } => {
            let grid = field_grid(cli.units, field, field_au, field_vcm, *field_max_au, *steps)?;
            let rows = stark_map(*n_max, &grid, Execution::default())?;
            let mut meta = metadata(cli, "atomic (F in a.u., shift in hartree)").with_atomic_constants(&units);
            meta.push("field_input_units", match cli.units {
                UnitMode::Au => "au",
                UnitMode::Si => "V/m",
            });
            write(&cli.out_dir, "stark_map.csv", &stark_csv(&rows, &meta))?;
            println!("{} rows, {} field values, n <= {n_max}", rows.len(), grid.len());
        }
        Command::Simulate { config } => {
            let mut cfg = load_config(config.as_deref(), cli.units)?;
            if let Some(seed) = cli.seed {
                cfg.rng_seed = seed;
            }
            let out = simulate_beam(&cfg)?;
            let mut meta = metadata(cli, "gaussian (cm, s, g, statvolt/cm, esu)").with_gaussian_constants();
            meta.push("rng_seed", cfg.rng_seed).push("dt_s", out.dt);
            write(&cli.out_dir, "trajectories.csv", &trajectories_csv(&out, &meta))?;
            write(&cli.out_dir, "detector.csv", &detector_csv(&out, &meta))?;
            write(&cli.out_dir, "flux.csv", &flux_csv(&out, &meta))?;
            write(&cli.out_dir, "summary.json", &summary_json(&out, &cfg, &meta))?;
            for s in &out.summary {
                println!(
                    "g/e = {:+}: {} of {} hits, mean (y, z) = ({:.6e}, {:.6e}) cm, stderr ({:.2e}, {:.2e})",
                    s.g_over_e + 0.0,
                    s.hits,
                    s.launched,
                    s.mean_y,
                    s.mean_z,
                    s.stderr_y,
                    s.stderr_z
                );
            }
        }
    }
    Ok(())
}

fn metadata(cli: &Cli, units: &str) -> Metadata {
    let mut meta = Metadata::new(units);
    if let Some(seed) = cli.seed {
        meta.push("seed", seed);
    }
    meta.push(
        "tolerance_profile",
        match cli.tolerance_profile {
            ToleranceProfile::Default => "default",
            ToleranceProfile::Strict => "strict",
        },
    );
    meta
}

fn field_grid(
    mode: UnitMode,
    field: &[f64],
    field_au: &[f64],
    field_vcm: &[f64],
    field_max_au: f64,
    steps: usize,
) -> Result<Vec<f64>, Failure> {
    let mut grid: Vec<f64> = field
        .iter()
        .map(|&f| match mode {
            UnitMode::Au => f,
            // V/m -> V/cm -> a.u.
            UnitMode::Si => field_vcm_to_au(f / 100.0),
        })
        .chain(field_au.iter().copied())
        .chain(field_vcm.iter().map(|&f| field_vcm_to_au(f)))
        .collect();
    if grid.is_empty() {
        if steps == 0 {
            return Err(Failure::Usage(anyhow!("--steps must be at least 1")));
        }
        grid = (1..=steps).map(|k| field_max_au * k as f64 / steps as f64).collect();
    }
    if let Some(bad) = grid.iter().find(|f| !(**f > 0.0 && f.is_finite())) {
        return Err(Failure::Usage(anyhow!("field values must be finite and > 0, got {bad}")));
    }
    Ok(grid)
}

fn load_config(path: Option<&Path>, mode: UnitMode) -> Result<SimConfig, Failure> {
    let Some(path) = path else {
        let cfg = SimConfig::default();
        cfg.validate()?;
        return Ok(cfg);
    };
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read config {}", path.display()))
        .map_err(Failure::Usage)?;
    let mut value: serde_json::Value = serde_json::from_str(&text)
        .with_context(|| format!("{} is not valid JSON", path.display()))
        .map_err(Failure::Usage)?;
    if mode == UnitMode::Si {
        if let Some(obj) = value.as_object_mut() {
            obj.entry("units").or_insert_with(|| "si".into());
        }
    }
    let cfg = SimConfig::from_json(&value.to_string())
        .map_err(|e| Failure::Usage(anyhow::Error::new(e).context(format!("in {}", path.display()))))?;
    Ok(cfg)
}

fn write(dir: &Path, name: &str, contents: &str) -> Result<(), Failure> {
    let path = dir.join(name);
    fs::write(&path, contents).with_context(|| format!("cannot write {}", path.display()))?;
    Ok(())
}
