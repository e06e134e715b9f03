//! `phasesim` — phase-space states of the harmonic oscillator under the
//! classical, quantum, and sawtooth models.
//!
//! States are JSON files (see the README for the schema) or built-in names:
//! rho0, rho_tn, rho_nn, rho_bn, quantum_ground_grid.
//!
//! Exit codes: 0 success (and "valid" for `validate`), 1 invalid state or
//! failed self-test, 2 I/O or numeric failure.

mod figures;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use phasesim::catalog::{self, NamedState};
use phasesim::dynamics;
use phasesim::io;
use phasesim::measures::{self, Axis, EnergyMeasure};
use phasesim::oracle::{self, ValidationConfig};
use phasesim::selftest;
use phasesim::{OscillatorParams, PhaseState};

#[derive(Parser)]
#[command(
    name = "phasesim",
    about = "Phase-space oscillator models: states, spectral measures, dynamics, membership and tunneling checks",
    version
)]
struct Cli {
    /// Planck constant ℏ used for built-in states (files carry their own).
    #[arg(long, global = true, default_value_t = 1.0)]
    hbar: f64,
    /// Oscillator mass m for built-in states.
    #[arg(long, global = true, default_value_t = 1.0)]
    mass: f64,
    /// Angular frequency ω for built-in states.
    #[arg(long, global = true, default_value_t = 1.0)]
    omega: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Classical,
    Quantum,
    Sawtooth,
}

impl ModelArg {
    fn measure(self) -> &'static dyn EnergyMeasure {
        let name = match self {
            ModelArg::Classical => "classical",
            ModelArg::Quantum => "quantum",
            ModelArg::Sawtooth => "sawtooth",
        };
        measures::measure_by_name(name).expect("registered model")
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum AxisArg {
    Position,
    Momentum,
}

impl From<AxisArg> for Axis {
    fn from(a: AxisArg) -> Axis {
        match a {
            AxisArg::Position => Axis::Position,
            AxisArg::Momentum => Axis::Momentum,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FigureId {
    Fig1,
    Fig2,
    Fig4,
}

#[derive(Subcommand)]
enum Command {
    /// Membership oracle: normalization, marginal positivity under the flow,
    /// energy positivity. Exit 0 = valid, 1 = invalid, 2 = failure.
    Validate {
        /// State file or built-in name.
        state: String,
        #[arg(long, value_enum, default_value = "sawtooth")]
        model: ModelArg,
        /// Rotation angles sampled on [0, π).
        #[arg(long, default_value_t = 180)]
        angles: usize,
        /// Interval windows per marginal.
        #[arg(long, default_value_t = 64)]
        intervals: usize,
        /// Energy levels (or classical bins) checked.
        #[arg(long, default_value_t = 64)]
        levels: usize,
        /// Tolerance on negativity and normalization.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Energy outcome distribution of a discrete model.
    Energy {
        state: String,
        #[arg(long, value_enum, default_value = "sawtooth")]
        model: ModelArg,
        /// Highest level reported.
        #[arg(long, default_value_t = 10)]
        levels: usize,
    },
    /// Evolve a state in time and write the result.
    Evolve {
        state: String,
        /// Evolution time t.
        #[arg(long, conflicts_with = "angle")]
        t: Option<f64>,
        /// Rotation angle ωt (alternative to --t).
        #[arg(long)]
        angle: Option<f64>,
        /// Output file (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lin–Dahlsten tunneling test at a threshold α.
    Tunnel {
        state: String,
        #[arg(long, value_enum, default_value = "sawtooth")]
        model: ModelArg,
        /// Threshold energy α > 0 (same units as ℏω).
        #[arg(long)]
        alpha: f64,
    },
    /// Project a state onto position or momentum.
    Marginal {
        state: String,
        #[arg(long, value_enum, default_value = "position")]
        axis: AxisArg,
        /// Density samples across the support.
        #[arg(long, default_value_t = 201)]
        samples: usize,
        /// Lower end of an interval probability query.
        #[arg(long, requires = "to")]
        from: Option<f64>,
        /// Upper end of an interval probability query.
        #[arg(long, requires = "from")]
        to: Option<f64>,
    },
    /// Emit CSV data for the reference figures.
    Figure {
        #[arg(value_enum)]
        id: FigureId,
        #[arg(long)]
        out: PathBuf,
    },
    /// Re-run every headline claim and print a pass/fail table.
    Selftest,
}

fn load_state(spec: &str, params: &OscillatorParams) -> Result<PhaseState> {
    let path = Path::new(spec);
    if path.exists() {
        return io::load_state(path).with_context(|| format!("loading state file {spec}"));
    }
    if let Some(name) = NamedState::parse(spec) {
        return Ok(catalog::build(name, params));
    }
    bail!(
        "`{spec}` is neither a readable file nor a built-in state \
         (built-ins: rho0, rho_tn, rho_nn, rho_bn, quantum_ground_grid)"
    )
}

fn print_json<T: serde::Serialize>(value: &T) -> Result<()> {
    println!("{}", io::to_json_string(value).map_err(|e| anyhow!("{e}"))?);
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    let params = OscillatorParams::new(cli.hbar, cli.mass, cli.omega)
        .map_err(|e| anyhow!("{e}"))?;

    match cli.command {
        Command::Validate {
            state,
            model,
            angles,
            intervals,
            levels,
            tol,
        } => {
            let s = load_state(&state, &params)?;
            let cfg = ValidationConfig {
                time_samples: angles,
                marginal_grid: intervals,
                energy_levels: levels,
                tol_negative: tol,
                tol_norm: tol,
            };
            let report = oracle::validate(&s, model.measure(), &cfg)?;
            print_json(&report)?;
            Ok(if report.verdict {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Energy {
            state,
            model,
            levels,
        } => {
            let s = load_state(&state, &params)?;
            let dist = measures::energy_distribution(model.measure(), &s, levels)?;
            print_json(&dist)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Evolve {
            state,
            t,
            angle,
            out,
        } => {
            let s = load_state(&state, &params)?;
            let time = match (t, angle) {
                (Some(t), None) => t,
                (None, Some(a)) => a / s.params().omega(),
                (None, None) => bail!("pass --t or --angle"),
                _ => unreachable!("clap enforces exclusivity"),
            };
            let (evolved, report) = dynamics::evolve_state_report(&s, time);
            if report.grid_mass_drift > 0.0 {
                eprintln!(
                    "note: grid resampling drifted {:.3e} mass",
                    report.grid_mass_drift
                );
            }
            match out {
                Some(path) => io::save_state(&evolved, &path)?,
                None => println!("{}", io::state_to_json(&evolved)?),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Tunnel {
            state,
            model,
            alpha,
        } => {
            let s = load_state(&state, &params)?;
            let report = oracle::tunneling_test(&s, model.measure(), alpha)?;
            print_json(&report)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Marginal {
            state,
            axis,
            samples,
            from,
            to,
        } => {
            let s = load_state(&state, &params)?;
            let axis: Axis = axis.into();
            let m = measures::marginal(&s, axis)?;
            let scale = axis.scale(s.params());
            let atoms: Vec<serde_json::Value> = m
                .reduced_atoms(oracle::ATOM_MERGE_TOL)
                .into_iter()
                .map(|(x, w)| serde_json::json!({ "location": x * scale, "weight": w }))
                .collect();
            let (lo, hi) = m.support();
            let mut density = Vec::with_capacity(samples);
            if hi > lo {
                for i in 0..samples {
                    let x = lo + (hi - lo) * i as f64 / (samples.max(2) - 1) as f64;
                    density.push(serde_json::json!({
                        "coordinate": x * scale,
                        "density": m.density(x)? / scale,
                    }));
                }
            }
            let interval = match (from, to) {
                (Some(a), Some(b)) => Some(serde_json::json!({
                    "from": a,
                    "to": b,
                    "probability": m.interval_physical(a, b)?,
                })),
                _ => None,
            };
            print_json(&serde_json::json!({
                "axis": axis.name(),
                "atoms": atoms,
                "density": density,
                "interval": interval,
                "total": m.total()?,
            }))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Figure { id, out } => {
            let text = match id {
                FigureId::Fig1 => figures::fig1(&params),
                FigureId::Fig2 => figures::fig2(),
                FigureId::Fig4 => figures::fig4(&params),
            };
            std::fs::write(&out, text)
                .with_context(|| format!("writing {}", out.display()))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Selftest => {
            let results = selftest::run_all();
            let (table, all_pass) = selftest::render_table(&results);
            print!("{table}");
            println!(
                "{}/{} claims passed",
                results.iter().filter(|r| r.pass).count(),
                results.len()
            );
            Ok(if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn main() -> ExitCode {
    phasesim::init_parallelism();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
