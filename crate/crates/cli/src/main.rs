//! Command-line front end: single-point evaluation, figure-reproduction
//! sweeps, self-verification suites, and Gibbs-state queries.
//!
//! Exit codes: 0 success, 1 verification failure or runtime error, 2
//! usage/parse error.

mod config;
mod output;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use mdi_core::dynamics::evolve_spec;
use mdi_core::measures::{report_state, MeasureReport};
use mdi_core::model::{build_hamiltonian, gibbs_state, DipoleAxis};
use mdi_core::states::StateSpec;
use mdi_core::sweep::{presets, run_sweep, SweepConfig, SweepRecord, SweepTable};
use mdi_core::verify;
use mdi_core::{Error, Result};

#[derive(Parser)]
#[command(
    name = "mdi",
    version,
    about = "Two-qubit magnetic dipolar interaction dynamics: concurrence, coherence, and purity"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Csv,
    Jsonl,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate all measures for one initial state at one time
    Eval {
        /// Initial state, e.g. `pure:theta_a=1.5708,theta_b=1.5708`,
        /// `mixed:axis=z,ra=0.5,rb=-0.5`, `ent:w=0.25`, `depol:w=0.25,p=0.8`
        #[arg(long)]
        state: String,
        /// Time in units of D/hbar
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
        /// Dipole axis: `x`, `y`, `z`, or three comma-separated components
        #[arg(long, default_value = "z")]
        axis: String,
        /// Coupling strength D
        #[arg(long, default_value_t = 1.0)]
        coupling_d: f64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Run a parameter sweep and write records to a file
    Sweep {
        /// Named preset: fig1, fig2-rho3, fig2-rho1, fig3, fig4-coherence
        #[arg(long, conflicts_with_all = ["config", "family"])]
        preset: Option<String>,
        /// Key=value config file mirroring the sweep fields
        #[arg(long, conflicts_with = "family")]
        config: Option<PathBuf>,
        /// Family for an explicit sweep: pure, mixed-x, mixed-z, ent, depol
        #[arg(long)]
        family: Option<String>,
        /// Fix a parameter, e.g. --fix theta_b=1.5708 (repeatable)
        #[arg(long = "fix")]
        fix: Vec<String>,
        /// Declare an axis, e.g. --grid theta_a=0:6.2832:101 (repeatable,
        /// outermost first)
        #[arg(long = "grid")]
        grid: Vec<String>,
        /// Comma-separated quantities: concurrence, coherence_a,
        /// coherence_b, purity
        #[arg(long)]
        quantities: Option<String>,
        /// Shorthand for --fix t=<value>
        #[arg(long, allow_hyphen_values = true)]
        t: Option<f64>,
        #[arg(long, default_value = "z")]
        axis: String,
        #[arg(long, default_value_t = 1.0)]
        coupling_d: f64,
        /// Output file path
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Run a self-verification suite
    Verify {
        /// One of: oracles, symmetries, thermal, all
        #[arg(long)]
        suite: String,
        /// Random draws per oracle check
        #[arg(long, default_value_t = 1000)]
        draws: usize,
    },
    /// Measures of the Gibbs thermal state at inverse temperature beta
    Thermal {
        #[arg(long)]
        beta: f64,
        #[arg(long, default_value = "z")]
        axis: String,
        #[arg(long, default_value_t = 1.0)]
        coupling_d: f64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

/// `x` / `y` / `z` or three comma-separated components (normalized).
pub fn parse_axis(spec: &str, coupling_d: f64) -> Result<DipoleAxis> {
    let v: [f64; 3] = match spec {
        "x" => [1.0, 0.0, 0.0],
        "y" => [0.0, 1.0, 0.0],
        "z" => [0.0, 0.0, 1.0],
        other => {
            let parts: Vec<&str> = other.split(',').collect();
            if parts.len() != 3 {
                return Err(Error::Parse {
                    field: "axis".into(),
                    message: format!("expected x, y, z, or three components, got `{other}`"),
                });
            }
            let mut v = [0.0; 3];
            for (slot, part) in v.iter_mut().zip(&parts) {
                *slot = part.trim().parse().map_err(|_| Error::Parse {
                    field: "axis".into(),
                    message: format!("bad component `{part}`"),
                })?;
            }
            v
        }
    };
    DipoleAxis::from_unnormalized(v, coupling_d)
}

fn parse_fix(item: &str) -> Result<(String, f64)> {
    let (name, value) = item.split_once('=').ok_or_else(|| Error::Parse {
        field: "fix".into(),
        message: format!("expected name=value, got `{item}`"),
    })?;
    let v: f64 = value.trim().parse().map_err(|_| Error::Parse {
        field: name.trim().to_string(),
        message: format!("bad number `{value}`"),
    })?;
    Ok((name.trim().to_string(), v))
}

fn parse_grid_flag(item: &str) -> Result<mdi_core::sweep::GridAxis> {
    let (name, spec) = item.split_once('=').ok_or_else(|| Error::Parse {
        field: "grid".into(),
        message: format!("expected name=start:stop:count, got `{item}`"),
    })?;
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::Parse {
            field: format!("grid {name}"),
            message: format!("expected start:stop:count, got `{spec}`"),
        });
    }
    let number = |s: &str| -> Result<f64> {
        s.trim().parse().map_err(|_| Error::Parse {
            field: format!("grid {name}"),
            message: format!("bad number `{s}`"),
        })
    };
    let count: usize = parts[2].trim().parse().map_err(|_| Error::Parse {
        field: format!("grid {name}"),
        message: format!("bad point count `{}`", parts[2]),
    })?;
    Ok(mdi_core::sweep::GridAxis::new(
        name.trim(),
        number(parts[0])?,
        number(parts[1])?,
        count,
    ))
}

/// Replace a fixed parameter or add it; refuses to shadow a swept axis.
fn override_fixed(cfg: &mut SweepConfig, name: &str, value: f64) -> Result<()> {
    if cfg.axes.iter().any(|a| a.name == name) {
        return Err(Error::Config(format!(
            "parameter `{name}` is swept in this configuration; cannot fix it"
        )));
    }
    if let Some(slot) = cfg.fixed.iter_mut().find(|(n, _)| n == name) {
        slot.1 = value;
    } else {
        cfg.fixed.push((name.to_string(), value));
    }
    Ok(())
}

fn report_table(label: &str, label_value: f64, report: &MeasureReport) -> SweepTable {
    SweepTable {
        columns: vec![
            label.to_string(),
            "concurrence".into(),
            "coherence_a".into(),
            "coherence_b".into(),
            "purity".into(),
        ],
        records: vec![SweepRecord {
            values: vec![
                label_value,
                report.concurrence,
                report.coherence_a,
                report.coherence_b,
                report.purity,
            ],
        }],
    }
}

fn print_table(table: &SweepTable, format: Format) -> std::io::Result<()> {
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match format {
        Format::Csv => output::write_csv(table, &mut lock),
        Format::Jsonl => output::write_jsonl(table, &mut lock),
    }
}

/// Command failure with the exit code it maps to: 2 for usage and parse
/// problems, 1 for everything that happens after the arguments were valid.
struct CliError {
    message: String,
    code: u8,
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::Parse { .. } | Error::InvalidArgument(_) | Error::Config(_) => 2,
            Error::NumericalInstability(_) => 1,
        };
        CliError {
            message: err.to_string(),
            code,
        }
    }
}

fn io_error(e: std::io::Error) -> CliError {
    CliError {
        message: e.to_string(),
        code: 1,
    }
}

type CmdResult<T> = std::result::Result<T, CliError>;

fn run_eval(state: &str, t: f64, axis: &str, coupling_d: f64, format: Format) -> CmdResult<()> {
    let spec: StateSpec = state.parse()?;
    let axis = parse_axis(axis, coupling_d)?;
    let evolved = evolve_spec(&spec, &axis, t)?;
    let report = report_state(&evolved)?;
    print_table(&report_table("t", t, &report), format).map_err(io_error)?;
    Ok(())
}

fn run_thermal(beta: f64, axis: &str, coupling_d: f64, format: Format) -> CmdResult<()> {
    if !beta.is_finite() || beta < 0.0 {
        return Err(Error::Parse {
            field: "beta".into(),
            message: format!("inverse temperature must be non-negative, got {beta}"),
        }
        .into());
    }
    let axis = parse_axis(axis, coupling_d)?;
    let rho = gibbs_state(&build_hamiltonian(&axis), beta)?;
    let report = mdi_core::measures::report_mixed(&rho)?;
    print_table(&report_table("beta", beta, &report), format).map_err(io_error)?;
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn run_sweep_cmd(
    preset: Option<String>,
    config_path: Option<PathBuf>,
    family: Option<String>,
    fix: Vec<String>,
    grid: Vec<String>,
    quantities: Option<String>,
    t: Option<f64>,
    axis: &str,
    coupling_d: f64,
    out: &PathBuf,
    format: Format,
) -> CmdResult<()> {
    let explicit = family.is_some();
    let mut cfg: SweepConfig = if let Some(name) = preset {
        presets::by_name(&name).ok_or_else(|| Error::Parse {
            field: "preset".into(),
            message: format!(
                "unknown preset `{name}` (expected one of {})",
                presets::NAMES.join(", ")
            ),
        })?
    } else if let Some(path) = config_path {
        config::load(&path)?
    } else if let Some(family) = family {
        let mut fixed = Vec::new();
        for item in &fix {
            fixed.push(parse_fix(item)?);
        }
        let axes = grid
            .iter()
            .map(|g| parse_grid_flag(g))
            .collect::<Result<Vec<_>>>()?;
        let quantities = quantities
            .as_deref()
            .unwrap_or("concurrence")
            .split(',')
            .map(|q| q.trim().parse())
            .collect::<Result<Vec<_>>>()?;
        SweepConfig {
            family: family.parse()?,
            fixed,
            axes,
            hamiltonian_axis: parse_axis(axis, coupling_d)?,
            quantities,
        }
    } else {
        return Err(Error::Parse {
            field: "sweep".into(),
            message: "one of --preset, --config, or --family is required".into(),
        }
        .into());
    };

    // overrides apply on top of presets and config files
    if let Some(t) = t {
        override_fixed(&mut cfg, "t", t)?;
    }
    if !explicit {
        for item in &fix {
            let (name, value) = parse_fix(item)?;
            override_fixed(&mut cfg, &name, value)?;
        }
    }

    let table = run_sweep(&cfg)?;
    let file = File::create(out).map_err(|e| CliError {
        message: format!("cannot write {}: {e}", out.display()),
        code: 1,
    })?;
    let mut writer = BufWriter::new(file);
    match format {
        Format::Csv => output::write_csv(&table, &mut writer).map_err(io_error)?,
        Format::Jsonl => output::write_jsonl(&table, &mut writer).map_err(io_error)?,
    }
    writer.flush().map_err(io_error)?;
    Ok(())
}

/// Runs the requested suites; returns false if any check failed.
fn run_verify(suite: &str, draws: usize) -> CmdResult<bool> {
    let mut checks = Vec::new();
    match suite {
        "oracles" => checks.extend(verify::oracle_suite(draws, verify::DEFAULT_SEED)?),
        "symmetries" => checks.extend(verify::symmetry_suite(verify::DEFAULT_SEED)?),
        "thermal" => {
            checks.extend(verify::thermal_suite(20, verify::DEFAULT_SEED)?);
            checks.push(verify::axis_equivalence_check(50, verify::DEFAULT_SEED)?);
        }
        "all" => {
            checks.extend(verify::oracle_suite(draws, verify::DEFAULT_SEED)?);
            checks.extend(verify::symmetry_suite(verify::DEFAULT_SEED)?);
            checks.extend(verify::thermal_suite(20, verify::DEFAULT_SEED)?);
            checks.push(verify::axis_equivalence_check(50, verify::DEFAULT_SEED)?);
        }
        other => {
            return Err(Error::Parse {
                field: "suite".into(),
                message: format!(
                    "unknown suite `{other}` (expected oracles, symmetries, thermal, or all)"
                ),
            }
            .into())
        }
    }
    let mut all_passed = true;
    for check in &checks {
        let status = if check.passed() { "PASS" } else { "FAIL" };
        println!(
            "{status} {}: max deviation {:.3e} (tolerance {:.1e})",
            check.name, check.max_deviation, check.tolerance
        );
        all_passed &= check.passed();
    }
    Ok(all_passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result: CmdResult<bool> = match cli.command {
        Command::Eval {
            state,
            t,
            axis,
            coupling_d,
            format,
        } => run_eval(&state, t, &axis, coupling_d, format).map(|_| true),
        Command::Sweep {
            preset,
            config,
            family,
            fix,
            grid,
            quantities,
            t,
            axis,
            coupling_d,
            out,
            format,
        } => run_sweep_cmd(
            preset, config, family, fix, grid, quantities, t, &axis, coupling_d, &out, format,
        )
        .map(|_| true),
        Command::Verify { suite, draws } => run_verify(&suite, draws),
        Command::Thermal {
            beta,
            axis,
            coupling_d,
            format,
        } => run_thermal(beta, &axis, coupling_d, format).map(|_| true),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {}", err.message);
            ExitCode::from(err.code)
        }
    }
}
