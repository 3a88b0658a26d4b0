//! Command-line front end.
//!
//! Three commands, all driven by the same TOML configuration:
//!
//! * `ergotropy-map` — the (θ, φ) ergotropy surface for the configured
//!   system, with the grid maximum/minimum and their coordinates printed.
//! * `simulate` — the charging protocol as a trajectory table with stage
//!   markers and a summary of peak/final ergotropy and stage times.
//! * `sweep` — self-discharge decay times across a parameter axis.
//!
//! Exit codes: 0 success, 1 configuration errors, 2 numerical failures.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::config::{OutputFormat, RunConfig};
use crate::ergotropy::{ergotropy_surface, max_ergotropy};
use crate::error::{Error, Result};
use crate::liouville::LiouvilleVector;
use crate::protocol::run_protocol;
use crate::report;
use crate::sweep::{self_discharge_sweep, SweepAxis, SweepBase, SweepParams};

#[derive(Debug, Parser)]
#[command(
    name = "dqd-battery",
    about = "Double-quantum-dot quantum battery: ergotropy maps, feedback charging, self-discharge sweeps",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// TOML configuration file; defaults apply when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output path (overrides [output] path).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format (overrides [output] format).
    #[arg(long, value_parser = parse_format)]
    format: Option<OutputFormat>,
    /// Also emit a ready-to-run gnuplot script next to the output.
    #[arg(long)]
    gnuplot: bool,
}

fn parse_format(s: &str) -> std::result::Result<OutputFormat, String> {
    match s.to_ascii_lowercase().as_str() {
        "csv" => Ok(OutputFormat::Csv),
        "json" => Ok(OutputFormat::Json),
        other => Err(format!("unknown format '{other}' (expected csv or json)")),
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Ergotropy over the Bloch sphere on a (θ, φ) grid.
    ErgotropyMap {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Integrate the charging protocol and write the trajectory.
    Simulate {
        #[command(flatten)]
        common: CommonArgs,
        /// Dump the assembled stage generators as JSON.
        #[arg(long)]
        dump_generators: Option<PathBuf>,
    },
    /// Self-discharge sweep over epsilon, tc, or temperature.
    Sweep {
        #[command(flatten)]
        common: CommonArgs,
        /// Sweep axis (overrides [sweep] axis).
        #[arg(long)]
        axis: Option<SweepAxis>,
        /// Comma-separated sweep values (overrides [sweep] values).
        #[arg(long, value_delimiter = ',')]
        values: Option<Vec<f64>>,
        /// Shuffles only the order work is handed to the pool.
        #[arg(long)]
        seed: Option<u64>,
    },
}

impl clap::ValueEnum for SweepAxis {
    fn value_variants<'a>() -> &'a [Self] {
        &[SweepAxis::Epsilon, SweepAxis::Tc, SweepAxis::Temperature]
    }

    fn to_possible_value(&self) -> Option<clap::builder::PossibleValue> {
        Some(clap::builder::PossibleValue::new(self.name()))
    }
}

/// Parse `argv` and run; errors are printed to stderr and mapped to the
/// documented exit codes (usage problems count as configuration errors).
pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::ErgotropyMap { common } => {
            let cfg = load_config(&common)?;
            cmd_ergotropy_map(&cfg, common.gnuplot)
        }
        Command::Simulate { common, dump_generators } => {
            let cfg = load_config(&common)?;
            cmd_simulate(&cfg, common.gnuplot, dump_generators.as_deref())
        }
        Command::Sweep { common, axis, values, seed } => {
            let mut cfg = load_config(&common)?;
            if let Some(axis) = axis {
                cfg.sweep.axis = axis;
            }
            if let Some(values) = values {
                cfg.sweep.values = values;
            }
            cmd_sweep(&cfg, common.gnuplot, seed)
        }
    }
}

fn load_config(common: &CommonArgs) -> Result<RunConfig> {
    let mut cfg = match &common.config {
        Some(path) => RunConfig::from_path(path)?,
        None => RunConfig::default(),
    };
    if let Some(out) = &common.out {
        cfg.output.path = out.display().to_string();
    }
    if let Some(format) = common.format {
        cfg.output.format = format;
    }
    for w in cfg.warnings() {
        eprintln!("warning: {w}");
    }
    Ok(cfg)
}

fn write_output(path: &str, body: &[u8]) -> Result<()> {
    let mut f = std::fs::File::create(path)?;
    f.write_all(body)?;
    Ok(())
}

fn write_gnuplot(out_path: &str, script: String) -> Result<()> {
    let path = Path::new(out_path).with_extension("gp");
    std::fs::write(&path, script)?;
    println!("gnuplot script: {}", path.display());
    Ok(())
}

/// `ergotropy-map`: θ×φ grid of the closed-form ergotropy.
pub fn cmd_ergotropy_map(cfg: &RunConfig, gnuplot: bool) -> Result<()> {
    let h = cfg.hamiltonian();
    let map = &cfg.ergotropy_map;
    let surface = ergotropy_surface(&h, map.r, map.n_theta, map.n_phi)?;

    let mut body = Vec::new();
    match cfg.output.format {
        OutputFormat::Csv => report::write_surface_csv(&mut body, &surface)?,
        OutputFormat::Json => {
            serde_json::to_writer(&mut body, &report::surface_json(&surface))
                .map_err(|e| Error::Io(e.into()))?;
            body.push(b'\n');
        }
    }
    write_output(&cfg.output.path, &body)?;

    let (analytic_max, maximizer) = max_ergotropy(&h);
    let gmax = surface.max_point();
    let gmin = surface.min_point();
    println!("ergotropy map: {} ({} x {} grid, r = {})", cfg.output.path, map.n_theta, map.n_phi, map.r);
    println!("grid max {} at (theta, phi) = ({}, {})", gmax.ergotropy, gmax.theta, gmax.phi);
    println!("grid min {} at (theta, phi) = ({}, {})", gmin.ergotropy, gmin.theta, gmin.phi);
    println!(
        "analytic max {} at (sx, sy, sz) = ({}, {}, {})",
        analytic_max,
        maximizer.sx(),
        maximizer.sy(),
        maximizer.sz()
    );
    if gnuplot {
        write_gnuplot(&cfg.output.path, report::surface_gnuplot(&cfg.output.path, map.n_phi))?;
    }
    Ok(())
}

/// `simulate`: run the configured protocol from the empty state.
pub fn cmd_simulate(cfg: &RunConfig, gnuplot: bool, dump: Option<&Path>) -> Result<()> {
    let h = cfg.hamiltonian();
    let schedule = cfg.schedule()?;
    let control = cfg.control_params()?;
    let phonons = cfg.phonon_params();

    if let Some(path) = dump {
        let gens: Vec<serde_json::Value> = schedule
            .stages
            .iter()
            .map(|stage| -> Result<serde_json::Value> {
                let rates = crate::liouville::ReservoirRates::new(stage.gamma_l, stage.gamma_r)?;
                let ph = match (&phonons, stage.phonons) {
                    (Some(p), true) => crate::phonon::dephasing_rates(&h, p)?,
                    _ => crate::phonon::PhononRates::zero(),
                };
                let ctrl = if stage.control { control } else { crate::feedback::ControlParams::identity() };
                Ok(crate::liouville::Liouvillian::assemble(&h, &rates, &ctrl, &ph).to_json())
            })
            .collect::<Result<_>>()?;
        std::fs::write(path, serde_json::to_string_pretty(&gens).expect("generators serialize"))?;
        println!("stage generators: {}", path.display());
    }

    let traj = run_protocol(
        &h,
        &schedule,
        &control,
        phonons.as_ref(),
        &cfg.integrator,
        &LiouvilleVector::empty(),
    )?;

    let mut body = Vec::new();
    match cfg.output.format {
        OutputFormat::Csv => report::write_trajectory_csv(&mut body, &traj)?,
        OutputFormat::Json => {
            serde_json::to_writer(&mut body, &report::trajectory_json(&traj))
                .map_err(|e| Error::Io(e.into()))?;
            body.push(b'\n');
        }
    }
    write_output(&cfg.output.path, &body)?;

    println!("trajectory: {} ({} samples)", cfg.output.path, traj.samples.len());
    for mark in &traj.marks {
        println!("stage {} starts at t = {}", mark.label, mark.t_start);
    }
    for rep in &traj.reports {
        if rep.truncated() {
            eprintln!(
                "warning: stage {} hit its time cap at t = {} with residual {}",
                rep.label, rep.t_end, rep.end_residual
            );
        }
    }
    let delta = h.delta();
    if let Some(peak) = traj.peak_ergotropy() {
        println!("peak ergotropy {} at t = {} (max possible {})", peak.ergotropy, peak.t, delta);
    }
    if let Some(last) = traj.final_sample() {
        println!(
            "final ergotropy {} (ratio to max {}), bloch norm {}",
            last.ergotropy,
            last.ergotropy / delta,
            last.bloch_norm
        );
    }
    if gnuplot {
        write_gnuplot(&cfg.output.path, report::trajectory_gnuplot(&cfg.output.path))?;
    }
    Ok(())
}

/// `sweep`: decay-time table plus per-value decay curves.
pub fn cmd_sweep(cfg: &RunConfig, gnuplot: bool, seed: Option<u64>) -> Result<()> {
    if cfg.sweep.values.is_empty() {
        return Err(Error::Config("sweep value list is empty".into()));
    }
    let base = SweepBase {
        epsilon: cfg.system.epsilon,
        tc: cfg.system.tc,
        gamma_l: cfg.reservoirs.gamma_l,
        gamma_r: cfg.reservoirs.gamma_r,
        g: if cfg.phonons.enabled { cfg.phonons.g } else { 0.0 },
        omega_c: cfg.phonons.omega_c,
        temperature: cfg.phonons.temperature,
    };
    let params = SweepParams {
        integrator: cfg.integrator,
        charge_duration: cfg.sweep.charge_duration,
        max_decay_time: cfg.sweep.max_decay_time,
        ..SweepParams::default()
    };
    let points = self_discharge_sweep(&base, cfg.sweep.axis, &cfg.sweep.values, &params, seed)?;

    let mut body = Vec::new();
    match cfg.output.format {
        OutputFormat::Csv => report::write_sweep_summary_csv(&mut body, &points)?,
        OutputFormat::Json => {
            serde_json::to_writer(&mut body, &report::sweep_summary_json(&points))
                .map_err(|e| Error::Io(e.into()))?;
            body.push(b'\n');
        }
    }
    write_output(&cfg.output.path, &body)?;

    let curves_path = Path::new(&cfg.output.path)
        .with_extension("curves.csv")
        .display()
        .to_string();
    let mut curves = Vec::new();
    report::write_sweep_curves_csv(&mut curves, &points)?;
    write_output(&curves_path, &curves)?;

    println!("sweep summary: {}", cfg.output.path);
    println!("decay curves: {curves_path}");
    println!("{:<12} {:>10} {:>16} {:>14}", "axis", "value", "peak_ergotropy", "decay_time");
    for p in &points {
        println!(
            "{:<12} {:>10} {:>16.6} {:>14.2}",
            p.axis.name(),
            p.value,
            p.peak_ergotropy,
            p.decay_time
        );
    }
    if gnuplot {
        write_gnuplot(&curves_path, report::sweep_gnuplot(&curves_path))?;
    }
    Ok(())
}
