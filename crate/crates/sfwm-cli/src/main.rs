//! `sfwm` — heralded frequency-bin entangled photon pairs from a
//! driven three-level medium.
//!
//! Subcommands:
//! - `point`: all figures of merit at one operating point (JSON);
//! - `sweep`: merit grid over two parameter axes (CSV + JSON summary);
//! - `optimize`: constrained maximisation over the sweep plane (JSON);
//! - `spectrum`: linear response and transmission of both anti-Stokes
//!   modes versus probe frequency (CSV).
//!
//! Data goes to `--out` (or standard output); diagnostics go to the
//! error stream. The exit code is zero exactly when the requested
//! computation completed.

mod config;
mod output;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use sfwm_core::herald::{channel_diagnostics, heralded_stokes_frequency};
use sfwm_core::medium::{chi1, transmission, Mode};
use sfwm_core::sweep::{evaluate_point, grid_sweep, optimize, HeraldPolicy, OptimizeSpec, SweepSpec};

use config::RunConfig;
use output::{FrequencyUnit, SpectrumRow};

#[derive(Parser)]
#[command(
    name = "sfwm",
    version,
    about = "Heralded frequency-bin entangled photon pairs from a driven three-level medium"
)]
struct Cli {
    /// Configuration file (flat `key = value`); defaults apply when omitted
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Write the primary output here instead of standard output
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Write the sweep's JSON summary here (default: standard output
    /// when --out is used, otherwise omitted)
    #[arg(long, global = true, value_name = "PATH")]
    summary_out: Option<PathBuf>,

    /// Worker thread count (default: all cores); results are identical
    /// for any value
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,

    /// Emit angular frequencies in rad/s instead of units of Γ
    #[arg(long, global = true)]
    si: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate all figures of merit at the configured operating point (JSON)
    Point,
    /// Sweep the two configured axes into a merit grid (CSV + JSON summary)
    Sweep,
    /// Maximise the configured objective under the configured constraints (JSON)
    Optimize,
    /// Tabulate the linear response and transmission of both anti-Stokes modes (CSV)
    Spectrum,
}

fn main() {
    let cli = Cli::parse();
    if let Err(message) = run(cli) {
        eprintln!("error: {message}");
        std::process::exit(1);
    }
}

fn run(cli: Cli) -> Result<(), String> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| format!("cannot configure {n} worker threads: {e}"))?;
    }
    let cfg = config::load_config(cli.config.as_deref()).map_err(|e| e.to_string())?;
    match cli.command {
        Command::Point => run_point(&cli, &cfg),
        Command::Sweep => run_sweep(&cli, &cfg),
        Command::Optimize => run_optimize(&cli, &cfg),
        Command::Spectrum => run_spectrum(&cli, &cfg),
    }
}

fn write_output(path: Option<&Path>, content: &str) -> Result<(), String> {
    match path {
        Some(p) => std::fs::write(p, content)
            .map_err(|e| format!("cannot write `{}`: {e}", p.display())),
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            match out.write_all(content.as_bytes()).and_then(|()| out.flush()) {
                Ok(()) => Ok(()),
                // A closed reader (`sfwm ... | head`) is a normal way to stop
                // consuming output, not an error worth a diagnostic.
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {
                    std::process::exit(0)
                }
                Err(e) => Err(format!("cannot write to standard output: {e}")),
            }
        }
    }
}

/// Output unit for angular frequencies: Γ of the configured medium by
/// default, rad/s under `--si`.
fn frequency_unit(cli: &Cli, cfg: &RunConfig) -> FrequencyUnit {
    if cli.si {
        FrequencyUnit::si()
    } else {
        FrequencyUnit::gamma(&cfg.medium)
    }
}

fn run_point(cli: &Cli, cfg: &RunConfig) -> Result<(), String> {
    let omega_s = match cfg.herald {
        HeraldPolicy::TwoPhotonResonant => heralded_stokes_frequency(&cfg.medium, &cfg.drives),
        HeraldPolicy::Fixed(w) => w,
    };
    let merit =
        evaluate_point(&cfg.medium, &cfg.drives, cfg.herald).map_err(|e| e.to_string())?;
    let diagnostics =
        channel_diagnostics(&cfg.medium, &cfg.drives).map_err(|e| e.to_string())?;
    let report = output::point_report(omega_s, &merit, &diagnostics, frequency_unit(cli, cfg));
    let json = output::to_json(&report).map_err(|e| e.to_string())?;
    write_output(cli.out.as_deref(), &json)
}

fn sweep_spec(cfg: &RunConfig) -> SweepSpec {
    SweepSpec {
        medium: cfg.medium.clone(),
        drives: cfg.drives,
        axis1: cfg.axis1,
        axis2: cfg.axis2,
        herald: cfg.herald,
    }
}

fn run_sweep(cli: &Cli, cfg: &RunConfig) -> Result<(), String> {
    let unit = frequency_unit(cli, cfg);
    let map = grid_sweep(&sweep_spec(cfg)).map_err(|e| e.to_string())?;
    map.validate().map_err(|e| e.to_string())?;
    let csv = output::sweep_csv(&map, &cfg.medium, &cfg.drives, cfg.herald, unit);
    write_output(cli.out.as_deref(), &csv)?;
    let summary = output::sweep_summary(&map, &cfg.constraints, unit);
    let json = output::to_json(&summary).map_err(|e| e.to_string())?;
    match (&cli.summary_out, &cli.out) {
        (Some(path), _) => write_output(Some(path), &json),
        (None, Some(_)) => write_output(None, &json),
        (None, None) => Ok(()), // two documents on stdout would be malformed
    }
}

fn run_optimize(cli: &Cli, cfg: &RunConfig) -> Result<(), String> {
    let report = optimize(
        &sweep_spec(cfg),
        &OptimizeSpec {
            objective: cfg.objective,
            constraints: cfg.constraints.clone(),
            refine_iters: cfg.refine_iters,
        },
    )
    .map_err(|e| e.to_string())?;
    if !report.feasible {
        eprintln!(
            "note: no evaluated point satisfies all constraints; reporting the unconstrained best"
        );
    }
    let out = output::optimize_output(&report, &cfg.axis1, &cfg.axis2, frequency_unit(cli, cfg));
    let json = output::to_json(&out).map_err(|e| e.to_string())?;
    write_output(cli.out.as_deref(), &json)
}

fn run_spectrum(cli: &Cli, cfg: &RunConfig) -> Result<(), String> {
    let center = cfg.medium.omega_31();
    let spec = &cfg.spectrum;
    let n = spec.points;
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let f = i as f64 / (n - 1) as f64;
        let offset = spec.min_offset + (spec.max_offset - spec.min_offset) * f;
        let omega = center + offset;
        let chi_as =
            chi1(&cfg.medium, &cfg.drives, Mode::AntiStokes, omega).map_err(|e| e.to_string())?;
        let chi_as_prime = chi1(&cfg.medium, &cfg.drives, Mode::AntiStokesPrime, omega)
            .map_err(|e| e.to_string())?;
        let t_as = transmission(&cfg.medium, &cfg.drives, Mode::AntiStokes, omega)
            .map_err(|e| e.to_string())?;
        let t_as_prime = transmission(&cfg.medium, &cfg.drives, Mode::AntiStokesPrime, omega)
            .map_err(|e| e.to_string())?;
        rows.push(SpectrumRow {
            omega,
            chi_as,
            chi_as_prime,
            t_as,
            t_as_prime,
        });
    }
    let csv = output::spectrum_csv(&rows, &cfg.medium, &cfg.drives, frequency_unit(cli, cfg));
    write_output(cli.out.as_deref(), &csv)
}
