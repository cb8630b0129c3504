// Copyright 2026 The decohere Authors
// SPDX-License-Identifier: Apache-2.0

//! `decohere`: run a case × temperature sweep described by a config file.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::Parser;
use decohere_core::{case_from_label, emit_outputs, load_config, run_sweep, RunConfig, TimeGrid};

/// Environment variable that caps the worker thread count.
const THREADS_ENV: &str = "DECOHERE_THREADS";

#[derive(Debug, Parser)]
#[command(name = "decohere", version, about = "Decoherence factor sweeps over composite environments")]
struct Args {
    /// TOML run description.
    #[arg(long, value_name = "PATH")]
    config: PathBuf,

    /// Run only these cases (repeatable or comma separated).
    #[arg(long, value_delimiter = ',', value_name = "LABEL")]
    case: Vec<String>,

    /// Run only these γ₀·k_BT values (repeatable or comma separated).
    #[arg(long = "gamma0kT", value_delimiter = ',', value_name = "VALUE")]
    gamma0_kt: Vec<f64>,

    /// Override the time horizon.
    #[arg(long, value_name = "T")]
    tmax: Option<f64>,

    /// Override the number of grid steps.
    #[arg(long, value_name = "N")]
    steps: Option<usize>,

    /// Cross-check every cell against the density-matrix integrator.
    #[arg(long)]
    oracle: bool,

    /// Output directory (defaults to the config's `out_dir`).
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,

    /// Suppress the per-cell summary on stdout.
    #[arg(long)]
    quiet: bool,
}

fn apply_overrides(mut config: RunConfig, args: &Args) -> Result<RunConfig> {
    if !args.case.is_empty() {
        let mut cases = args.case.iter().map(|c| case_from_label(c)).collect::<Result<Vec<_>, _>>()?;
        cases.sort();
        cases.dedup();
        config.cases = cases;
    }
    if !args.gamma0_kt.is_empty() {
        if let Some(bad) = args.gamma0_kt.iter().find(|g| !(g.is_finite() && **g >= 0.0)) {
            anyhow::bail!("--gamma0kT values must be finite and >= 0, got {bad}");
        }
        let mut values = args.gamma0_kt.clone();
        values.sort_by(f64::total_cmp);
        values.dedup();
        config.gamma0_kt = values;
    }
    if args.tmax.is_some() || args.steps.is_some() {
        let t_max = args.tmax.unwrap_or(config.grid.t_max());
        let steps = args.steps.unwrap_or(config.grid.n_steps());
        config.grid = TimeGrid::new(t_max, steps)?;
    }
    if args.oracle {
        config.oracle = true;
    }
    if let Some(out) = &args.out {
        config.out_dir = out.clone();
    }
    Ok(config)
}

fn configure_threads() -> Result<()> {
    if let Ok(value) = std::env::var(THREADS_ENV) {
        let threads: usize =
            value.trim().parse().with_context(|| format!("{THREADS_ENV} must be a positive integer, got {value:?}"))?;
        rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
    }
    Ok(())
}

fn fmt_time(t: Option<f64>) -> String {
    t.map_or_else(|| "-".to_string(), |t| format!("{t:.4}"))
}

fn run(args: &Args) -> Result<bool> {
    let config = apply_overrides(load_config(&args.config)?, args)?;
    let report = run_sweep(&config);
    let manifest = emit_outputs(&report, &config)?;
    let manifest_path = config.out_dir.join("manifest.sha256");
    std::fs::write(&manifest_path, manifest.to_text())
        .with_context(|| format!("writing {}", manifest_path.display()))?;

    if !args.quiet {
        println!("{:<5} {:>10} {:>12} {:>12}", "case", "gamma0kT", "t_threshold", "t_formula");
        for cell in &report.cells {
            match &cell.outcome {
                Ok(r) => println!(
                    "{:<5} {:>10} {:>12} {:>12}",
                    cell.case.label().as_str(),
                    cell.gamma0_kt,
                    fmt_time(r.t_threshold),
                    fmt_time(r.t_formula)
                ),
                Err(e) => println!("{:<5} {:>10} failed: {e}", cell.case.label().as_str(), cell.gamma0_kt),
            }
        }
        println!("wrote {} files to {}", manifest.len() + 1, config.out_dir.display());
    }
    for cell in report.failures() {
        if let Err(e) = &cell.outcome {
            eprintln!("cell ({}, {}) failed: {e}", cell.case, cell.gamma0_kt);
        }
    }
    Ok(report.all_succeeded())
}

fn main() -> ExitCode {
    let args = Args::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e:#}");
        return ExitCode::from(1);
    }
    match run(&args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
