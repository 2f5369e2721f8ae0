//! `lab`: runs verification scenarios and writes machine-readable reports.
//!
//! Exit codes: 0 all checks passed (skips allowed), 1 at least one check
//! failed, 2 configuration or I/O error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use reslab_cli::bundled;
use reslab_cli::report::{csv_report, format_float, json_report, CheckRow, RowStatus};
use reslab_cli::runner::{exit_code, run_scenarios};
use reslab_cli::scenario::load_scenario;
use reslab_core::rank_one::{phase_change, phase_derivative, phase_trace, resonance_point};

#[derive(Parser)]
#[command(name = "lab", version, about = "Resonance-point verification sweeps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario file and write reports.csv / reports.json.
    Run {
        /// Scenario JSON file.
        scenario: PathBuf,
        /// Directory the reports are written to.
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Worker threads (default: one per core).
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Run the bundled scenarios (fixed gallery + seeded corpus).
    Corpus {
        /// Directory the reports are written to.
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Worker threads (default: one per core).
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Print a phase trace (r, theta, theta_prime) as CSV on stdout.
    Trace {
        /// Scenario JSON file; its model, first energy, and coupling
        /// interval define the trace.
        scenario: PathBuf,
        /// Which check to trace; only "lorentzian" has a trace.
        #[arg(long)]
        check: String,
        /// Number of coupling samples across the interval.
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run {
            scenario,
            out,
            jobs,
        } => cmd_run(&scenario, &out, jobs),
        Command::Corpus { out, jobs } => cmd_corpus(&out, jobs),
        Command::Trace {
            scenario,
            check,
            samples,
        } => cmd_trace(&scenario, &check, samples),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn cmd_run(path: &Path, out: &Path, jobs: Option<usize>) -> Result<u8> {
    let scenario = load_scenario(path)?;
    let rows = run_scenarios(&[scenario], jobs);
    write_reports(out, &rows)?;
    print_summary(&rows, out);
    Ok(exit_code(&rows) as u8)
}

fn cmd_corpus(out: &Path, jobs: Option<usize>) -> Result<u8> {
    let seed = lab_seed()?;
    let mut scenarios = bundled::fixed_scenarios();
    scenarios.extend(bundled::corpus_scenarios(seed));
    let rows = run_scenarios(&scenarios, jobs);
    write_reports(out, &rows)?;
    print_summary(&rows, out);
    Ok(exit_code(&rows) as u8)
}

fn cmd_trace(path: &Path, check: &str, samples: usize) -> Result<u8> {
    if check != "lorentzian" {
        bail!("only the lorentzian check emits a trace, got {check:?}");
    }
    if samples < 2 {
        bail!("need at least 2 samples, got {samples}");
    }
    let scenario = load_scenario(path)?;
    let model = scenario
        .model
        .as_scalar()
        .context("phase traces are defined for rank-one (scalar) models")?;
    let lambda = scenario.lambda_grid[0];
    let (a, b) = scenario.interval;
    let point = resonance_point(model, lambda)
        .with_context(|| format!("no usable resonance point at lambda = {lambda}"))?;

    // Anchor theta(a) on the theta(0) = 0 branch, then accumulate across
    // the uniform grid; differences need no anchor transport.
    let mut theta = phase_trace(model, lambda, a, a)
        .with_context(|| format!("cannot anchor the phase at coupling {a}"))?
        .theta()[0];
    let step = (b - a) / (samples - 1) as f64;

    let mut output = String::from("r,theta,theta_prime\n");
    let mut previous = a;
    for k in 0..samples {
        let r = if k + 1 == samples { b } else { a + step * k as f64 };
        if k > 0 {
            theta += phase_change(model, lambda, previous, r)
                .with_context(|| format!("cannot continue the phase across [{previous}, {r}]"))?;
        }
        let slope = phase_derivative(&point, r)
            .with_context(|| format!("phase derivative undefined at coupling {r}"))?;
        output.push_str(&format!(
            "{},{},{}\n",
            format_float(r),
            format_float(theta),
            format_float(slope)
        ));
        previous = r;
    }
    print!("{output}");
    Ok(0)
}

fn lab_seed() -> Result<u64> {
    match std::env::var("LAB_SEED") {
        Ok(text) => text
            .trim()
            .parse()
            .with_context(|| format!("LAB_SEED must be an unsigned integer, got {text:?}")),
        Err(std::env::VarError::NotPresent) => Ok(0),
        Err(err) => Err(err).context("LAB_SEED is not valid unicode"),
    }
}

fn write_reports(out: &Path, rows: &[CheckRow]) -> Result<()> {
    std::fs::create_dir_all(out)
        .with_context(|| format!("cannot create output directory {}", out.display()))?;
    let csv_path = out.join("reports.csv");
    std::fs::write(&csv_path, csv_report(rows))
        .with_context(|| format!("cannot write {}", csv_path.display()))?;
    let json_path = out.join("reports.json");
    std::fs::write(&json_path, json_report(rows))
        .with_context(|| format!("cannot write {}", json_path.display()))?;
    Ok(())
}

fn print_summary(rows: &[CheckRow], out: &Path) {
    let mut pass = 0usize;
    let mut fail = 0usize;
    let mut skipped = 0usize;
    for row in rows {
        match row.status {
            RowStatus::Pass => pass += 1,
            RowStatus::Fail => fail += 1,
            RowStatus::Skipped(_) => skipped += 1,
        }
    }
    println!("{} rows: {pass} pass, {fail} fail, {skipped} skipped", rows.len());
    for row in rows.iter().filter(|r| r.is_fail()) {
        println!(
            "FAIL {} {} lambda={} measured={} expected={} tolerance={}",
            row.scenario,
            row.check,
            format_float(row.lambda),
            row.measured.map_or_else(|| "-".into(), format_float),
            row.expected.map_or_else(|| "-".into(), format_float),
            row.tolerance.map_or_else(|| "-".into(), format_float),
        );
    }
    println!(
        "wrote {} and {}",
        out.join("reports.csv").display(),
        out.join("reports.json").display()
    );
}
