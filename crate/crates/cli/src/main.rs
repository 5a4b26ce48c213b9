//! Command-line harness: plan assignments, simulate experiments, and sweep
//! current conditions over a scenario file.
//!
//! Exit codes: 0 success, 1 scenario validation error, 2 runtime failure.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use uuvsim_core::currents::CurrentField;
use uuvsim_core::nav::Mode;
use uuvsim_core::scenario::ScenarioError;
use uuvsim_core::{emit_outputs, load_scenario, run_experiment};

#[derive(Parser)]
#[command(name = "uuvsim", version, about = "Multi-UUV planning and simulation harness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the assignment matrix and priority list without simulating.
    Plan(CommonArgs),
    /// Run the full experiment: assignment plus navigation per mode.
    Simulate(CommonArgs),
    /// Re-run the experiment over the reference current grid
    /// (directions 0/45/90/135 deg at 0.3 m/s, speeds 0.1-0.7 m/s at 45 deg).
    Sweep(SweepArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Scenario file (JSON).
    #[arg(long)]
    scenario: PathBuf,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
    /// Controllers to run (`plan` accepts but ignores this).
    #[arg(long, value_delimiter = ',', default_values = ["bnnp", "cbnntap"])]
    modes: Vec<CliMode>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Sweep the full direction x speed cross product instead of the
    /// reference grid.
    #[arg(long)]
    full: bool,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum CliMode {
    Bnnp,
    Cbnntap,
}

impl From<CliMode> for Mode {
    fn from(m: CliMode) -> Mode {
        match m {
            CliMode::Bnnp => Mode::Bnnp,
            CliMode::Cbnntap => Mode::Cbnntap,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            if err.downcast_ref::<ScenarioError>().is_some() {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Plan(args) => {
            let scenario = load_scenario(&args.scenario)?;
            let report = run_experiment(&scenario, &[])?;
            let files = emit_outputs(&report, &args.out)?;
            print_summary(&report);
            println!("wrote {} files to {}", files.len(), args.out.display());
            Ok(())
        }
        Command::Simulate(args) => {
            let scenario = load_scenario(&args.scenario)?;
            let modes: Vec<Mode> = args.modes.iter().map(|&m| m.into()).collect();
            let report = run_experiment(&scenario, &modes)?;
            let files = emit_outputs(&report, &args.out)?;
            print_summary(&report);
            println!("wrote {} files to {}", files.len(), args.out.display());
            Ok(())
        }
        Command::Sweep(args) => sweep(args),
    }
}

fn sweep(args: SweepArgs) -> Result<()> {
    let scenario = load_scenario(&args.common.scenario)?;
    if scenario.map.dims() != 2 {
        bail!(ScenarioError::Validation(vec![
            "sweep: requires a 2D scenario (uniform currents are parameterized by one angle)"
                .to_string(),
        ]));
    }
    let modes: Vec<Mode> = args.common.modes.iter().map(|&m| m.into()).collect();

    let mut conditions: Vec<(f64, f64)> = Vec::new();
    if args.full {
        for direction in [0.0, 45.0, 90.0, 135.0] {
            for speed in [0.1, 0.3, 0.5, 0.7] {
                conditions.push((direction, speed));
            }
        }
    } else {
        for direction in [0.0, 45.0, 90.0, 135.0] {
            conditions.push((direction, 0.3));
        }
        for speed in [0.1, 0.5, 0.7] {
            conditions.push((45.0, speed));
        }
    }

    let mut summary = String::from("condition,pair,mode,status,traveled,max_cross_track\n");
    for (direction_deg, speed) in conditions {
        let label = format!("deg{:03}_speed{:.1}", direction_deg as i32, speed);
        let mut variant = scenario.clone();
        variant.field = CurrentField::Uniform {
            direction_deg,
            speed,
        };
        let report = run_experiment(&variant, &modes)
            .with_context(|| format!("condition {label}"))?;
        emit_outputs(&report, &args.common.out.join(&label))?;
        for run in &report.runs {
            let _ = writeln!(
                summary,
                "{label},{},{},{},{},{}",
                run.pair_label(),
                run.mode,
                run.outcome.status.code(),
                run.record.traveled,
                run.outcome.max_cross_track
            );
        }
        println!("{label}: done");
    }

    let summary_path = args.common.out.join("sweep_summary.csv");
    fs::write(&summary_path, summary)
        .with_context(|| format!("writing {}", summary_path.display()))?;
    println!("wrote sweep summary to {}", summary_path.display());
    Ok(())
}

fn print_summary(report: &uuvsim_core::RunReport) {
    println!("scenario {}", &report.scenario_hash[..12]);
    for pair in &report.priority.pairs {
        println!(
            "assigned {} -> {} (normalized distance {:.4})",
            report.scenario.vehicles[pair.vehicle].id,
            report.scenario.targets[pair.target].id,
            pair.value
        );
    }
    for run in &report.runs {
        println!(
            "{} [{}]: {} (traveled {:.4} m, max cross-track {:.4} m)",
            run.pair_label(),
            run.mode,
            run.outcome.status.code(),
            run.record.traveled,
            run.outcome.max_cross_track
        );
    }
}
