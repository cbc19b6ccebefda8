use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};

use randcomplex::{cohomology_report, parse_complex, FiniteAbelianGroup, RngSeed};
use threshold_lab::{
    emit_plot, omega_range, run_bound_audit, run_domination_experiment, run_threshold_sweep,
    write_sweep_csv, AuditMode, ExperimentConfig, LabError,
};

const EXIT_USAGE: u8 = 1;
const EXIT_PRECONDITION: u8 = 2;
const EXIT_CHECK_FAILED: u8 = 3;

/// Sigma limit for the mean isolated-count check in sweeps.
const ISOLATED_SIGMAS: f64 = 3.0;

#[derive(Parser)]
#[command(name = "threshold-lab", version, about = "Experiments on random k-complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Random,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep p = (k ln n + omega)/n and write a CSV of vanishing frequencies
    Sweep {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[arg(long, default_value = "Z2")]
        group: String,
        #[arg(long, allow_hyphen_values = true)]
        omega_min: f64,
        #[arg(long, allow_hyphen_values = true)]
        omega_max: f64,
        #[arg(long, default_value_t = 1.0)]
        omega_step: f64,
        #[arg(long)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// SVG if the path ends in .svg, gnuplot data otherwise
        #[arg(long)]
        plot: Option<PathBuf>,
    },
    /// Check b >= n w / (k+1) over nonzero cochains
    AuditBound {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[arg(long, default_value = "Z2")]
        group: String,
        #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
        mode: Mode,
        #[arg(long, default_value_t = 500)]
        count: usize,
        #[arg(long, default_value_t = randcomplex::cochain::DEFAULT_CAP)]
        cap: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Partial domination on random connected families
    Dominate {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        epsilon: f64,
        #[arg(long, default_value_t = 1000)]
        attempts: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Print the cohomology of a complex file
    Cohomology {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value = "Z2")]
        group: String,
    },
}

enum Outcome {
    Ok,
    CheckFailed,
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    match cli.command {
        Command::Sweep {
            n,
            k,
            group,
            omega_min,
            omega_max,
            omega_step,
            trials,
            seed,
            out,
            plot,
        } => {
            let cfg = ExperimentConfig {
                n,
                k,
                group,
                omega_grid: omega_range(omega_min, omega_max, omega_step)?,
                trials,
                master_seed: RngSeed(seed),
                output: Some(out.clone()),
            };
            let rows = run_threshold_sweep(&cfg)?;
            let file = File::create(&out).with_context(|| format!("creating {}", out.display()))?;
            write_sweep_csv(&rows, BufWriter::new(file))?;
            if let Some(path) = plot {
                emit_plot(&rows, &path)?;
            }
            let mut ok = true;
            for r in &rows {
                let mut notes = vec![];
                if r.violations > 0 {
                    notes.push(format!("{} trials with isolated faces but H = 0", r.violations));
                }
                if r.isolated_z() > ISOLATED_SIGMAS {
                    notes.push(format!(
                        "mean isolated {} vs expected {} ({:.2} se)",
                        r.mean_isolated,
                        r.expected_isolated,
                        r.isolated_z()
                    ));
                }
                if let Some(x) = r.connectivity_mismatches.filter(|&x| x > 0) {
                    notes.push(format!("{x} disagreements with graph connectivity"));
                }
                if !notes.is_empty() {
                    ok = false;
                    eprintln!("omega = {}: {}", r.omega, notes.join("; "));
                }
            }
            println!("wrote {} rows to {}", rows.len(), out.display());
            Ok(if ok { Outcome::Ok } else { Outcome::CheckFailed })
        }
        Command::AuditBound {
            n,
            k,
            group,
            mode,
            count,
            cap,
            seed,
        } => {
            let mode = match mode {
                Mode::Exhaustive => AuditMode::Exhaustive,
                Mode::Random => AuditMode::Random { count, seed },
            };
            let report = run_bound_audit(n, k, &group, mode, cap)?;
            println!("{report}");
            Ok(if report.passed() {
                Outcome::Ok
            } else {
                Outcome::CheckFailed
            })
        }
        Command::Dominate {
            n,
            k,
            m,
            epsilon,
            attempts,
            seed,
        } => {
            let report = run_domination_experiment(n, k, m, epsilon, attempts, seed)?;
            println!("{report}");
            Ok(if report.passed() {
                Outcome::Ok
            } else {
                Outcome::CheckFailed
            })
        }
        Command::Cohomology { input, group } => {
            let text = std::fs::read_to_string(&input)
                .map_err(LabError::from)
                .with_context(|| format!("reading {}", input.display()))?;
            let y = parse_complex(&text).map_err(LabError::from)?;
            let g: FiniteAbelianGroup = group.parse().map_err(LabError::from)?;
            println!("{}", cohomology_report(&y, &g).map_err(LabError::from)?);
            Ok(Outcome::Ok)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::CheckFailed) => ExitCode::from(EXIT_CHECK_FAILED),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_PRECONDITION)
        }
    }
}
