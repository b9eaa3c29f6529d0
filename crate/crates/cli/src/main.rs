//! `specialherm`: checks Hermitian metric conditions, deformation residuals
//! and blow-up expansions described by JSON manifests, and runs the seeded
//! identity suite.
//!
//! Exit codes: 0 everything holds, 1 a condition fails, 2 input error,
//! 3 internal oracle mismatch.

mod commands;
mod manifest;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use specialherm::identities::{Mutation, SuiteConfig};

use manifest::{InputError, Manifest};
use report::Report;

#[derive(Parser)]
#[command(name = "specialherm", version, about = "Exact checks for special Hermitian metrics")]
struct Cli {
    /// Write the JSON report to this path.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    /// Suppress the text summary on stdout.
    #[arg(long, global = true)]
    quiet: bool,
    /// Record wall-clock time in the report (makes it run-dependent).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the metric: Kähler, SKT, astheno-Kähler, balanced, Gauduchon, special.
    Check { manifest: PathBuf },
    /// Maurer-Cartan and holomorphy residuals, first-order residual against the jet oracle.
    Deform { manifest: PathBuf },
    /// Binomial expansion, preserved powers, chart pullback and positivity threshold.
    Blowup { manifest: PathBuf },
    /// Seeded property suite.
    Identities {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest complex dimension drawn (at most 4).
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        cases: usize,
        /// Plant a named error in the suite.
        #[arg(long, hide = true)]
        mutation: Option<String>,
    },
}

fn load(path: &PathBuf) -> Result<Manifest, InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError { path: String::new(), message: format!("cannot read {}: {e}", path.display()) })?;
    Manifest::parse(&text)
}

fn run_manifest(
    name: &str,
    path: &PathBuf,
    f: impl FnOnce(&Manifest, &mut Report) -> Result<(), InputError>,
) -> Report {
    let shown = Some(path.display().to_string());
    match load(path) {
        Ok(m) => {
            let mut report = Report::new(name, shown, m.seed);
            report.value("dim", serde_json::json!(m.dim));
            match f(&m, &mut report) {
                Ok(()) => report.settle(),
                Err(e) => {
                    report.error = Some(e.to_string());
                    report.exit_code = 2;
                }
            }
            report
        }
        Err(e) => {
            let mut report = Report::new(name, shown, 0);
            report.error = Some(e.to_string());
            report.exit_code = 2;
            report
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let mut report = match &cli.command {
        Command::Check { manifest } => run_manifest("check", manifest, |m, r| {
            commands::check(m, r);
            Ok(())
        }),
        Command::Deform { manifest } => run_manifest("deform", manifest, commands::deform),
        Command::Blowup { manifest } => run_manifest("blowup", manifest, commands::blowup),
        Command::Identities { seed, n, cases, mutation } => {
            let mut report = Report::new("identities", None, *seed);
            let mutation = match mutation.as_deref().map(|s| (s, Mutation::from_name(s))) {
                None => Ok(None),
                Some((_, Some(m))) => Ok(Some(m)),
                Some((s, None)) => Err(s.to_string()),
            };
            match mutation {
                Ok(mutation) => {
                    let cfg = SuiteConfig { seed: *seed, max_dim: *n, cases: *cases, mutation };
                    commands::identities(&cfg, &mut report);
                    report.settle();
                }
                Err(s) => {
                    report.error = Some(format!("--mutation: unknown mutation {s}"));
                    report.exit_code = 2;
                }
            }
            report
        }
    };
    if cli.timing {
        report.timing_ms = Some(start.elapsed().as_millis());
    }
    if !cli.quiet {
        print!("{}", report.to_text());
    } else if let Some(e) = &report.error {
        eprintln!("error: {e}");
    }
    if let Some(path) = &cli.report {
        if let Err(e) = std::fs::write(path, report.to_json()) {
            eprintln!("error: cannot write report {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    ExitCode::from(report.exit_code as u8)
}
