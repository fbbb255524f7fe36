use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use calibex_core::group::Group;
use calibex_core::suite::{run_identity, run_suite, IdentityScope, RunReport, SuiteName};
use calibex_core::wchain::{search_w_chain, targets, SearchOutcome};

/// Exact verifier for calibration forms, stabilizers and transversal chains.
#[derive(Parser)]
#[command(name = "calibex", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    G2,
    Spin7,
    Su3,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupArg {
    G2,
    Spin7,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full certificate suite for a group.
    Verify {
        suite: SuiteArg,
        /// Write the report as JSON instead of printing a table.
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// Sample the associator and Cayley identities on rational tuples.
    Identity {
        #[arg(long)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Only the 3-form identity on ℝ⁷.
        #[arg(long, conflicts_with = "n8")]
        n7: bool,
        /// Only the 4-form identity on ℝ⁸.
        #[arg(long)]
        n8: bool,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// Search for an invariant transversal chain and write it as JSON.
    SearchWchain {
        group: GroupArg,
        #[arg(long, value_name = "PATH")]
        out: PathBuf,
    },
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn emit(report: &RunReport, json: Option<PathBuf>) -> ExitCode {
    match json {
        Some(path) => {
            if let Err(e) = fs::write(&path, report.to_json()) {
                return usage_error(&format!("cannot write {}: {e}", path.display()));
            }
            let passed = report.certificates.iter().filter(|c| c.passed).count();
            println!(
                "{}: {passed}/{} certificates passed; report written to {}",
                report.suite,
                report.certificates.len(),
                path.display()
            );
        }
        None => print!("{}", report.render_table()),
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match cli.command {
        Command::Verify { suite, json } => {
            let name = match suite {
                SuiteArg::G2 => SuiteName::G2,
                SuiteArg::Spin7 => SuiteName::Spin7,
                SuiteArg::Su3 => SuiteName::Su3,
            };
            match run_suite(name) {
                Ok(report) => emit(&report, json),
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
            }
        }
        Command::Identity {
            samples,
            seed,
            n7,
            n8,
            json,
        } => {
            if samples == 0 {
                return usage_error("--samples must be at least 1");
            }
            let scope = match (n7, n8) {
                (true, _) => IdentityScope::Associative,
                (_, true) => IdentityScope::Cayley,
                _ => IdentityScope::Both,
            };
            match run_identity(samples, seed, scope) {
                Ok(report) => {
                    for c in report.certificates.iter().filter(|c| !c.passed) {
                        if let Some(d) = &c.detail {
                            eprintln!("{}: {d}", c.claim_id);
                        }
                    }
                    emit(&report, json)
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
            }
        }
        Command::SearchWchain { group, out } => {
            let group = match group {
                GroupArg::G2 => Group::G2,
                GroupArg::Spin7 => Group::Spin7,
            };
            match search_w_chain(group) {
                Ok(SearchOutcome::Found(chain)) => {
                    let certs = chain.certificates();
                    if let Err(e) = fs::write(&out, chain.to_json()) {
                        return usage_error(&format!("cannot write {}: {e}", out.display()));
                    }
                    let dims: Vec<String> =
                        chain.levels.iter().map(|l| l.dim.to_string()).collect();
                    println!(
                        "{group}: chain of dimensions ({}) written to {}",
                        dims.join(", "),
                        out.display()
                    );
                    for c in &certs {
                        println!("{}  {}", if c.passed { "PASS" } else { "FAIL" }, c.claim_id);
                    }
                    if certs.iter().all(|c| c.passed) {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(1)
                    }
                }
                Ok(SearchOutcome::NotFound { deepest }) => {
                    let t = targets(group);
                    let reached = if deepest == 0 {
                        "none".to_string()
                    } else {
                        format!("W{} at s = {}", t[deepest - 1].0, t[deepest - 1].1)
                    };
                    eprintln!("no chain found; deepest completed level: {reached}");
                    ExitCode::from(1)
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
            }
        }
    }
}
