use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use flexlie::appendix::verify_appendix_embeddings;
use flexlie::oracle::{run_oracle, OracleRun, CLUSTER_TOL};
use flexlie::pipeline::{exit, exit_code, exit_code_for_error, run_scenario, Scenario};
use flexlie::sweep::{run_sweep, FamilyKind, SweepSummary};
use flexlie::FlexError;
use serde::Serialize;

#[derive(Parser)]
#[command(name = "flexlie", version, about = "Balancedness and flexibility of surface-group data in classical real Lie groups")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Structured)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Structured,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Run the pipeline on a scenario file.
    Check {
        file: PathBuf,
        /// Skip the numeric cross-check.
        #[arg(long)]
        no_oracle: bool,
    },
    /// Enumerate every decorated configuration of a family up to a dimension.
    Sweep { family: FamilyKind, max_dim: usize },
    /// Compare symbolic roots with a brute-force numeric decomposition.
    Oracle {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Instances per family.
        #[arg(long, default_value_t = 100)]
        instances: usize,
        /// Restrict to one family.
        #[arg(long)]
        family: Option<FamilyKind>,
        #[arg(long, default_value_t = 8)]
        max_dim: usize,
        #[arg(long, default_value_t = CLUSTER_TOL)]
        tolerance: f64,
    },
    /// Check the explicit matrix embeddings used by the quaternionic models.
    VerifyAppendix,
}

#[derive(Serialize)]
struct OracleReport {
    runs: Vec<OracleRun>,
}

fn structured<T: Serialize>(v: &T) -> String {
    toml::to_string(v).expect("report serializes")
}

fn sweep_text(s: &SweepSummary) -> String {
    let mut out = format!(
        "{} dim ≤ {}: {} configurations, {} decorated, {} unbalanced, {} skipped\n",
        s.family, s.max_dim, s.configurations, s.decorated, s.unbalanced, s.skipped
    );
    for (d, c) in &s.rigid {
        out += &format!("  rigid {d}: {c}\n");
    }
    for (t, c) in &s.tag_counts {
        out += &format!("  tag {t}: {c}\n");
    }
    for (label, list) in [("false positive", &s.false_positives), ("false negative", &s.false_negatives), ("untagged", &s.untagged)] {
        for m in list {
            out += &format!("  {label}: {} [{}] {:?} {}\n", m.group, m.slots, m.assignment, m.detail);
        }
    }
    out += if s.exact() { "matches exceptional list\n" } else { "MISMATCH\n" };
    out
}

fn run(cli: Cli) -> Result<i32, FlexError> {
    let text = matches!(cli.format, Format::Text);
    match cli.command {
        Command::Check { file, no_oracle } => {
            let sc = Scenario::load(&file)?;
            let report = run_scenario(&sc, !no_oracle)?;
            print!("{}", if text { report.to_text() } else { report.to_toml() });
            Ok(exit_code(&report))
        }
        Command::Sweep { family, max_dim } => {
            let s = run_sweep(family, max_dim)?;
            print!("{}", if text { sweep_text(&s) } else { structured(&s) });
            Ok(if s.exact() { exit::VERDICT } else { exit::INTERNAL })
        }
        Command::Oracle { seed, instances, family, max_dim, tolerance } => {
            if !(tolerance > 0.0 && tolerance < 1.0) {
                return Err(FlexError::Validation(format!("tolerance {tolerance} outside (0, 1)")));
            }
            let kinds = family.map_or_else(|| FamilyKind::ALL.to_vec(), |k| vec![k]);
            let runs = kinds
                .into_iter()
                .map(|k| run_oracle(k, max_dim, instances, seed, tolerance))
                .collect::<Result<Vec<_>, _>>()?;
            let ok = runs.iter().all(|r| r.failures.is_empty());
            if text {
                for r in &runs {
                    println!("{}: {} instances, {} root spaces matched, {} failures", r.family, r.checked, r.matched_roots, r.failures.len());
                    for f in &r.failures {
                        println!("  {f}");
                    }
                }
            } else {
                print!("{}", structured(&OracleReport { runs }));
            }
            Ok(if ok { exit::VERDICT } else { exit::INTERNAL })
        }
        Command::VerifyAppendix => {
            let rep = verify_appendix_embeddings();
            if text {
                println!("ordering: {}", rep.ordering);
                for c in &rep.checks {
                    println!("{} {}: {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail);
                }
            } else {
                print!("{}", structured(&rep));
            }
            Ok(if rep.all_passed() { exit::VERDICT } else { exit::INTERNAL })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::VALIDATION } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let code = match run(cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for_error(&e)
        }
    };
    ExitCode::from(code as u8)
}
