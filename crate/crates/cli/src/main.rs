//! `girale`: command-line front end for girale-core.
//!
//! Exit codes: 0 pass (or found as requested), 1 fail or counterexample,
//! 2 usage or input error.

mod commands;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use girale_core::Profile;

use commands::{load_algebra, CliError, SearchArgs};
use output::Output;

#[derive(Parser)]
#[command(name = "girale", version, about = "Finite girales, Girard algebras and their logics")]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check an algebra against a profile.
    Check {
        /// Algebra file; standard input when omitted.
        file: Option<PathBuf>,
        #[arg(long, value_parser = parse_profile)]
        profile: Profile,
    },
    /// Generate a named algebra.
    Gen {
        #[command(subcommand)]
        family: Family,
    },
    /// Evaluate a formula, equation or quasiequation under every assignment.
    Eval {
        file: Option<PathBuf>,
        #[arg(short = 'e', long = "expr")]
        expr: String,
        /// Print the value under every assignment.
        #[arg(long)]
        all: bool,
    },
    /// Check a Hilbert derivation.
    Derive {
        file: PathBuf,
        /// MALL, LL, LR or ILL; defaults to the file's system line, then MALL.
        #[arg(long)]
        system: Option<String>,
        /// Algebra files to scan the conclusion against.
        #[arg(long, num_args = 1..)]
        scan: Vec<PathBuf>,
    },
    /// List the filters.
    Filters { file: Option<PathBuf> },
    /// List the congruences and check that they match the filters.
    Con { file: Option<PathBuf> },
    /// Check equationally definable principal congruences.
    Edpc { file: Option<PathBuf> },
    /// Build Heyt(A) on the image of `!`.
    Heyt { file: Option<PathBuf> },
    /// Build a completion and print it.
    Complete {
        /// frame or phase.
        kind: String,
        file: Option<PathBuf>,
        /// Largest input size accepted.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Replace `!` by the modality induced by a subset.
    Induce {
        file: Option<PathBuf>,
        /// Element labels, comma or space separated.
        #[arg(long)]
        subset: String,
    },
    /// Enumerate models of a profile, or look for a countermodel.
    Search {
        #[arg(long, value_parser = parse_profile)]
        profile: Profile,
        /// Search exactly this size.
        #[arg(long, conflicts_with_all = ["max_size", "min_size"], required_unless_present = "max_size")]
        size: Option<usize>,
        /// Search sizes up to this bound.
        #[arg(long)]
        max_size: Option<usize>,
        #[arg(long, requires = "max_size")]
        min_size: Option<usize>,
        /// Goal to falsify; stops at the first size with a countermodel.
        #[arg(long)]
        falsify: Option<String>,
        /// Partial algebra whose tables and constants are kept fixed.
        #[arg(long)]
        frozen: Option<PathBuf>,
        /// Print every model found.
        #[arg(long)]
        models: bool,
        /// Report wall time.
        #[arg(long)]
        time: bool,
    },
    /// Translate between formulas and equations.
    Translate {
        #[arg(long, conflicts_with = "rho")]
        tau: Option<String>,
        #[arg(long)]
        rho: Option<String>,
    },
}

#[derive(Subcommand)]
enum Family {
    /// The height-three girale G_n.
    Gn {
        n: usize,
        /// Use the negation table as literally defined (not involutive).
        #[arg(long)]
        verbatim_neg: bool,
    },
}

fn parse_profile(s: &str) -> Result<Profile, String> {
    s.parse()
}

fn run(cli: Cli) -> Result<Output, CliError> {
    use Command::*;
    match cli.command {
        Check { file, profile } => commands::check(&load_algebra(file.as_deref())?, profile),
        Gen {
            family: Family::Gn { n, verbatim_neg },
        } => commands::gen(n, verbatim_neg),
        Eval { file, expr, all } => commands::eval_cmd(&load_algebra(file.as_deref())?, &expr, all),
        Derive { file, system, scan } => commands::derive(&file, system.as_deref(), &scan),
        Filters { file } => commands::filters(&load_algebra(file.as_deref())?),
        Con { file } => commands::con(&load_algebra(file.as_deref())?),
        Edpc { file } => commands::edpc(&load_algebra(file.as_deref())?),
        Heyt { file } => commands::heyt_cmd(&load_algebra(file.as_deref())?),
        Complete { kind, file, cap } => commands::complete(&kind, &load_algebra(file.as_deref())?, cap),
        Induce { file, subset } => commands::induce(&load_algebra(file.as_deref())?, &subset),
        Search {
            profile,
            size,
            max_size,
            min_size,
            falsify,
            frozen,
            models,
            time,
        } => {
            let (min, max) = match (size, max_size) {
                (Some(k), _) => (k, k),
                (None, Some(m)) => (min_size.unwrap_or(1), m),
                (None, None) => unreachable!("clap requires --size or --max-size"),
            };
            let frozen = frozen.as_deref().map(|p| load_algebra(Some(p))).transpose()?;
            commands::search(SearchArgs {
                profile,
                min,
                max,
                falsify: falsify.as_deref(),
                frozen,
                models,
                time,
            })
        }
        Translate { tau, rho } => commands::translate(tau.as_deref(), rho.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(out) => {
            let body = if json {
                serde_json::to_string_pretty(&out.json).expect("reports serialize") + "\n"
            } else {
                out.text
            };
            // A closed pipe (`| head`) is not an error worth reporting.
            let mut stdout = std::io::stdout().lock();
            match stdout.write_all(body.as_bytes()).and_then(|()| stdout.flush()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
                _ => ExitCode::from(out.code as u8),
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
