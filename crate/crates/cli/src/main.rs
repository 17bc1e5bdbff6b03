//! `lconvex`: checks, sobrification, Scott structures, completions and the theorem suite.
//!
//! Exit codes: 0 pass, 1 usage or input error, 2 check failure, 3 budget exceeded.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lconvex::{Budget, Error};

#[derive(Parser)]
#[command(name = "lconvex", version, about = "Sober L-convex spaces over finite residuated lattices")]
struct Cli {
    #[command(flatten)]
    budget: BudgetArgs,
    #[command(subcommand)]
    command: Command,
}

/// Overrides for the default search caps.
#[derive(Args)]
struct BudgetArgs {
    /// Largest convex family a build may produce.
    #[arg(long, global = true)]
    max_family: Option<u64>,
    /// Largest |L|^|X| scan.
    #[arg(long, global = true)]
    max_scan: Option<u64>,
    /// Largest |L|^(2|P|) Scott scan.
    #[arg(long, global = true)]
    max_scott: Option<u64>,
    /// Largest map enumeration.
    #[arg(long, global = true)]
    max_maps: Option<u64>,
}

impl BudgetArgs {
    fn apply(&self, mut b: Budget) -> Budget {
        if let Some(v) = self.max_family {
            b.max_family = v;
        }
        if let Some(v) = self.max_scan {
            b.max_scan = v;
        }
        if let Some(v) = self.max_scott {
            b.max_scott = v;
        }
        if let Some(v) = self.max_maps {
            b.max_maps = v;
        }
        b
    }
}

#[derive(Subcommand)]
enum Command {
    /// Validate a lattice file (or built-in name) and print the residuation law report.
    CheckLattice {
        lattice: String,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Validate E1-E3 for an order file.
    CheckOrder {
        order: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Print the axiom report of a space file.
    CheckSpace {
        space: PathBuf,
        /// The listed subsets are the whole family; verify instead of generating.
        #[arg(long)]
        closed: bool,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Sobrify a space: X^F with provenance, the xi table and the verdicts.
    Sobrify {
        space: PathBuf,
        #[arg(long)]
        closed: bool,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Print the specialization L-order of an S0 space.
    Specialize {
        space: PathBuf,
        #[arg(long)]
        closed: bool,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Print the Scott L-convex structure of an order.
    Scott {
        order: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Build the join-semilattice completion of an order.
    Complete {
        order: PathBuf,
        /// Also check the universal property of (P^F, xi).
        #[arg(long)]
        verify_universal: bool,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Run the theorem suite.
    Theorems {
        /// Instance spec as JSON; unspecified fields take their defaults.
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        /// Write the structured report here.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Run only these check ids.
        #[arg(long)]
        only: Vec<String>,
        /// Activate a core mutation (residuum, zadeh-forward, hull, space-closure).
        #[arg(long)]
        mutate: Option<String>,
    },
    /// Search the generated corpus for counterexamples: scott-inclusion or any-equivalence.
    Search {
        target: String,
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 10)]
        max_findings: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

/// How a command ended, mapped onto the exit codes.
pub enum Failure {
    Usage(String),
    Check(String),
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            Error::Parse { .. } | Error::Shape(_) | Error::InvalidSize { .. } | Error::CarrierMismatch { .. } => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Check(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let budget = cli.budget.apply(Budget::default());
    let outcome = match cli.command {
        Command::CheckLattice { lattice, report } => commands::check_lattice(&lattice, report.as_deref()),
        Command::CheckOrder { order, report } => commands::check_order(&order, report.as_deref()),
        Command::CheckSpace { space, closed, report } => commands::check_space(&space, closed, &budget, report.as_deref()),
        Command::Sobrify { space, closed, report } => commands::sobrify(&space, closed, &budget, report.as_deref()),
        Command::Specialize { space, closed, report } => commands::specialize(&space, closed, &budget, report.as_deref()),
        Command::Scott { order, report } => commands::scott(&order, &budget, report.as_deref()),
        Command::Complete { order, verify_universal, report } => {
            commands::complete(&order, verify_universal, &budget, report.as_deref())
        }
        Command::Theorems { spec, seed, json, only, mutate } => {
            let tune = |b: Budget| cli.budget.apply(b);
            commands::theorems(spec.as_deref(), seed, &tune, json.as_deref(), &only, mutate.as_deref())
        }
        Command::Search { target, spec, seed, max_findings, json } => {
            let tune = |b: Budget| cli.budget.apply(b);
            commands::search(&target, spec.as_deref(), seed, &tune, max_findings, json.as_deref())
        }
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Check(m)) => {
            eprintln!("check failed: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(m)) => {
            eprintln!("budget exceeded: {m}");
            ExitCode::from(3)
        }
    }
}
