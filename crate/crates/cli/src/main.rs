use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use hurwitz_cli::{
    compat, realize, sweep, table, verify_file, RealizeOptions, Report, SweepOptions, TableMode,
    TableOptions,
};
use hurwitz_core::Budget;

/// Realizability of branch data for coverings of the sphere, and the
/// complexity invariants built on it.
#[derive(Parser)]
#[command(name = "hurwitz", version)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Verdict cache (JSON lines).
    #[arg(
        long,
        global = true,
        env = "HURWITZ_CACHE",
        default_value = "hurwitz-cache.jsonl"
    )]
    cache: PathBuf,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct BudgetArgs {
    /// Maximum search nodes per triplet.
    #[arg(long, default_value_t = Budget::default().max_nodes)]
    budget: u64,

    /// Maximum search time per triplet, in seconds.
    #[arg(long, default_value_t = Budget::default().max_time.as_secs_f64())]
    timeout: f64,
}

impl BudgetArgs {
    fn budget(self) -> anyhow::Result<Budget> {
        let max_time = Duration::try_from_secs_f64(self.timeout)
            .with_context(|| format!("invalid --timeout {}", self.timeout))?;
        Ok(Budget {
            max_nodes: self.budget,
            max_time,
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Riemann-Hurwitz compatibility of a triplet such as 3:3:3/2+1/2+1.
    Compat { triplet: String },
    /// Decide whether a triplet is realized by a branched covering.
    Realize {
        triplet: String,
        /// Also print the certificate in the format read by `verify`.
        #[arg(long)]
        certificate: bool,
        /// Neither read nor update the cache.
        #[arg(long)]
        no_cache: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Closed-form complexity values per genus, optionally checked by search.
    Table {
        #[arg(long, default_value_t = 3)]
        genus_max: u32,
        #[arg(long, value_enum, default_value_t = TableMode::Both)]
        mode: TableMode,
        /// Recompute each value by exhaustive search.
        #[arg(long)]
        verify_search: bool,
        /// Largest degree a search sweep may visit.
        #[arg(long, default_value_t = 9)]
        max_degree: usize,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Audit a certificate file.
    Verify { file: PathBuf },
    /// Decide every compatible triplet in a range, one JSON line each.
    Sweep {
        #[arg(long, default_value_t = 2)]
        d_min: usize,
        #[arg(long)]
        d_max: usize,
        #[arg(long, default_value_t = 1)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

fn run(cli: Cli) -> anyhow::Result<Report> {
    Ok(match cli.command {
        Command::Compat { triplet } => compat(&triplet, cli.json),
        Command::Realize {
            triplet,
            certificate,
            no_cache,
            budget,
        } => realize(
            &triplet,
            &RealizeOptions {
                budget: budget.budget()?,
                certificate,
                cache: (!no_cache).then_some(cli.cache),
                json: cli.json,
            },
        ),
        Command::Table {
            genus_max,
            mode,
            verify_search,
            max_degree,
            budget,
        } => table(&TableOptions {
            genus_max,
            mode,
            verify_search,
            budget: budget.budget()?,
            max_degree,
            json: cli.json,
        }),
        Command::Verify { file } => verify_file(&file, cli.json),
        Command::Sweep {
            d_min,
            d_max,
            n_min,
            n_max,
            budget,
        } => sweep(&SweepOptions {
            degrees: (d_min, d_max),
            branch_points: (n_min, n_max),
            budget: budget.budget()?,
        }),
    })
}

fn main() -> ExitCode {
    let report = match run(Cli::parse()) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(hurwitz_cli::EXIT_MALFORMED as u8);
        }
    };
    let _ = std::io::stdout().write_all(report.stdout.as_bytes());
    let _ = std::io::stderr().write_all(report.stderr.as_bytes());
    ExitCode::from(report.code as u8)
}
