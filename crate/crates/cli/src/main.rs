//! `torelli-graphs`: enumerate stable graphs, verify extremal assignments,
//! contract to axis graphs and decide constancy of Torelli fibers.
//!
//! Exit codes: 0 on success or a positive verdict, 2 when a verdict is
//! negative (violations found, fiber varies), 1 on any error.

mod cache;
mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "torelli-graphs", version, about = "Stable graphs, extremal assignments and Torelli fibers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Clone)]
pub struct Common {
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads; all cores when absent.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Add wall-clock time to the report.
    #[arg(long, global = true)]
    pub timing: bool,
    /// Neither read nor write the catalog cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
}

#[derive(Args, Clone)]
pub struct TypeArgs {
    #[arg(long)]
    pub genus: u32,
    #[arg(long)]
    pub markings: u32,
    /// Cap on 3g - 3 + n.
    #[arg(long, default_value_t = torelli_graphs::enumerate::DEFAULT_BOUND)]
    pub bound: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Stable graphs of type (g, n) up to isomorphism.
    Enumerate(TypeArgs),
    /// Check both axioms of an extremal assignment over a catalog.
    VerifyAssignment {
        #[command(flatten)]
        ty: TypeArgs,
        /// `F` or a table JSON file.
        #[arg(long, default_value = "F")]
        assignment: String,
    },
    /// Contract a vertex subset of a graph to an axis graph.
    Contract {
        #[arg(long)]
        graph: PathBuf,
        /// Vertex ids to contract; overrides --assignment.
        #[arg(long, value_delimiter = ',')]
        vertices: Option<Vec<u32>>,
        /// `F` or a table JSON file.
        #[arg(long, default_value = "F")]
        assignment: String,
        #[arg(long, default_value_t = torelli_graphs::enumerate::DEFAULT_BOUND)]
        bound: u32,
    },
    /// Enumerate the stable graphs over an axis graph.
    Fiber {
        #[arg(long)]
        axis: PathBuf,
    },
    /// Partition a catalog into Torelli classes.
    TorelliClasses(TypeArgs),
    /// Decide whether the Torelli key is constant over an axis graph.
    FiberCheck {
        #[arg(long)]
        axis: PathBuf,
    },
}

/// What a command produced, before it is written out.
pub struct Outcome {
    pub report: report::Report,
    pub dot: String,
    /// Extra JSON file for `enumerate --out`.
    pub catalog: Option<String>,
    pub exit: u8,
}

fn run(cli: Cli) -> Result<u8> {
    let common = cli.common;
    if let Some(jobs) = common.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
            .context("cannot configure worker threads")?;
    }
    let start = Instant::now();
    let cache = !common.no_cache;
    let mut outcome = match &cli.command {
        Command::Enumerate(ty) => commands::enumerate(ty, common.out.as_deref(), cache)?,
        Command::VerifyAssignment { ty, assignment } => commands::verify_assignment(ty, assignment, cache)?,
        Command::Contract { graph, vertices, assignment, bound } => {
            commands::contract(graph, vertices.as_deref(), assignment, *bound, cache)?
        }
        Command::Fiber { axis } => commands::fiber(axis)?,
        Command::TorelliClasses(ty) => commands::torelli_classes(ty, cache)?,
        Command::FiberCheck { axis } => commands::fiber_check(axis)?,
    };
    if common.timing {
        outcome.report.timing_ms = Some(start.elapsed().as_millis());
    }
    let text = match common.format {
        Format::Dot => outcome.dot,
        Format::Json => outcome.report.to_string_pretty(),
    };
    match (&outcome.catalog, &common.out, common.format) {
        (Some(catalog), Some(out), Format::Json) => {
            cache::write_atomic(out, catalog.as_bytes())?;
            emit_stdout(&text)?;
        }
        (_, Some(out), _) => cache::write_atomic(out, text.as_bytes())?,
        (_, None, _) => emit_stdout(&text)?,
    }
    Ok(outcome.exit)
}

fn emit_stdout(text: &str) -> Result<()> {
    let mut stdout = std::io::stdout().lock();
    stdout.write_all(text.as_bytes())?;
    stdout.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
