//! `nearring`: load finite nearrings, enumerate their substructures, certify
//! P-regularity and run the statement checks.
//!
//! Exit codes: 0 when every verdict holds or is inapplicable, 1 when a check
//! produced a counterexample, 2 on input errors.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nearring_core::{StructureKind, TheoremId};

#[derive(Parser, Debug)]
#[command(name = "nearring", version, about = "Finite nearring toolkit")]
struct Cli {
    /// Worker threads for parallel searches (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    workers: Option<u16>,

    /// Report format on stdout.
    #[arg(long, global = true, value_enum, default_value_t = ReportFormat::Text)]
    format: ReportFormat,

    /// Print elapsed time to stderr.
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FileFormat {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the nearring axioms on a table file.
    Check { file: PathBuf },

    /// List every substructure of one kind.
    Enumerate {
        #[arg(long, value_parser = parse_kind)]
        kind: StructureKind,
        file: PathBuf,
    },

    /// Certify regularity, P-regularity for one ideal, or classify all ideals.
    Regularity {
        file: PathBuf,
        /// Ideal as comma-separated element indices, e.g. `0,2`.
        #[arg(long, conflicts_with = "all_ideals")]
        ideal: Option<String>,
        #[arg(long)]
        all_ideals: bool,
        #[arg(long)]
        strict_unity: bool,
    },

    /// Run the statement checks.
    Verify(VerifyArgs),

    /// Build one explicit decomposition witness.
    Decompose(DecomposeArgs),

    /// List the built-in catalog, optionally writing each entry to a file.
    Catalog {
        #[arg(long, default_value_t = 27)]
        max_order: usize,
        #[arg(long)]
        export: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FileFormat::Text)]
        export_format: FileFormat,
    },

    /// Rewrite a nearring file; formats follow the extensions (`.nr`, `.nr.json`).
    Convert { input: PathBuf, output: PathBuf },
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    pub file: PathBuf,
    /// Statement labels, repeatable or comma-separated (default: all).
    #[arg(long = "theorem", value_delimiter = ',', value_parser = parse_theorem)]
    pub theorems: Vec<TheoremId>,
    /// Run against every P-regular ideal (the default).
    #[arg(long, conflicts_with = "ideal")]
    pub all: bool,
    /// Run against this ideal only.
    #[arg(long)]
    pub ideal: Option<String>,
    #[arg(long)]
    pub strict_unity: bool,
    /// Include every individual report, not just the summary and failures.
    #[arg(long)]
    pub detailed: bool,
    /// Longest block family for 3.5 and 3.8.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u8).range(2..=6))]
    pub max_family: u8,
}

#[derive(Args, Debug)]
pub struct DecomposeArgs {
    pub file: PathBuf,
    #[arg(long, value_parser = parse_theorem)]
    pub theorem: TheoremId,
    #[arg(long)]
    pub element: usize,
    /// Bi-ideals as comma-separated indices; separate several with `;` or
    /// repeat the flag.
    #[arg(long, required = true, value_delimiter = ';')]
    pub blocks: Vec<String>,
    /// Free parameter for 3.4 and 3.5 (default 0).
    #[arg(long)]
    pub x: Option<usize>,
    /// Ideal P (default: the smallest P-regular ideal).
    #[arg(long)]
    pub ideal: Option<String>,
    #[arg(long)]
    pub strict_unity: bool,
}

fn parse_kind(s: &str) -> Result<StructureKind, String> {
    s.parse()
}

fn parse_theorem(s: &str) -> Result<TheoremId, String> {
    s.parse()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();

    let outcome = match cli.workers {
        Some(w) => match rayon::ThreadPoolBuilder::new().num_threads(w.into()).build() {
            Ok(pool) => pool.install(|| commands::run(&cli.command, cli.format)),
            Err(e) => Err(anyhow::anyhow!("cannot start worker pool: {e}")),
        },
        None => commands::run(&cli.command, cli.format),
    };

    if cli.timing {
        eprintln!("elapsed: {:.3} s", start.elapsed().as_secs_f64());
    }
    match outcome {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
