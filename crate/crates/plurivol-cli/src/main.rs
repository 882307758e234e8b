//! `plurivol` — exact plurigenera arithmetic and basket search from the
//! command line.
//!
//! Subcommands: `catalog`, `nabla-table`, `search`, `plurigenera`,
//! `verify`. Machine-readable output (CSV by default, JSON with
//! `--format json`) goes to stdout; human-readable notes go to stderr.
//! Exit status: 0 on success, 1 on a comparison or verification mismatch,
//! 2 on usage errors.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod output;
mod parse;
mod run;

#[derive(Parser)]
#[command(
    name = "plurivol",
    version,
    about = "Exact basket search for minimal 3-fold volumes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args)]
pub struct CatalogArgs {
    /// Largest singularity index to include.
    #[arg(long, default_value_t = 42)]
    pub r_max: u32,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Args)]
pub struct NablaTableArgs {
    /// Largest singularity index to include.
    #[arg(long, default_value_t = 42)]
    pub r_max: u32,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Emit a cell-level diff against reference values instead of the
    /// table itself; exits 1 when any cell differs.
    #[arg(long)]
    pub compare: bool,
    /// Reference table file for --compare (defaults to the embedded one).
    #[arg(long, requires = "compare")]
    pub reference: Option<std::path::PathBuf>,
}

#[derive(Args)]
pub struct SearchArgs {
    #[arg(long, default_value_t = 1)]
    pub chi: i64,
    /// Comma-separated P_12 values to search, each in 1..=4.
    #[arg(long, default_value = "1,2,3,4")]
    pub p12: String,
    /// Comma-separated filter names (positivity, miyaoka, bounds,
    /// integrality), or `none`.
    #[arg(long, default_value = "positivity,miyaoka,bounds")]
    pub filters: String,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Largest singularity index in the search catalog.
    #[arg(long, default_value_t = 42)]
    pub r_max: u32,
    /// Emit every enumerated basket, including ones that fail filters.
    #[arg(long, conflicts_with = "min")]
    pub all: bool,
    /// Emit only the surviving record with the smallest volume.
    #[arg(long)]
    pub min: bool,
    /// Worker threads; any value produces byte-identical output.
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    /// Search one explicit reduced target `a,b,c,d` instead of the
    /// admissible cases.
    #[arg(long, conflicts_with_all = ["p12", "min"])]
    pub target: Option<String>,
}

#[derive(Args)]
pub struct PlurigeneraArgs {
    /// Basket expression, e.g. "3*1/2(1)+1/4(3)+1/5(3)+1/6(5)+1/7(5)".
    #[arg(long)]
    pub basket: String,
    #[arg(long, default_value_t = 1)]
    pub chi: i64,
    /// Assumed P_2, from which the volume is solved.
    #[arg(long, default_value_t = 0)]
    pub p2: i64,
    /// Largest plurigenus order to tabulate.
    #[arg(long, default_value_t = 12)]
    pub max_m: u32,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Basket expression to check.
    #[arg(long)]
    pub basket: String,
    #[arg(long, default_value_t = 1)]
    pub chi: i64,
    /// Assumed P_2, from which the volume is solved.
    #[arg(long, default_value_t = 0)]
    pub p2: i64,
    /// Expected volume, e.g. "1/420".
    #[arg(long)]
    pub k3: String,
    /// Expected P_12.
    #[arg(long)]
    pub p12: i64,
    /// Filters to evaluate and report.
    #[arg(long, default_value = "positivity,miyaoka,bounds")]
    pub filters: String,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// List the singularity classes up to an index bound.
    Catalog(CatalogArgs),
    /// Emit the invariant table, or diff it against reference values.
    NablaTable(NablaTableArgs),
    /// Enumerate baskets for the admissible cases and apply filters.
    Search(SearchArgs),
    /// Tabulate plurigenera of one basket.
    Plurigenera(PlurigeneraArgs),
    /// Check one basket against an expected volume and P_12.
    Verify(VerifyArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Catalog(args) => run::catalog(&args),
        Command::NablaTable(args) => run::nabla_table(&args),
        Command::Search(args) => run::search(&args),
        Command::Plurigenera(args) => run::plurigenera(&args),
        Command::Verify(args) => run::verify(&args),
    };
    match result {
        Ok(status) => status,
        Err(run::CliError::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(run::CliError::Failed(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}
