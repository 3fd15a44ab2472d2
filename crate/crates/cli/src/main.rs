use std::path::PathBuf;
use std::process::ExitCode;

use chainbound::ring::MonomialOrder;
use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod failure;
mod input;

use commands::Report;
use failure::Failure;

/// Antichain length bounds, Buchberger traces and certified ideal
/// membership over the rationals.
#[derive(Parser, Debug)]
#[command(name = "chainbound", version, about)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Upper bound on the length of f-bounded antichains in N^m.
    Bound(BoundArgs),
    /// Degree bound (3^(B-1) - 1) d + i for membership cofactors.
    Gamma(GammaArgs),
    /// Antichain checks, exhaustive search and chain conversion.
    #[command(subcommand)]
    Antichain(AntichainCommand),
    /// Batch Buchberger run with certified elements.
    Groebner(GroebnerArgs),
    /// Multivariable division.
    Divide(DivideArgs),
    /// Ideal membership with a cofactor certificate.
    Member(MemberArgs),
}

#[derive(Args, Debug, Clone, Copy)]
pub struct BudgetArgs {
    /// Maximum number of recursion steps.
    #[arg(long, default_value_t = 1_000_000)]
    pub max_steps: u64,
    /// Maximum bit length of any intermediate value.
    #[arg(long, default_value_t = 65_536)]
    pub max_bits: u64,
}

#[derive(Args, Debug)]
pub struct BoundArgs {
    /// Number of variables.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub m: u64,
    /// Degree function: const:C, table:a1,...,ak or geom:D.
    #[arg(long)]
    pub f: String,
    /// Wrap a table in its running maximum so it need not be non-decreasing.
    #[arg(long)]
    pub running_max: bool,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Args, Debug)]
pub struct GammaArgs {
    /// Number of variables.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub m: u64,
    /// Generator degree bound.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub d: u64,
    /// Degree of the polynomial being tested.
    #[arg(long, default_value_t = 0)]
    pub i: u64,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Subcommand, Debug)]
pub enum AntichainCommand {
    /// Check whether a sequence is an antichain and optionally f-bounded.
    Check(CheckArgs),
    /// Exhaustive search for a longest f-bounded antichain.
    Search(SearchArgs),
    /// Convert a strictly ascending chain of ideals into an antichain.
    FromChain(FromChainArgs),
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    /// Sequence such as "(1,0);(0,1);(0,0)".
    #[arg(long, allow_hyphen_values = true)]
    pub seq: String,
    /// Degree function to check against.
    #[arg(long)]
    pub f: Option<String>,
    /// Caps on the leading coordinates, "b1,b2,...". Needs --f.
    #[arg(long, requires = "f")]
    pub beta: Option<String>,
    /// Wrap a table in its running maximum.
    #[arg(long)]
    pub running_max: bool,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    /// Number of variables.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub m: u64,
    /// Degree function.
    #[arg(long)]
    pub f: String,
    /// Wrap a table in its running maximum.
    #[arg(long)]
    pub running_max: bool,
    /// Maximum number of search nodes.
    #[arg(long, default_value_t = 1_000_000)]
    pub budget: u64,
}

#[derive(Args, Debug)]
pub struct FromChainArgs {
    #[arg(long, default_value = "deglex")]
    pub order: MonomialOrder,
    /// File with one generator per line, stages separated by blank lines.
    #[arg(long)]
    pub chain: PathBuf,
}

#[derive(Args, Debug)]
pub struct GroebnerArgs {
    #[arg(long, default_value = "deglex")]
    pub order: MonomialOrder,
    /// File with one polynomial per line.
    #[arg(long)]
    pub input: PathBuf,
    /// Write the full trace as JSON to this file.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Check the per-stage degree bounds for generator degree bound D.
    #[arg(long, value_name = "D")]
    pub check_degrees: Option<u64>,
}

#[derive(Args, Debug)]
pub struct DivideArgs {
    #[arg(long, default_value = "deglex")]
    pub order: MonomialOrder,
    /// Dividend.
    #[arg(long, allow_hyphen_values = true)]
    pub f: String,
    /// Divisors separated by ';'.
    #[arg(long, allow_hyphen_values = true)]
    pub by: String,
}

#[derive(Args, Debug)]
pub struct MemberArgs {
    #[arg(long, default_value = "deglex")]
    pub order: MonomialOrder,
    /// Polynomial to test.
    #[arg(long, allow_hyphen_values = true)]
    pub g: String,
    /// File with the ideal generators, one per line.
    #[arg(long)]
    pub ideal: PathBuf,
    /// Check the cofactor degrees against the bound for M variables and
    /// generator degree D, given as "M,D".
    #[arg(long, value_name = "M,D")]
    pub verify_bound: Option<String>,
    /// Cross-check with exact linear algebra over cofactors of degree <= N.
    #[arg(long, value_name = "N")]
    pub oracle_cap: Option<u64>,
    /// Largest linear system the cross-check may build.
    #[arg(long, default_value_t = 20_000)]
    pub oracle_max_unknowns: u64,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

fn dispatch(command: &Command) -> Result<Report, Failure> {
    match command {
        Command::Bound(args) => commands::bound(args),
        Command::Gamma(args) => commands::gamma(args),
        Command::Antichain(AntichainCommand::Check(args)) => commands::antichain_check(args),
        Command::Antichain(AntichainCommand::Search(args)) => commands::antichain_search(args),
        Command::Antichain(AntichainCommand::FromChain(args)) => commands::antichain_from_chain(args),
        Command::Groebner(args) => commands::groebner(args),
        Command::Divide(args) => commands::divide(args),
        Command::Member(args) => commands::member(args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match dispatch(&cli.command) {
        Ok(report) => {
            match cli.format {
                Format::Text => print!("{}", report.text),
                Format::Json => println!("{}", serde_json::to_string_pretty(&report.json).expect("serialisable")),
            }
            if report.check_failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            if cli.format == Format::Json {
                let doc = serde_json::json!({
                    "error": {
                        "kind": failure.kind(),
                        "message": failure.message(),
                        "details": failure.details(),
                    }
                });
                println!("{}", serde_json::to_string_pretty(&doc).expect("serialisable"));
            }
            failure.exit_code()
        }
    }
}
