use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};
use threeway_core::{Degree, Method, TNormKind};

mod commands;
mod config;

use config::Failure;

#[derive(Parser, Debug)]
#[command(name = "threeway", version, about = "Three-way decision rules from complete and incomplete tables")]
struct Cli {
    /// More log output (-v info, -vv debug).
    #[arg(short, long, action = ArgAction::Count, global = true)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Positive and negative description regions, followed by the derived rules.
    Regions(RunArgs),
    /// Accept, reject and non-commit rules for a class.
    Rules(RunArgs),
    /// Pairwise similarity matrix.
    Similarity(SimilarityArgs),
    /// Satisfiability degree of every formula, with confidence when a class is given.
    Satisfiability(SatisfiabilityArgs),
    /// Compare degree computations against brute-force enumeration.
    OracleCheck(OracleArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    /// Table in `.itab` format.
    #[arg(long)]
    pub table: PathBuf,

    /// Comma-separated condition attributes (default: all but the decision column).
    #[arg(long, value_delimiter = ',')]
    pub attrs: Option<Vec<String>>,

    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,

    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ClassArgs {
    /// Comma-separated object ids forming the target class.
    #[arg(long, value_delimiter = ',', conflicts_with = "class_column")]
    pub class: Option<Vec<String>>,

    /// Decision attribute; the class is every object taking `--class-value` on it.
    #[arg(long, requires = "class_value")]
    pub class_column: Option<String>,

    #[arg(long, requires = "class_column")]
    pub class_value: Option<String>,
}

#[derive(Args, Debug)]
pub struct Guards {
    /// Largest number of possible worlds an oracle may enumerate.
    #[arg(long, default_value_t = threeway_core::table::DEFAULT_MAX_WORLDS)]
    pub max_worlds: u64,

    /// Largest number of formulas or object descriptions to materialize.
    #[arg(long, default_value_t = threeway_core::language::DEFAULT_MAX_FORMULAS)]
    pub max_formulas: u64,
}

fn parse_degree(s: &str) -> Result<Degree, String> {
    s.parse().map_err(|e: threeway_core::Error| e.to_string())
}

#[derive(Args, Debug)]
pub struct RunArgs {
    #[command(flatten)]
    pub table: TableArgs,

    #[command(flatten)]
    pub class: ClassArgs,

    #[arg(long)]
    pub method: Method,

    /// `min` or `prod`; incomplete-table methods default to `min`.
    #[arg(long)]
    pub tnorm: Option<TNormKind>,

    /// Threshold in [0, 1], as a decimal (`0.3`) or a fraction (`1/3`).
    #[arg(long, value_parser = parse_degree)]
    pub alpha: Option<Degree>,

    /// Drop `NA` atoms from rules, on the listed attributes or on all of them.
    #[arg(long, value_name = "ATTRS", num_args = 0..=1, default_missing_value = "", value_delimiter = ',')]
    pub strip_na_atoms: Option<Vec<String>>,

    #[command(flatten)]
    pub guards: Guards,
}

#[derive(Args, Debug)]
pub struct SimilarityArgs {
    #[command(flatten)]
    pub table: TableArgs,

    #[command(flatten)]
    pub class: ClassArgs,

    #[arg(long, default_value = "min")]
    pub tnorm: TNormKind,
}

#[derive(Args, Debug)]
pub struct SatisfiabilityArgs {
    #[command(flatten)]
    pub table: TableArgs,

    #[command(flatten)]
    pub class: ClassArgs,

    #[arg(long, default_value = "min")]
    pub tnorm: TNormKind,

    #[command(flatten)]
    pub guards: Guards,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    #[command(flatten)]
    pub table: TableArgs,

    #[command(flatten)]
    pub class: ClassArgs,

    /// Threshold for the classical-reduction check (default: 1/2 and 1).
    #[arg(long, value_parser = parse_degree)]
    pub alpha: Option<Degree>,

    #[command(flatten)]
    pub guards: Guards,

    /// Check a deliberately wrong similarity instead of the real one.
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

fn init_logging(verbose: u8) {
    let level = match verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    env_logger::Builder::new()
        .filter_level(level)
        .parse_default_env()
        .format(|buf, record| writeln!(buf, "{}: {}", record.level().as_str().to_lowercase(), record.args()))
        .init();
}

fn emit(table: &TableArgs, text: &str) -> Result<(), Failure> {
    match &table.out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Io { path: path.clone(), source: e }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure::Io { path: "<stdout>".into(), source: e })
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Regions(args) => emit(&args.table, &commands::regions(&args)?),
        Command::Rules(args) => emit(&args.table, &commands::rules(&args)?),
        Command::Similarity(args) => emit(&args.table, &commands::similarity(&args)?),
        Command::Satisfiability(args) => emit(&args.table, &commands::satisfiability(&args)?),
        Command::OracleCheck(args) => {
            let (text, failed) = commands::oracle_check(&args)?;
            emit(&args.table, &text)?;
            if failed > 0 {
                return Err(Failure::OracleFailed(failed));
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    init_logging(cli.verbose);
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
