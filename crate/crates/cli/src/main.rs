use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use relrank_cli::{CliError, Outcome, OutputFormat, EXIT_PARSE};

/// Matroids through their relative rank function.
#[derive(Parser)]
#[command(name = "relrank", version)]
struct Args {
    #[arg(long, value_enum, default_value_t, global = true)]
    format: OutputFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rank of a subset with a maximal independent witness.
    Rank { spec: PathBuf, set: String },
    /// Relative rank r(A|B) with its witness pair.
    Relrank { spec: PathBuf, a: String, b: String },
    /// Validate a matroid file or a relative rank table.
    Check { file: PathBuf },
    /// Rebuild a matroid from a table and compare tables.
    Roundtrip { table: PathBuf },
    /// Test whether the second matroid is the dual of the first.
    Dualcheck { first: PathBuf, second: PathBuf },
    /// Two matroids on Z with the same rank function but different relative ranks.
    Counterexample,
    /// Count matroids on up to N elements.
    Enumerate { n: usize },
    /// Print the relative rank table of a matroid file.
    Table { spec: PathBuf },
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn run(args: Args) -> Result<Outcome, CliError> {
    let fmt = args.format;
    match args.command {
        Command::Rank { spec, set } => relrank_cli::rank(&read(&spec)?, &set, fmt),
        Command::Relrank { spec, a, b } => relrank_cli::relrank(&read(&spec)?, &a, &b, fmt),
        Command::Check { file } => relrank_cli::check(&read(&file)?, fmt),
        Command::Roundtrip { table } => relrank_cli::roundtrip(&read(&table)?, fmt),
        Command::Dualcheck { first, second } => {
            relrank_cli::dualcheck(&read(&first)?, &read(&second)?, fmt)
        }
        Command::Counterexample => relrank_cli::counterexample(fmt),
        Command::Enumerate { n } => relrank_cli::enumerate(n, fmt),
        Command::Table { spec } => relrank_cli::table(&read(&spec)?),
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(value) = std::env::var("RELRANK_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| format!("RELRANK_THREADS must be a positive integer, got {value:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let args = Args::parse();
    if let Err(message) = configure_threads() {
        eprintln!("error: {message}");
        return ExitCode::from(EXIT_PARSE as u8);
    }
    match run(args) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            ExitCode::from(outcome.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
