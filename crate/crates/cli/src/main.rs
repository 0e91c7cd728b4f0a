//! `renorm` — command-line workbench for graph-by-graph subtraction.
//!
//! Every subcommand reads graphs either from the files given on the
//! command line (`.json` documents or `.g` graph-description files) or,
//! with no files, from the built-in corpus. Reports go to stdout in a
//! byte-stable text or JSON form; diagnostics go to stderr.
//!
//! Exit codes: 0 on success (identities confirmed, methods identical),
//! 1 when a checked property fails (refuted identity, method mismatch,
//! rejected character), 2 on usage or input errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use renorm_cli::commands::{self, CommandOutput, Failure};
use renorm_cli::config::{OutputFormat, SchemeSpec, WorkbenchConfig};
use renorm_core::renorm::Method;

#[derive(Parser)]
#[command(
    name = "renorm",
    version,
    about = "Workbench for graph-by-graph subtraction and its factorisations"
)]
struct Cli {
    /// Subtraction scheme: minimal, critical, pole, or custom:<file>
    /// where <file> is a JSON object mapping class names to jet orders.
    #[arg(long, global = true, default_value = "minimal")]
    scheme: String,

    /// Construction method for `renormalize`.
    #[arg(long, global = true, value_enum, default_value_t = MethodArg::Bogoliubov)]
    method: MethodArg,

    /// Largest grade (loop count) processed.
    #[arg(long, global = true, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..=6))]
    max_grade: u32,

    /// Random samples per identity check in `classify`.
    #[arg(long, global = true, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
    samples: u64,

    /// Seed for every pseudorandom draw; equal seeds give equal reports.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Bogoliubov,
    #[value(name = "exp-left")]
    ExpLeft,
    #[value(name = "exp-right")]
    ExpRight,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Bogoliubov => Method::Bogoliubov,
            MethodArg::ExpLeft => Method::ExpLeft,
            MethodArg::ExpRight => Method::ExpRight,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// List every spinney of every input graph.
    Wood { files: Vec<PathBuf> },
    /// Tabulate loop, edge, vertex, leg counts and both degrees.
    Degrees { files: Vec<PathBuf> },
    /// Print the reduced splitting of each input graph.
    Coproduct { files: Vec<PathBuf> },
    /// Test the counterterm and renormalised identities on random data.
    Classify { files: Vec<PathBuf> },
    /// Factorise a character with the selected method and verify the
    /// factorisation. Accepts graph files plus an optional
    /// `random:seed=N` argument choosing the character.
    Renormalize { args: Vec<String> },
    /// Run all three methods on one character and diff the results.
    Compare { args: Vec<String> },
    /// Run the built-in acceptance suite.
    Selftest,
}

fn run(cli: Cli) -> Result<CommandOutput, Failure> {
    let scheme = SchemeSpec::parse(&cli.scheme).map_err(Failure::usage)?;
    let config = WorkbenchConfig {
        max_grade: cli.max_grade,
        samples: cli.samples,
        seed: cli.seed,
        scheme,
        format: match cli.format {
            FormatArg::Text => OutputFormat::Text,
            FormatArg::Json => OutputFormat::Json,
        },
    };
    config.validate().map_err(Failure::usage)?;
    match cli.command {
        Command::Wood { files } => commands::wood(&config, &files),
        Command::Degrees { files } => commands::degrees(&config, &files),
        Command::Coproduct { files } => commands::coproduct(&config, &files),
        Command::Classify { files } => commands::classify(&config, &files),
        Command::Renormalize { args } => commands::renormalize(&config, cli.method.into(), &args),
        Command::Compare { args } => commands::compare(&config, &args),
        Command::Selftest => commands::selftest(&config),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(output) => {
            print!("{}", output.report);
            ExitCode::from(output.exit as u8)
        }
        Err(failure) => {
            eprintln!("{}", failure.message);
            ExitCode::from(failure.exit as u8)
        }
    }
}
