//! `fusionlab`: character tables, subring lattices and integrality checks
//! for commutative fusion rings.

mod commands;
mod document;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::commands::CliError;

#[derive(Parser, Debug)]
#[command(name = "fusionlab", version, about = "Character theory and integrality checks for commutative fusion rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Working precision in bits for interval arithmetic.
    #[arg(long, global = true, env = "FUSIONLAB_PRECISION", default_value_t = 256,
          value_parser = clap::value_parser!(u32).range(32..=16384))]
    precision: u32,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Hypotheses to assume, added to those in the input document.
    #[arg(long, global = true, value_delimiter = ',')]
    assume: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// A ring document: a path, or the name of a bundled ring.
#[derive(Args, Debug, Clone)]
pub struct Input {
    pub input: String,

    /// Index of the character used as dimension function (FP by default).
    #[arg(long)]
    pub dimension: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the fusion axioms and, when present, the modular data.
    Validate {
        input: String,
    },
    /// Character table, codegrees, class dimensions and orthogonality.
    Chartable(Input),
    /// Dual hypergroup constants, RN, group-like characters and orbits.
    Dual(Input),
    /// Fusion subrings, kernels, centers and perps.
    Subcat(Input),
    /// Character classes relative to a subring.
    Classes {
        #[command(flatten)]
        input: Input,
        /// Labels of the subring members, comma separated.
        #[arg(long)]
        subring: Option<String>,
        /// Use the subrings generated by these simples instead.
        #[arg(long)]
        generator: Option<String>,
    },
    /// s-Isaacs property and s-Frobenius type.
    Isaacs {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "0")]
        s: String,
        /// Run on this fusion subring instead.
        #[arg(long)]
        subring: Option<String>,
    },
    /// Run theorem checks.
    Check {
        #[command(flatten)]
        input: Input,
        /// Claim id or number, or `all`.
        #[arg(long, default_value = "all")]
        theorem: String,
        #[arg(long, default_value = "1/2")]
        s: String,
        /// Restrict per-object claims to these simples.
        #[arg(long)]
        generator: Option<String>,
        /// Subring for the character-class and s-Isaacs claims.
        #[arg(long)]
        subring: Option<String>,
    },
    /// Characters from the S-matrix, Verlinde cross-check and the modular
    /// divisibility claim.
    Modular {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        generator: Option<String>,
    },
    /// `check` across every bundled ring.
    Corpus {
        #[arg(long, default_value = "all")]
        theorem: String,
        #[arg(long, default_value = "1/2")]
        s: String,
    },
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).map_err(|e| CliError::usage(e.to_string()))
        }
    }
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let ctx = commands::Context::new(cli.precision, &cli.assume)?;
    let rendered = match cli.command {
        Command::Validate { input } => ctx.validate(&input)?.render(cli.format),
        Command::Chartable(input) => ctx.chartable(&input)?.render(cli.format),
        Command::Dual(input) => ctx.dual(&input)?.render(cli.format),
        Command::Subcat(input) => ctx.subcat(&input)?.render(cli.format),
        Command::Classes { input, subring, generator } => {
            ctx.classes(&input, subring.as_deref(), generator.as_deref())?.render(cli.format)
        }
        Command::Isaacs { input, s, subring } => ctx.isaacs(&input, &s, subring.as_deref())?.render(cli.format),
        Command::Check { input, theorem, s, generator, subring } => ctx
            .check(&input, &theorem, &s, generator.as_deref(), subring.as_deref())?
            .render(cli.format),
        Command::Modular { input, generator } => ctx.modular(&input, generator.as_deref())?.render(cli.format),
        Command::Corpus { theorem, s } => ctx.corpus(&theorem, &s)?.render(cli.format),
    };
    let (text, code) = rendered;
    emit(&text, cli.out.as_ref())?;
    Ok(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(3),
            };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code as u8)
        }
    }
}
