use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dyck_core::{DisplayMode, Notation, PairedAlphabet, DEFAULT_ENUMERATION_CAP};

mod commands;
mod selftest;

use commands::Failure;

#[derive(Parser)]
#[command(name = "dyck")]
#[command(about = "Dyck language recognizers with approximation and separation certificates")]
#[command(version)]
struct Cli {
    /// Number of bracket pairs
    #[arg(long, global = true, default_value_t = 2)]
    pairs: usize,

    /// Read and print words with () [] {} instead of aA bB cC
    #[arg(long, global = true)]
    brackets: bool,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Largest number of words a single enumeration may visit
    #[arg(long, global = true, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: u128,

    /// Seed for generated quotients and sampled checks
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a word as one_sided, two_sided_only or neither, with a certificate
    Check { word: String },

    /// Print the leftmost-innermost cancellation trace of a word
    Reduce { word: String },

    /// Build a one-sided word with the same image under a quotient
    Approximate {
        word: String,

        /// Quotient file
        #[arg(long)]
        quotient: PathBuf,

        /// Also search for a shortest witness by brute force
        #[arg(long)]
        minimal: bool,

        /// Length bound for the --minimal search
        #[arg(long, default_value_t = 16)]
        max_length: usize,
    },

    /// Build a finite quotient separating a word from the one-sided language
    Separate {
        word: String,

        /// Re-check all one-sided words up to this length
        #[arg(long, default_value_t = 8)]
        verify_up_to: usize,

        /// Also write the certificate to this file
        #[arg(long)]
        output: Option<PathBuf>,
    },

    /// Re-check a separation certificate file
    Verify {
        certificate: PathBuf,

        #[arg(long, default_value_t = 8)]
        verify_up_to: usize,
    },

    /// Print exact member counts per length, checked against closed forms
    Count {
        #[arg(long, default_value_t = 6)]
        max_length: usize,

        /// Comma-separated rows instead of aligned tables
        #[arg(long)]
        csv: bool,
    },

    /// Generate or inspect quotient files
    Quotient {
        #[command(subcommand)]
        action: QuotientCommand,
    },

    /// Run the exhaustive equivalence, count, approximation and separation suites
    Selftest {
        #[arg(long, default_value_t = 6)]
        max_length: usize,
    },
}

#[derive(Subcommand)]
enum QuotientCommand {
    /// Draw a seeded random quotient
    Generate {
        #[arg(long)]
        degree: usize,

        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print cycles, orders and pair exponents of a quotient file
    Inspect { file: PathBuf },
}

pub struct Context {
    pub notation: Notation,
    pub format: Format,
    pub cap: u128,
    pub seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure { code, output }) => {
            print!("{output}");
            ExitCode::from(code)
        }
    }
}

fn run(cli: Cli) -> Result<String, Failure> {
    let alphabet = PairedAlphabet::new(cli.pairs).map_err(Failure::usage)?;
    let mode = if cli.brackets {
        DisplayMode::Bracket
    } else {
        DisplayMode::Letter
    };
    let ctx = Context {
        notation: Notation::new(alphabet, mode).map_err(Failure::usage)?,
        format: cli.format,
        cap: cli.cap,
        seed: cli.seed,
    };
    match cli.command {
        Command::Check { word } => commands::check(&ctx, &word),
        Command::Reduce { word } => commands::reduce(&ctx, &word),
        Command::Approximate {
            word,
            quotient,
            minimal,
            max_length,
        } => commands::approximate(&ctx, &word, &quotient, minimal.then_some(max_length)),
        Command::Separate {
            word,
            verify_up_to,
            output,
        } => commands::separate(&ctx, &word, verify_up_to, output.as_deref()),
        Command::Verify {
            certificate,
            verify_up_to,
        } => commands::verify(&ctx, &certificate, verify_up_to),
        Command::Count { max_length, csv } => commands::count(&ctx, max_length, csv),
        Command::Quotient { action } => match action {
            QuotientCommand::Generate { degree, output } => {
                commands::quotient_generate(&ctx, degree, output.as_deref())
            }
            QuotientCommand::Inspect { file } => commands::quotient_inspect(&ctx, &file),
        },
        Command::Selftest { max_length } => selftest::run(&ctx, max_length),
    }
}
