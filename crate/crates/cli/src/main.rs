use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use realtrace_cli::format::to_canonical;
use realtrace_cli::{analyze, criteria, synthesize, AnalyzeOptions, Output, SynthesizeOptions, DEFAULT_SEED};

#[derive(Parser)]
#[command(
    name = "realtrace",
    version,
    about = "Trace realness and hidden real forms of hyperbolic groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Args)]
struct Common {
    /// Maximum word length scanned.
    #[arg(long = "words", value_name = "L")]
    words: Option<usize>,
    /// Numerical tolerance.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Full analysis of a generator document.
    Analyze {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        skip_detect: bool,
    },
    /// Write a seeded instance with a hidden block structure.
    Synthesize {
        /// SU or Sp.
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
        /// real_form or complex_line.
        #[arg(long)]
        kind: String,
        /// Real form dimension, for real_form.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Number of generators, 2 or 3.
        #[arg(long, default_value_t = 2)]
        generators: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Criterion I and II witnesses over the word ball of an Sp(n,1) input.
    Criteria {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

fn options(c: &Common, skip_detect: bool) -> AnalyzeOptions {
    AnalyzeOptions {
        words: c.words,
        tol: c.tol,
        seed: c.seed,
        skip_detect,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, format) = match cli.command {
        Command::Analyze {
            input,
            common,
            skip_detect,
        } => (analyze(&input, &options(&common, skip_detect)), common.format),
        Command::Synthesize {
            family,
            n,
            kind,
            m,
            seed,
            generators,
            out,
            format,
        } => {
            let opts = SynthesizeOptions {
                family,
                n,
                kind,
                m,
                seed,
                generators,
                out,
            };
            (synthesize(&opts), format)
        }
        Command::Criteria { input, common } => (criteria(&input, &options(&common, false)), common.format),
    };
    match result {
        Ok(Output { report, text, warnings }) => {
            match format {
                Format::Text => print!("{text}"),
                Format::Structured => {
                    print!("{}", to_canonical(&report));
                    for w in &warnings {
                        eprintln!("warning: {w}");
                    }
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
