//! File-driven front end for the `realtrace` library: `analyze`,
//! `synthesize` and `criteria`.

pub mod commands;
pub mod document;
pub mod error;
pub mod format;

pub use commands::{analyze, criteria, synthesize, AnalyzeOptions, Output, SynthesizeOptions};
pub use document::{parse_input, InputDocument, ParamOverrides, SCHEMA};
pub use error::CliError;

pub const DEFAULT_WORDS: usize = 6;
pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_SEED: u64 = 0;
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
