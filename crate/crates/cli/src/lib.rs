//! Command-line harness around the `torus-roots` library: JSON documents,
//! reproducible reports and a seeded verification driver.

pub mod commands;
pub mod document;
pub mod report;
pub mod verify;

use thiserror::Error;

/// Environment variable overriding the witness-search cap.
pub const SEARCH_CAP_VAR: &str = "TORUS_ROOTS_SEARCH_CAP";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("invalid document: {0}")]
    Invalid(String),
    #[error("i/o: {0}")]
    Io(String),
    #[error(transparent)]
    Domain(#[from] torus_roots::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 1,
            _ => 2,
        }
    }
}

/// The witness-search cap from the environment, or the library default.
pub fn search_cap() -> Result<u64, CliError> {
    match std::env::var(SEARCH_CAP_VAR) {
        Ok(s) => match s.trim().parse::<u64>() {
            Ok(v) if v >= 1 => Ok(v),
            _ => Err(CliError::Usage(format!("{SEARCH_CAP_VAR} must be a positive integer, got {s:?}"))),
        },
        Err(_) => Ok(torus_roots::lattice_sets::DEFAULT_SEARCH_CAP),
    }
}
