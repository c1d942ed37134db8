use std::path::PathBuf;

use thiserror::Error;

use crate::instance::ValidationError;

#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: unsupported format version {found} (expected {expected})")]
    Version {
        line: usize,
        found: String,
        expected: u32,
    },

    #[error("invalid instance: {}", join_errors(.0))]
    InvalidInstance(Vec<ValidationError>),

    #[error("invalid tour: {0}")]
    InvalidTour(String),

    #[error("instance has {m} edges, exceeding the limit of {limit}")]
    TooLarge { m: usize, limit: usize },

    #[error("parents are not permutations of the same edge set")]
    MismatchedParents,

    #[error("{0}")]
    Config(String),
}

fn join_errors(errs: &[ValidationError]) -> String {
    errs.iter()
        .map(|e| e.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
