use std::path::PathBuf;

use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum StableError {
    /// A parameter or argument lies outside its admissible range.
    #[error("domain error: {name} = {value} violates {bound}")]
    Domain {
        name: &'static str,
        value: f64,
        bound: &'static str,
    },

    #[error("convergence failure: {0}")]
    Convergence(String),

    #[error("degenerate data: {0}")]
    DegenerateData(String),

    #[error("insufficient data: need at least {needed} observations, got {got}")]
    InsufficientData { needed: usize, got: usize },

    #[error("parse error at row {row}: {reason}")]
    Parse { row: usize, reason: String },

    #[error("schema error: {0}")]
    Schema(String),

    #[error("empty file: {}", .0.display())]
    EmptyFile(PathBuf),

    #[error("io error on {}: {reason}", .path.display())]
    Io { path: PathBuf, reason: String },

    #[error("table asset error: {0}")]
    Table(String),
}

impl StableError {
    pub(crate) fn domain(name: &'static str, value: f64, bound: &'static str) -> Self {
        StableError::Domain { name, value, bound }
    }

    /// Name of the offending parameter for domain errors.
    pub fn domain_name(&self) -> Option<&'static str> {
        match self {
            StableError::Domain { name, .. } => Some(name),
            _ => None,
        }
    }
}

pub type Result<T> = std::result::Result<T, StableError>;
