use std::path::PathBuf;

use thiserror::Error;

use crate::model::Dimension;

/// Errors raised while reading or validating a population dataset.
#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("dataset not found: {}", .0.display())]
    NotFound(PathBuf),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("schema error: missing column {0}")]
    MissingColumn(String),
    #[error("line {line}: {message}")]
    Row { line: u64, message: String },
    #[error("validation failed: {}", .violations.join("; "))]
    Validation { violations: Vec<String> },
    #[error("line {line}: duplicate id {id:?}")]
    DuplicateId { line: u64, id: String },
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

/// Errors raised while parsing or validating a furniture specification.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecError {
    #[error("missing dimension {0}")]
    MissingDimension(Dimension),
    #[error("unknown dimension {0:?}")]
    UnknownDimension(String),
    #[error("{0}")]
    InvalidValue(String),
    #[error("malformed specification: {0}")]
    Malformed(String),
}

/// Numerical domain errors shared by the statistics routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum StatsError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("undefined correlation: {0}")]
    UndefinedCorrelation(String),
    #[error("degenerate variance: within-group sum of squares is zero while between-group is not")]
    DegenerateVariance,
}

impl StatsError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        StatsError::Domain(msg.into())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FitError {
    #[error("configuration error: {0}")]
    Configuration(String),
    #[error("report mismatch: {0}")]
    ReportMismatch(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DesignError {
    #[error("rule for {rule}: {message}")]
    Rule { rule: String, message: String },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Stats(#[from] StatsError),
    #[error(transparent)]
    Fit(#[from] FitError),
}
