use ergofit::{DatasetError, DesignError, FitError, SpecError, StatsError};
use thiserror::Error;

/// Failure of a command, split by who has to fix it.
#[derive(Debug, Error)]
pub enum CliError {
    /// Bad or missing input files, flags or payloads.
    #[error("{0}")]
    Input(String),
    /// The inputs were readable but the analysis could not be carried out.
    #[error("{0}")]
    Analysis(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Analysis(_) => 1,
        }
    }
}

impl From<DatasetError> for CliError {
    fn from(e: DatasetError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<SpecError> for CliError {
    fn from(e: SpecError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<StatsError> for CliError {
    fn from(e: StatsError) -> Self {
        CliError::Analysis(e.to_string())
    }
}

impl From<FitError> for CliError {
    fn from(e: FitError) -> Self {
        match e {
            FitError::Configuration(_) => CliError::Input(e.to_string()),
            FitError::ReportMismatch(_) => CliError::Analysis(e.to_string()),
        }
    }
}

impl From<DesignError> for CliError {
    fn from(e: DesignError) -> Self {
        match e {
            DesignError::Config(_) | DesignError::Spec(_) => CliError::Input(e.to_string()),
            DesignError::Fit(f) => f.into(),
            _ => CliError::Analysis(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}
