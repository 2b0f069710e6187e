use std::process::ExitCode;

use polyharm::cellgeom::CellgeomError;
use polyharm::kernelnum::KernelError;
use polyharm::symcalc::SymcalcError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// A property or reconstruction check did not hold.
    #[error("{0}")]
    Failed(String),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Parse(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 3,
            CliError::Parse(_) => 4,
        })
    }
}

impl From<SymcalcError> for CliError {
    fn from(e: SymcalcError) -> Self {
        match e {
            SymcalcError::PostconditionFailed(_) => CliError::Failed(e.to_string()),
            SymcalcError::BadOrder { .. } | SymcalcError::TooFewNodes(_) | SymcalcError::BadIndex { .. } => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<CellgeomError> for CliError {
    fn from(e: CellgeomError) -> Self {
        match e {
            CellgeomError::BadIndex { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<KernelError> for CliError {
    fn from(e: KernelError) -> Self {
        match e {
            KernelError::BadIndex { .. } => CliError::Usage(e.to_string()),
            KernelError::Inconsistent(_) => CliError::Failed(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
