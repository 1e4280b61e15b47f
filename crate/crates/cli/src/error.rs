use std::process::ExitCode;

use scarf_core::analytic_scattering::ScatteringError;
use scarf_core::invariance_suite::InvarianceError;
use scarf_core::numeric_oracle::OracleError;
use scarf_core::scarf_model::ModelError;
use scarf_core::spectral_analysis::SpectralError;
use thiserror::Error;

/// Failure classes, one per nonzero exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Usage(_) => 1,
            CliError::Input(_) => 2,
            CliError::Numerical(_) => 3,
        })
    }
}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<ScatteringError> for CliError {
    fn from(e: ScatteringError) -> Self {
        match e {
            ScatteringError::KTooSmall(_) | ScatteringError::EnergyTooSmall(_) => CliError::Input(e.to_string()),
            ScatteringError::ExactSingularity { .. } | ScatteringError::Gamma(_) => CliError::Numerical(e.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::IllConditioned { .. } => CliError::Numerical(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<SpectralError> for CliError {
    fn from(e: SpectralError) -> Self {
        match e {
            SpectralError::Scattering(inner) => inner.into(),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<InvarianceError> for CliError {
    fn from(e: InvarianceError) -> Self {
        match e {
            InvarianceError::InvalidGrid(_) => CliError::Input(e.to_string()),
            InvarianceError::Scattering(inner) => inner.into(),
            InvarianceError::Oracle(inner) => inner.into(),
            InvarianceError::Inconclusive { .. } | InvarianceError::SingularGridPoint(_) => {
                CliError::Numerical(e.to_string())
            }
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Input(e.to_string())
    }
}
