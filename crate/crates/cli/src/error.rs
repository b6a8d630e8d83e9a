use bposit::FormatSpec;
use bposit_circuit::CircuitError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Format(#[from] bposit::Error),

    #[error(transparent)]
    Circuit(#[from] CircuitError),

    #[error("{value} is outside the dynamic range of {spec}")]
    OutOfRange { value: String, spec: FormatSpec },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, AnalysisError>;
