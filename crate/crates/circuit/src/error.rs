use bposit::FormatSpec;
use thiserror::Error;

use crate::circuits::CircuitKind;

#[derive(Debug, Error)]
pub enum CircuitError {
    #[error("{kind} cannot be built for {spec}")]
    UnsupportedKindForSpec { kind: CircuitKind, spec: FormatSpec },
    #[error("expected {expected} input values, got {got}")]
    WidthMismatch { expected: usize, got: usize },
    #[error("invalid netlist: {0}")]
    InvalidNetlist(String),
    #[error("unknown circuit kind `{0}`")]
    UnknownKind(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, CircuitError>;
