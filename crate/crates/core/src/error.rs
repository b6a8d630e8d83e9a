use thiserror::Error;

use crate::format::FormatSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid format: {0}")]
    InvalidFormat(String),

    #[error("format mismatch: {left} vs {right}")]
    FormatMismatch { left: FormatSpec, right: FormatSpec },

    #[error("field out of range: {0}")]
    FieldOutOfRange(String),

    #[error("invalid regime value {code:#b} for rS = {rs}")]
    InvalidRegimeValue { code: u32, rs: u32 },

    #[error("{op} is not supported for {spec}")]
    UnsupportedFormat { op: &'static str, spec: FormatSpec },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
