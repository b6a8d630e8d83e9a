pub mod bposit;
pub mod float;
pub mod posit;

use std::fmt;
use std::str::FromStr;

use ::bposit::{FormatKind, FormatSpec};

use crate::error::{CircuitError, Result};
use crate::netlist::Netlist;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CircuitKind {
    BPositDec,
    BPositEnc,
    PositDec,
    PositEnc,
    FloatDec,
    FloatEnc,
}

impl CircuitKind {
    pub const ALL: [CircuitKind; 6] = [
        CircuitKind::BPositDec,
        CircuitKind::BPositEnc,
        CircuitKind::PositDec,
        CircuitKind::PositEnc,
        CircuitKind::FloatDec,
        CircuitKind::FloatEnc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CircuitKind::BPositDec => "bposit-dec",
            CircuitKind::BPositEnc => "bposit-enc",
            CircuitKind::PositDec => "posit-dec",
            CircuitKind::PositEnc => "posit-enc",
            CircuitKind::FloatDec => "float-dec",
            CircuitKind::FloatEnc => "float-enc",
        }
    }

    pub fn is_decoder(self) -> bool {
        matches!(self, CircuitKind::BPositDec | CircuitKind::PositDec | CircuitKind::FloatDec)
    }

    pub fn accepts(self, spec: &FormatSpec) -> bool {
        match self {
            CircuitKind::BPositDec | CircuitKind::BPositEnc => spec.is_posit_family(),
            CircuitKind::PositDec | CircuitKind::PositEnc => spec.is_standard_equivalent(),
            CircuitKind::FloatDec | CircuitKind::FloatEnc => spec.kind() == FormatKind::IeeeBinary,
        }
    }

    /// The format a report pairs with this kind at width `n`.
    pub fn default_spec(self, n: u32) -> Option<FormatSpec> {
        match self {
            CircuitKind::BPositDec | CircuitKind::BPositEnc => FormatSpec::bposit(n, 6, 5).ok(),
            CircuitKind::PositDec | CircuitKind::PositEnc => FormatSpec::posit(n, 2).ok(),
            CircuitKind::FloatDec | CircuitKind::FloatEnc => FormatSpec::ieee(n).ok(),
        }
    }
}

impl fmt::Display for CircuitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CircuitKind {
    type Err = CircuitError;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| CircuitError::UnknownKind(s.to_string()))
    }
}

pub fn build_circuit(kind: CircuitKind, spec: &FormatSpec) -> Result<Netlist> {
    if !kind.accepts(spec) {
        return Err(CircuitError::UnsupportedKindForSpec { kind, spec: *spec });
    }
    Ok(match kind {
        CircuitKind::BPositDec => bposit::decoder(spec),
        CircuitKind::BPositEnc => bposit::encoder(spec),
        CircuitKind::PositDec => posit::decoder(spec),
        CircuitKind::PositEnc => posit::encoder(spec),
        CircuitKind::FloatDec => float::decoder(spec),
        CircuitKind::FloatEnc => float::encoder(spec),
    })
}
