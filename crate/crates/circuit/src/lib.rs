//! Gate-level models of number-format decoders and encoders.
//!
//! [`build_circuit`] produces a [`Netlist`] over AND, OR, NOT, XOR and MUX2
//! gates for b-posit, standard posit and IEEE float codecs. Netlists can be
//! simulated 64 vectors at a time, measured for gate count and unit-delay
//! depth, exported to JSON or DOT, and checked against the behavioral
//! codecs in the `bposit` crate.

pub mod builder;
pub mod circuits;
pub mod equivalence;
pub mod error;
pub mod netlist;

pub use builder::Builder;
pub use circuits::{build_circuit, CircuitKind};
pub use equivalence::{check_exhaustive, check_words, EquivalenceReport, Mismatch, Probe, Prober};
pub use error::{CircuitError, Result};
pub use netlist::{Block, BlockKind, Bus, CircuitMetrics, Gate, GateId, GateKind, Netlist};
