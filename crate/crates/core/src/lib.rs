//! Bounded posits (b-posits): posits whose regime field is capped at `rS`
//! bits, so that decoding needs only a small multiplexer instead of a
//! leading-bit counter and shifter.
//!
//! The crate provides exact reference semantics for b-posits, standard
//! posits and IEEE binary floats, a fast one-hot decoder and a packing
//! encoder modelled on a hardware datapath, correctly rounded conversion,
//! and an exact quire.
//!
//! ```
//! use bposit::{BPositCodec, FormatSpec};
//!
//! let codec = BPositCodec::new(FormatSpec::bposit(16, 6, 5)?)?;
//! let word = codec.round_scalar(3.14159f64);
//! assert_eq!(codec.to_scalar::<f64>(word), Some(3.140625));
//! # Ok::<(), bposit::Error>(())
//! ```

pub mod arith;
pub mod bposit;
pub mod error;
pub mod fields;
pub mod float;
pub mod format;
pub mod pattern;
pub mod posit;
pub mod scalar;
pub mod value;

pub use arith::{add_exact, mul_exact, quire_size_of, Quire, Unpacked};
pub use bposit::{
    decode_fast, decode_reference, encode_fields, format_extremes, regime_one_hot, round_real_to_bposit,
    BPositCodec, DatapathFields, DecodeResult, Extremes, OneHotRegime,
};
pub use error::{Error, Result};
pub use fields::{fields_to_value, FieldSet};
pub use float::{decode_float, encode_float, FloatClass, FloatCodec, RecodedFloat};
pub use format::{FormatKind, FormatSpec};
pub use pattern::{compare_as_posit, BitPattern};
pub use posit::{decode_standard, encode_standard, leading_bit_count, LbcResult, StandardPositCodec};
pub use scalar::Scalar;
pub use value::{parse_decimal, Class, ExactValue};

/// Exact rational used by every oracle.
pub type Rational = num_rational::BigRational;
