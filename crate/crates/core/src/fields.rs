//! Decoded posit fields and their exact value.

use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;

use crate::format::FormatSpec;
use crate::value::{Class, ExactValue};

/// Fields of a posit-family pattern, read from the raw word.
///
/// `exponent` includes any ghost zero bits, so it always has `eS` bits.
/// The fraction is `fraction / 2^frac_bits`. For Zero and NaR every numeric
/// field is zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldSet {
    pub class: Class,
    pub sign: bool,
    pub regime: i32,
    pub regime_size: u32,
    pub exponent: u64,
    pub fraction: u64,
    pub frac_bits: u32,
}

impl FieldSet {
    pub fn zero() -> Self {
        Self::special(Class::Zero)
    }

    pub fn nar() -> Self {
        Self::special(Class::NaR)
    }

    fn special(class: Class) -> Self {
        Self { class, sign: false, regime: 0, regime_size: 0, exponent: 0, fraction: 0, frac_bits: 0 }
    }

    pub fn fraction_rational(&self) -> BigRational {
        BigRational::new(self.fraction.into(), num_bigint::BigInt::one() << self.frac_bits as usize)
    }

    /// Effective exponent `T = (1−2s)(r·2^eS + e + s)`.
    pub fn effective_exponent(&self, es: u32) -> i64 {
        let s = self.sign as i64;
        (1 - 2 * s) * ((self.regime as i64) * (1i64 << es) + self.exponent as i64 + s)
    }
}

impl fmt::Display for FieldSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.class {
            Class::Zero => f.write_str("Zero"),
            Class::NaR => f.write_str("NaR"),
            Class::Real => write!(
                f,
                "s={} r={} (size {}) e={} f={}/2^{}",
                self.sign as u8, self.regime, self.regime_size, self.exponent, self.fraction, self.frac_bits
            ),
        }
    }
}

/// `(1 − 3s + f) · 2^T` exactly.
pub fn fields_to_value(fields: &FieldSet, spec: &FormatSpec) -> ExactValue {
    match fields.class {
        Class::Zero => ExactValue::zero(),
        Class::NaR => ExactValue::nar(),
        Class::Real => {
            let t = fields.effective_exponent(spec.es());
            let fb = fields.frac_bits as usize;
            let f = BigUint::from(fields.fraction);
            // 1 + f for s = 0; f − 2 = −(2 − f) for s = 1.
            let magnitude =
                if fields.sign { (BigUint::one() << (fb + 1)) - f } else { (BigUint::one() << fb) + f };
            ExactValue::from_parts(fields.sign, magnitude, t - fb as i64)
        }
    }
}
