//! Scalars the codecs convert to and from.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, Num};

use crate::float::FloatCodec;
use crate::format::FormatSpec;
use crate::value::{pow2_rational, ExactValue};

/// A number type with an exact rational reading.
///
/// `to_rational` is `None` for values with no real meaning (NaN, ±∞).
/// `from_exact` rounds to nearest-even where the type is narrower and maps
/// NaR to NaN where the type has one.
pub trait Scalar: Num + Clone + Debug {
    fn to_rational(&self) -> Option<BigRational>;
    fn from_exact(value: &ExactValue) -> Option<Self>;
}

macro_rules! ieee_scalar {
    ($t:ty, $bits:expr, $from_bits:expr) => {
        impl Scalar for $t {
            fn to_rational(&self) -> Option<BigRational> {
                if !self.is_finite() {
                    return None;
                }
                let (mantissa, exponent, sign) = Float::integer_decode(*self);
                let m = BigRational::from_integer(BigInt::from(mantissa) * BigInt::from(sign));
                Some(m * pow2_rational(exponent as i64))
            }

            fn from_exact(value: &ExactValue) -> Option<Self> {
                let codec =
                    FloatCodec::new(FormatSpec::ieee($bits).expect("supported width")).expect("ieee spec");
                let bits = match value.to_rational() {
                    None => return Some(<$t>::NAN),
                    Some(q) => codec.round_rational(&q),
                };
                Some($from_bits(bits))
            }
        }
    };
}

ieee_scalar!(f32, 32, |b: u64| f32::from_bits(b as u32));
ieee_scalar!(f64, 64, f64::from_bits);

impl Scalar for BigRational {
    fn to_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }

    fn from_exact(value: &ExactValue) -> Option<Self> {
        value.to_rational()
    }
}
