//! Correctly rounded conversion of exact reals to b-posit words.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::fields::fields_to_value;
use crate::format::{mask, FormatSpec};
use crate::value::{floor_log2_rational, Class};

use super::encode::encode_datapath;
use super::fast::DatapathFields;
use super::reference::decode_reference;
use super::tables::raw_regime_field;

/// Rounds `x` to the nearest value of the format. Ties go to the pattern
/// with a zero LSB. Nonzero values never round to Zero and finite values
/// never round to NaR: magnitudes outside `[minpos, maxpos]` saturate.
pub fn round_rational(spec: &FormatSpec, x: &BigRational) -> u64 {
    if x.is_zero() {
        return 0;
    }
    let p = round_magnitude(spec, &x.abs());
    if x.is_negative() {
        negative_word(spec, p)
    } else {
        p
    }
}

fn value_rational(spec: &FormatSpec, word: u64) -> BigRational {
    fields_to_value(&decode_reference(spec, word), spec).to_rational().expect("real pattern")
}

fn round_magnitude(spec: &FormatSpec, ax: &BigRational) -> u64 {
    let maxpos = mask(spec.n() - 1);
    if *ax >= value_rational(spec, maxpos) {
        return maxpos;
    }
    if *ax <= value_rational(spec, 1) {
        return 1;
    }
    let lo = floor_pattern(spec, ax).max(1);
    let hi = lo + 1;
    let twice = ax * BigInt::from(2);
    match twice.cmp(&(value_rational(spec, lo) + value_rational(spec, hi))) {
        Ordering::Less => lo,
        Ordering::Greater => hi,
        Ordering::Equal if lo & 1 == 0 => lo,
        Ordering::Equal => hi,
    }
}

/// Largest positive pattern whose value does not exceed `ax`, for
/// `minpos ≤ ax < maxpos`: the bit string of `ax` truncated to the word.
fn floor_pattern(spec: &FormatSpec, ax: &BigRational) -> u64 {
    let (n, es) = (spec.n(), spec.es());
    let t = floor_log2_rational(ax);
    let r = t.div_euclid(1 << es) as i32;
    let e = t.rem_euclid(1 << es) as u64;
    let (field, size) = raw_regime_field(r, spec.rs());
    let avail = n - 1 - size;

    // Bits of ax / 2^t after the leading one, enough to fill the word.
    let scaled = ax * crate::value::pow2_rational(avail as i64 - t);
    let bits: BigUint = scaled.to_integer().magnitude().clone();
    let frac_all = bits - (BigUint::one() << avail as usize);
    let payload = ((BigUint::from(e) << avail as usize) | frac_all) >> es as usize;
    let body = u64::try_from(payload).expect("payload fits the word");
    field << avail | body
}

/// The negative of a positive pattern, packed through the datapath encoder
/// from its sign-magnitude fields.
fn negative_word(spec: &FormatSpec, positive: u64) -> u64 {
    let f = decode_reference(spec, positive);
    debug_assert_eq!(f.class, Class::Real);
    let f_width = spec.max_frac_bits();
    let g = f.fraction << (f_width - f.frac_bits);
    let signed_fraction = g.wrapping_neg() & mask(f_width);
    let d = DatapathFields {
        class: Class::Real,
        sign: true,
        regime: f.regime,
        exponent: f.exponent,
        fraction: signed_fraction,
    };
    encode_datapath(spec, &d).expect("negation of a valid pattern is encodable")
}
