//! One-hot / multiplexer decoder.
//!
//! The regime size comes from a one-hot selector over the first `rS − 1`
//! bits after the regime MSB. The same selector drives a multiplexer over
//! `rS − 1` tap points of the word and a priority encoder for the regime
//! value, so nothing depends on a leading-bit count over the whole word.

use crate::fields::FieldSet;
use crate::format::{mask, FormatSpec};
use crate::value::Class;

use super::tables::{one_hot_from_xored, OneHotRegime};

/// Decoder outputs as they leave the datapath.
///
/// `exponent` is the raw exponent XORed with the sign (a one's complement
/// for negatives) and `exp_cin` is the deferred `+1` that completes the two's
/// complement when the fraction is zero. `fraction` stays in signed form,
/// left-aligned in `max_frac_bits` bits. For Zero and NaR the numeric
/// outputs are whatever the datapath produced; only the flags are meaningful.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecodeResult {
    pub zero: bool,
    pub nar: bool,
    pub sign: bool,
    pub one_hot: OneHotRegime,
    pub regime: i32,
    pub regime_size: u32,
    pub exponent: u64,
    pub exp_cin: bool,
    pub fraction: u64,
    spec: FormatSpec,
}

/// Sign-magnitude view handed to (and accepted from) the arithmetic stage.
///
/// The magnitude is `(1 + g)·2^(regime·2^eS + exponent)` with
/// `0 ≤ exponent < 2^eS`. For positive values `g` is `fraction`; for
/// negative values `fraction` is kept in signed form, so `g = −fraction mod 1`.
/// `fraction` is left-aligned in `max_frac_bits` bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DatapathFields {
    pub class: Class,
    pub sign: bool,
    pub regime: i32,
    pub exponent: u64,
    pub fraction: u64,
}

impl DatapathFields {
    pub fn zero() -> Self {
        Self { class: Class::Zero, sign: false, regime: 0, exponent: 0, fraction: 0 }
    }

    pub fn nar() -> Self {
        Self { class: Class::NaR, ..Self::zero() }
    }

    /// The datapath view of raw decoded fields.
    pub fn from_fields(fields: &FieldSet, spec: &FormatSpec) -> Option<Self> {
        match fields.class {
            Class::Zero => return Some(Self::zero()),
            Class::NaR => return Some(Self::nar()),
            Class::Real => {}
        }
        let f_width = spec.max_frac_bits();
        if fields.frac_bits > f_width || fields.exponent > mask(spec.es()) {
            return None;
        }
        let fraction = fields.fraction << (f_width - fields.frac_bits);
        let (regime, exponent) =
            magnitude_scale(fields.sign, fields.regime, fields.exponent, fraction == 0, spec.es());
        Some(Self { class: Class::Real, sign: fields.sign, regime, exponent, fraction })
    }
}

/// Regime and exponent of `|x|` given the raw fields of `x`.
fn magnitude_scale(sign: bool, r: i32, e: u64, frac_zero: bool, es: u32) -> (i32, u64) {
    if !sign {
        return (r, e);
    }
    let ones = e ^ mask(es);
    if frac_zero {
        complete_twos(-r - 1, ones, es)
    } else {
        (-r - 1, ones)
    }
}

/// Adds the deferred carry to a one's-complemented exponent, carrying into the regime.
fn complete_twos(regime: i32, ones: u64, es: u32) -> (i32, u64) {
    let sum = ones + 1;
    if sum >> es != 0 {
        (regime + 1, 0)
    } else {
        (regime, sum)
    }
}

impl DecodeResult {
    pub fn spec(&self) -> FormatSpec {
        self.spec
    }

    /// Number of fraction bits present in the word.
    pub fn frac_bits(&self) -> u32 {
        (self.spec.n() - 1 - self.regime_size).saturating_sub(self.spec.es())
    }

    /// The raw fields, identical to the reference decoder's output.
    pub fn to_fields(&self) -> FieldSet {
        if self.zero {
            return FieldSet::zero();
        }
        if self.nar {
            return FieldSet::nar();
        }
        let smask = if self.sign { mask(self.spec.es()) } else { 0 };
        let fb = self.frac_bits();
        FieldSet {
            class: Class::Real,
            sign: self.sign,
            regime: self.regime,
            regime_size: self.regime_size,
            exponent: self.exponent ^ smask,
            fraction: self.fraction >> (self.spec.max_frac_bits() - fb),
            frac_bits: fb,
        }
    }

    /// The sign-magnitude view after applying `exp_cin`.
    pub fn to_datapath(&self) -> DatapathFields {
        if self.zero {
            return DatapathFields::zero();
        }
        if self.nar {
            return DatapathFields::nar();
        }
        let (regime, exponent) = if !self.sign {
            (self.regime, self.exponent)
        } else if self.exp_cin {
            complete_twos(-self.regime - 1, self.exponent, self.spec.es())
        } else {
            (-self.regime - 1, self.exponent)
        };
        DatapathFields { class: Class::Real, sign: self.sign, regime, exponent, fraction: self.fraction }
    }
}

/// Regime selector for the low `N` bits of `word`.
pub fn regime_one_hot(spec: &FormatSpec, word: u64) -> OneHotRegime {
    let (n, rs) = (spec.n(), spec.rs());
    let lead = (word >> (n - 2)) & 1;
    let window = (word >> (n - 1 - rs)) & mask(rs - 1);
    let xored = if lead == 1 { window ^ mask(rs - 1) } else { window };
    one_hot_from_xored(xored, rs)
}

/// Multiplexer input for regime size `m`: the bits after the regime,
/// left-aligned in `N − 3` bits.
#[inline]
pub fn tap(spec: &FormatSpec, word: u64, m: u32) -> u64 {
    (word & mask(spec.n() - 1 - m)) << (m - 2)
}

pub fn decode_fast(spec: &FormatSpec, word: u64) -> DecodeResult {
    let (n, es) = (spec.n(), spec.es());
    let word = word & mask(n);
    let sign = (word >> (n - 1)) & 1 == 1;
    let lead = (word >> (n - 2)) & 1 == 1;
    let special = word & mask(n - 1) == 0;

    let one_hot = regime_one_hot(spec, word);
    let index = one_hot.index();
    // Priority encoder output XORed with the inverted regime MSB.
    let regime = if lead { index as i32 } else { !(index as i32) };
    let regime_size = one_hot.regime_size();

    let d = n - 3;
    let out = tap(spec, word, regime_size);
    let raw_exponent = (((out as u128) << es) >> d) as u64 & mask(es);
    let f_width = spec.max_frac_bits();
    let fraction = out & mask(f_width);

    let exponent = if sign { raw_exponent ^ mask(es) } else { raw_exponent };
    DecodeResult {
        zero: special && !sign,
        nar: special && sign,
        sign,
        one_hot,
        regime,
        regime_size,
        exponent,
        exp_cin: sign && fraction == 0,
        fraction,
        spec: *spec,
    }
}
