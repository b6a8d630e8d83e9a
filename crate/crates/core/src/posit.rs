//! Standard posit codec in the sequential style: exception check, leading
//! bit count over the word, then a shift to expose exponent and fraction.

use crate::error::{Error, Result};
use crate::fields::FieldSet;
use crate::format::{mask, FormatKind, FormatSpec};
use crate::pattern::BitPattern;
use crate::value::Class;

/// Length and polarity of the leading run of identical bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LbcResult {
    pub run_length: u32,
    pub run_bit: bool,
}

/// Leading bit count over the low `width` bits of `word`, by halving.
pub fn leading_bit_count(word: u64, width: u32) -> LbcResult {
    assert!((1..=64).contains(&width));
    let run_bit = (word >> (width - 1)) & 1 == 1;
    let (run_length, _) = count_run(word, width, run_bit);
    LbcResult { run_length, run_bit }
}

/// Returns `(run, whole)`: the leading run of `bit` in the low `width` bits
/// and whether it spans them all.
fn count_run(word: u64, width: u32, bit: bool) -> (u32, bool) {
    if width == 1 {
        let hit = (word & 1 == 1) == bit;
        return (hit as u32, hit);
    }
    let lo_width = width / 2;
    let hi_width = width - lo_width;
    let (hi, hi_whole) = count_run(word >> lo_width, hi_width, bit);
    if !hi_whole {
        return (hi, false);
    }
    let (lo, lo_whole) = count_run(word & mask(lo_width), lo_width, bit);
    (hi + lo, lo_whole)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StandardPositCodec {
    spec: FormatSpec,
}

impl StandardPositCodec {
    pub fn new(spec: FormatSpec) -> Result<Self> {
        if spec.kind() != FormatKind::StandardPosit {
            return Err(Error::UnsupportedFormat { op: "standard posit codec", spec });
        }
        Ok(Self { spec })
    }

    pub fn spec(&self) -> FormatSpec {
        self.spec
    }

    pub fn decode(&self, word: u64) -> FieldSet {
        let (n, es) = (self.spec.n(), self.spec.es());
        let word = word & mask(n);
        let body = word & mask(n - 1);
        // Reduction NOR: set for Zero and NaR.
        if body == 0 {
            return if word == 0 { FieldSet::zero() } else { FieldSet::nar() };
        }
        let sign = (word >> (n - 1)) & 1 == 1;
        let lbc = leading_bit_count(body, n - 1);
        let k = lbc.run_length;
        let regime = if lbc.run_bit { k as i32 - 1 } else { -(k as i32) };
        let regime_size = (k + 1).min(n - 1);

        let shifted = (body << regime_size) & mask(n - 1);
        let exponent = ((((shifted as u128) << es) >> (n - 1)) as u64) & mask(es);
        let f_width = self.spec.max_frac_bits();
        let frac_bits = (n - 1 - regime_size).saturating_sub(es);
        let fraction =
            if n - 1 > es { ((shifted & mask(n - 1 - es)) >> 2) >> (f_width - frac_bits) } else { 0 };
        FieldSet { class: Class::Real, sign, regime, regime_size, exponent, fraction, frac_bits }
    }

    pub fn encode(&self, fields: &FieldSet) -> Result<u64> {
        let (n, es) = (self.spec.n(), self.spec.es());
        match fields.class {
            Class::Zero => return Ok(0),
            Class::NaR => return Ok(1 << (n - 1)),
            Class::Real => {}
        }
        let spec = self.spec;
        let max_r = n as i32 - 2;
        if fields.regime < -max_r - 1 || fields.regime > max_r {
            return Err(Error::FieldOutOfRange(format!(
                "regime {} outside {}..={max_r} for {spec}",
                fields.regime,
                -max_r - 1
            )));
        }
        if fields.exponent > mask(es) || fields.frac_bits > 63 || fields.fraction > mask(fields.frac_bits) {
            return Err(Error::FieldOutOfRange(format!("{fields} does not fit {spec}")));
        }
        // Run length: r + 1 ones, or −r zeros.
        let k = if fields.regime >= 0 { fields.regime as u32 + 1 } else { (-fields.regime) as u32 };
        let regime_size = (k + 1).min(n - 1);
        let regime_word = if fields.regime >= 0 {
            mask(k) << (n - 1 - k)
        } else if k < n - 1 {
            1 << (n - 2 - k)
        } else {
            0
        };

        // Payload e·2^fb + f, shifted right past the regime.
        let payload_bits = es + fields.frac_bits;
        let payload = ((fields.exponent as u128) << fields.frac_bits) | fields.fraction as u128;
        let avail = n - 1 - regime_size;
        let body = if payload_bits > avail {
            let drop = payload_bits - avail;
            if payload & ((1u128 << drop) - 1) != 0 {
                return Err(Error::FieldOutOfRange(format!("{fields} has bits below the LSB of {spec}")));
            }
            (payload >> drop) as u64
        } else {
            (payload << (avail - payload_bits)) as u64
        };
        let word = (fields.sign as u64) << (n - 1) | regime_word | body;
        if word & mask(n - 1) == 0 {
            return Err(Error::FieldOutOfRange(format!("{fields} spells an exception pattern")));
        }
        Ok(word)
    }
}

pub fn decode_standard(p: &BitPattern) -> Result<FieldSet> {
    Ok(StandardPositCodec::new(p.spec())?.decode(p.bits()))
}

pub fn encode_standard(fields: &FieldSet, spec: FormatSpec) -> Result<BitPattern> {
    let bits = StandardPositCodec::new(spec)?.encode(fields)?;
    Ok(BitPattern::wrapping(spec, bits))
}
