//! Parallel-packing encoder.
//!
//! The regime value selects one of `rS − 1` packing layouts. The regime
//! string comes from a binary decoder over the folded regime value, the
//! exponent is two's-complemented with an XOR and a conditional increment,
//! and an exponent carry-out is absorbed by adjusting the regime string.

use crate::error::{Error, Result};
use crate::fields::FieldSet;
use crate::format::{mask, FormatSpec};
use crate::value::Class;

use super::fast::DatapathFields;
use super::tables::{raw_regime_field, regime_code, regime_string_of};

pub fn encode_datapath(spec: &FormatSpec, d: &DatapathFields) -> Result<u64> {
    let (n, rs, es) = (spec.n(), spec.rs(), spec.es());
    match d.class {
        Class::Zero => return Ok(0),
        Class::NaR => return Ok(1 << (n - 1)),
        Class::Real => {}
    }
    if d.regime < -(rs as i32) || d.regime > rs as i32 - 1 {
        return Err(Error::FieldOutOfRange(format!(
            "regime {} outside {}..={} for {spec}",
            d.regime,
            -(rs as i32),
            rs - 1
        )));
    }
    if d.exponent > mask(es) {
        return Err(Error::FieldOutOfRange(format!("exponent {} exceeds {es} bits", d.exponent)));
    }
    let f_width = spec.max_frac_bits();
    if d.fraction > mask(f_width) {
        return Err(Error::FieldOutOfRange(format!("fraction {:#x} exceeds {f_width} bits", d.fraction)));
    }

    let sign_word = (d.sign as u64) << (n - 1);
    let cin = d.sign && d.fraction == 0;
    let smask = if d.sign { mask(es) } else { 0 };
    let e_sum = (d.exponent ^ smask) + cin as u64;
    let overflow = e_sum >> es != 0;

    if overflow {
        // The exponent and fraction are all zero; only the regime moves.
        // A zero run shrinks by one, a one run grows by one.
        let r1 = -d.regime - 1;
        let (field, size) = raw_regime_field(r1 + 1, rs);
        return Ok(sign_word | field << (n - 1 - size));
    }

    let rstr = regime_string_of(regime_code(d.regime, rs), d.sign, rs)?;
    let size = rstr.width;
    let e_raw = e_sum & mask(es);

    let payload_bits = es + f_width;
    let payload = ((e_raw as u128) << f_width) | d.fraction as u128;
    let avail = n - 1 - size;
    let body = if payload_bits >= avail {
        let drop = payload_bits - avail;
        if payload & ((1u128 << drop) - 1) != 0 {
            return Err(Error::FieldOutOfRange(format!(
                "payload {payload:#x} has nonzero bits below a {size}-bit regime in {spec}"
            )));
        }
        (payload >> drop) as u64
    } else {
        (payload << (avail - payload_bits)) as u64
    };
    Ok(sign_word | rstr.bits << avail | body)
}

pub fn encode_fields(spec: &FormatSpec, fields: &FieldSet) -> Result<u64> {
    if fields.class == Class::Real {
        check_fields(spec, fields)?;
    }
    let d = DatapathFields::from_fields(fields, spec).ok_or_else(|| {
        Error::FieldOutOfRange(format!("fraction of {} bits does not fit {spec}", fields.frac_bits))
    })?;
    encode_datapath(spec, &d)
}

pub(crate) fn check_fields(spec: &FormatSpec, fields: &FieldSet) -> Result<()> {
    let rs = spec.rs() as i32;
    if fields.regime < -rs || fields.regime > rs - 1 {
        return Err(Error::FieldOutOfRange(format!(
            "regime {} outside {}..={} for {spec}",
            fields.regime,
            -rs,
            rs - 1
        )));
    }
    if fields.exponent > mask(spec.es()) {
        return Err(Error::FieldOutOfRange(format!(
            "exponent {} exceeds {} bits",
            fields.exponent,
            spec.es()
        )));
    }
    if fields.frac_bits > 63 || fields.fraction > mask(fields.frac_bits) {
        return Err(Error::FieldOutOfRange(format!(
            "fraction {:#x} exceeds {} bits",
            fields.fraction, fields.frac_bits
        )));
    }
    if fields.sign && fields.regime == -rs && fields.exponent == 0 && fields.fraction == 0 {
        return Err(Error::FieldOutOfRange("these fields spell NaR, not a real".to_string()));
    }
    if !fields.sign && fields.regime == -rs && fields.exponent == 0 && fields.fraction == 0 {
        return Err(Error::FieldOutOfRange("these fields spell Zero, not a real".to_string()));
    }
    Ok(())
}
