//! Bounded-posit codec: reference and fast decoders, the packing encoder
//! and correctly rounded conversion.
//!
//! The codec works for any posit-family [`FormatSpec`]; a standard posit
//! `⟨N, eS⟩` is handled as `⟨N, N−1, eS⟩`.

mod encode;
mod fast;
mod reference;
mod round;
pub mod tables;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::fields::{fields_to_value, FieldSet};
use crate::format::{mask, FormatSpec};
use crate::pattern::BitPattern;
use crate::scalar::Scalar;
use crate::value::{Class, ExactValue};

pub use fast::{tap, DatapathFields, DecodeResult};
pub use tables::{OneHotRegime, RegimeString};

/// Extreme magnitudes of a posit-family format.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extremes {
    pub minpos: ExactValue,
    pub maxpos: ExactValue,
    /// `(floor(log2 minpos), ceil(log2 maxpos))`.
    pub dynamic_range_log2: (i64, i64),
}

/// Codec bound to one posit-family format. Word arguments use their low
/// `N` bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BPositCodec {
    spec: FormatSpec,
}

impl BPositCodec {
    pub fn new(spec: FormatSpec) -> Result<Self> {
        if !spec.is_posit_family() {
            return Err(Error::UnsupportedFormat { op: "b-posit codec", spec });
        }
        Ok(Self { spec })
    }

    pub fn spec(&self) -> FormatSpec {
        self.spec
    }

    pub fn decode_reference(&self, word: u64) -> FieldSet {
        reference::decode_reference(&self.spec, word)
    }

    pub fn decode_fast(&self, word: u64) -> DecodeResult {
        fast::decode_fast(&self.spec, word)
    }

    pub fn regime_one_hot(&self, word: u64) -> OneHotRegime {
        fast::regime_one_hot(&self.spec, word)
    }

    pub fn encode_fields(&self, fields: &FieldSet) -> Result<u64> {
        encode::encode_fields(&self.spec, fields)
    }

    pub fn encode_datapath(&self, fields: &DatapathFields) -> Result<u64> {
        encode::encode_datapath(&self.spec, fields)
    }

    pub fn value(&self, word: u64) -> ExactValue {
        fields_to_value(&self.decode_reference(word), &self.spec)
    }

    pub fn round_rational(&self, x: &BigRational) -> u64 {
        round::round_rational(&self.spec, x)
    }

    pub fn round_exact(&self, x: &ExactValue) -> u64 {
        match x.to_rational() {
            None => 1 << (self.spec.n() - 1),
            Some(q) => self.round_rational(&q),
        }
    }

    /// Rounds a scalar; NaN and infinities map to NaR.
    pub fn round_scalar<S: Scalar>(&self, x: S) -> u64 {
        match x.to_rational() {
            None => 1 << (self.spec.n() - 1),
            Some(q) => self.round_rational(&q),
        }
    }

    /// Decodes into a scalar type (rounding if the scalar is narrower).
    pub fn to_scalar<S: Scalar>(&self, word: u64) -> Option<S> {
        S::from_exact(&self.value(word))
    }

    pub fn extremes(&self) -> Extremes {
        let maxpos = self.value(mask(self.spec.n() - 1));
        let minpos = self.value(1);
        let lo = minpos.floor_log2().expect("minpos is real");
        let hi_floor = maxpos.floor_log2().expect("maxpos is real");
        let hi =
            if maxpos.significand() == &num_bigint::BigUint::from(1u32) { hi_floor } else { hi_floor + 1 };
        Extremes { minpos, maxpos, dynamic_range_log2: (lo, hi) }
    }

    /// Field-annotated rendering `s|regime|exponent|fraction` showing the
    /// bits present in the word; ghost bits are omitted.
    pub fn field_string(&self, word: u64) -> String {
        let n = self.spec.n();
        let word = word & mask(n);
        let bin = format!("{word:0width$b}", width = n as usize);
        let size = match self.decode_reference(word).class {
            Class::Real => self.decode_reference(word).regime_size,
            _ => self.regime_one_hot(word).regime_size(),
        };
        let exp_end = (1 + size + self.spec.es()).min(n) as usize;
        let size = size as usize;
        format!("{}|{}|{}|{}", &bin[..1], &bin[1..1 + size], &bin[1 + size..exp_end], &bin[exp_end..])
    }
}

fn codec_for(p: &BitPattern) -> Result<BPositCodec> {
    BPositCodec::new(p.spec())
}

/// Reference decode of a posit-family pattern.
pub fn decode_reference(p: &BitPattern) -> Result<FieldSet> {
    Ok(codec_for(p)?.decode_reference(p.bits()))
}

pub fn decode_fast(p: &BitPattern) -> Result<DecodeResult> {
    Ok(codec_for(p)?.decode_fast(p.bits()))
}

pub fn regime_one_hot(p: &BitPattern) -> Result<OneHotRegime> {
    Ok(codec_for(p)?.regime_one_hot(p.bits()))
}

pub fn encode_fields(fields: &FieldSet, spec: FormatSpec) -> Result<BitPattern> {
    let bits = BPositCodec::new(spec)?.encode_fields(fields)?;
    Ok(BitPattern::wrapping(spec, bits))
}

/// Correctly rounded conversion of an exact value; NaR maps to NaR.
pub fn round_real_to_bposit(x: &ExactValue, spec: FormatSpec) -> Result<BitPattern> {
    let bits = BPositCodec::new(spec)?.round_exact(x);
    Ok(BitPattern::wrapping(spec, bits))
}

pub fn format_extremes(spec: FormatSpec) -> Result<Extremes> {
    Ok(BPositCodec::new(spec)?.extremes())
}

/// Exact value of a posit-family pattern.
pub fn pattern_value(p: &BitPattern) -> Result<ExactValue> {
    Ok(codec_for(p)?.value(p.bits()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::value::parse_decimal;

    fn codec(n: u32, rs: u32, es: u32) -> BPositCodec {
        BPositCodec::new(FormatSpec::bposit(n, rs, es).unwrap()).unwrap()
    }

    fn q(s: &str) -> BigRational {
        parse_decimal(s).unwrap()
    }

    #[test]
    fn reference_examples() {
        let c = codec(16, 6, 5);
        assert_eq!(c.decode_reference(0x8000), FieldSet::nar());
        assert_eq!(c.decode_reference(0x0000), FieldSet::zero());

        let f = c.decode_reference(0x0400);
        assert_eq!((f.regime, f.regime_size, f.exponent, f.fraction), (-4, 5, 0, 0));
        assert_eq!(c.value(0x0400), ExactValue::pow2(-128));

        let f = c.decode_reference(0x0001);
        assert_eq!((f.regime, f.regime_size, f.exponent, f.fraction, f.frac_bits), (-6, 6, 0, 1, 4));
        assert_eq!(c.value(0x0001).to_rational().unwrap(), q("17/16") * crate::value::pow2_rational(-192));
    }

    #[test]
    fn fast_examples() {
        let c = codec(16, 6, 5);
        let d = c.decode_fast(0x0001);
        assert_eq!(d.one_hot.to_string(), "000001");
        assert_eq!(d.regime, -6);
        assert_eq!(tables::regime_code(d.regime, 6), 0b1010);

        let d = c.decode_fast(0xC000);
        assert!(d.sign && d.exp_cin);
        assert_eq!(d.exponent, 0b11111);
        let dp = d.to_datapath();
        assert_eq!((dp.regime, dp.exponent), (0, 0));
        assert_eq!(c.value(0xC000), -ExactValue::one());

        assert!(c.decode_fast(0x8000).nar);
        assert!(c.decode_fast(0x0000).zero);
    }

    #[test]
    fn encode_examples() {
        let c = codec(16, 6, 5);
        let f = FieldSet {
            class: Class::Real,
            sign: false,
            regime: 3,
            regime_size: 5,
            exponent: 5,
            fraction: 16,
            frac_bits: 5,
        };
        assert_eq!(c.encode_fields(&f).unwrap(), 0x78B0);
        assert_eq!(c.encode_fields(&FieldSet::zero()).unwrap(), 0);
        assert_eq!(c.encode_fields(&FieldSet::nar()).unwrap(), 0x8000);
    }

    #[test]
    fn encode_rejects_bad_fields() {
        let c = codec(16, 6, 5);
        let base = c.decode_reference(0x78B0);
        let full_width = FieldSet { fraction: 0b11111, frac_bits: 5, ..base };
        assert!(c.encode_fields(&full_width).is_ok());
        let dropped = FieldSet { fraction: 0b111111, frac_bits: 6, ..base };
        assert!(matches!(c.encode_fields(&dropped), Err(Error::FieldOutOfRange(_))));
        let big_regime = FieldSet { regime: 6, ..base };
        assert!(c.encode_fields(&big_regime).is_err());
        let big_exp = FieldSet { exponent: 32, ..base };
        assert!(c.encode_fields(&big_exp).is_err());
    }

    #[test]
    fn extremes_32_6_5() {
        let e = codec(32, 6, 5).extremes();
        let two = crate::value::pow2_rational;
        assert_eq!(e.maxpos.to_rational().unwrap(), (q("2") - two(-20)) * two(191));
        assert_eq!(e.minpos.to_rational().unwrap(), (q("1") + two(-20)) * two(-192));
        assert_eq!(e.dynamic_range_log2, (-192, 192));
    }

    #[test]
    fn posit16_minpos() {
        let c = BPositCodec::new(FormatSpec::bposit(16, 15, 2).unwrap()).unwrap();
        assert_eq!(c.extremes().minpos, ExactValue::pow2(-56));
        assert_eq!(c.extremes().dynamic_range_log2, (-56, 56));
    }

    #[test]
    fn field_strings() {
        let c = codec(16, 6, 5);
        assert_eq!(c.field_string(0x0001), "0|000000|00000|0001");
        assert_eq!(c.field_string(0x0300), "0|000001|10000|0000");
        assert_eq!(c.field_string(0x78B0), "0|11110|00101|10000");
        let tiny = codec(8, 6, 3);
        assert_eq!(tiny.field_string(0x01), "0|000000|1|");
    }

    #[test]
    fn saturation_and_specials() {
        let c = codec(32, 6, 5);
        assert_eq!(c.round_rational(&crate::value::pow2_rational(300)), 0x7FFF_FFFF);
        assert_eq!(c.round_rational(&-crate::value::pow2_rational(300)), 0x8000_0001);
        assert_eq!(c.round_rational(&crate::value::pow2_rational(-300)), 1);
        assert_eq!(c.round_rational(&-crate::value::pow2_rational(-300)), 0xFFFF_FFFF);
        assert_eq!(c.round_rational(&q("0")), 0);
        assert_eq!(c.round_exact(&ExactValue::nar()), 0x8000_0000);
        assert_eq!(c.round_scalar(f64::NAN), 0x8000_0000);
        assert_eq!(c.round_scalar(1.0f32), 0x4000_0000);
    }

    #[test]
    fn pi_into_16_6_5() {
        let c = codec(16, 6, 5);
        let pi = q("3.14159265358979323846264338327950288");
        assert_eq!(c.value(c.round_rational(&pi)).to_rational().unwrap(), q("3.140625"));
    }

    #[test]
    fn rejects_ieee() {
        assert!(BPositCodec::new(FormatSpec::ieee(32).unwrap()).is_err());
    }
}
