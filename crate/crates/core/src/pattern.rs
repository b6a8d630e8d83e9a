//! Format-tagged bit patterns.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::format::FormatSpec;

/// An `N`-bit word tagged with its format. Bits above `N` are always clear.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BitPattern {
    bits: u64,
    spec: FormatSpec,
}

impl BitPattern {
    pub fn new(spec: FormatSpec, bits: u64) -> Result<Self> {
        if bits & !spec.word_mask() != 0 {
            return Err(Error::FieldOutOfRange(format!("{bits:#x} does not fit in {} bits", spec.n())));
        }
        Ok(Self { bits, spec })
    }

    /// Keeps the low `N` bits of `bits`.
    pub fn wrapping(spec: FormatSpec, bits: u64) -> Self {
        Self { bits: bits & spec.word_mask(), spec }
    }

    /// The pattern whose two's-complement reading is `value` (wrapped to `N` bits).
    pub fn from_signed(spec: FormatSpec, value: i64) -> Self {
        Self::wrapping(spec, value as u64)
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn spec(&self) -> FormatSpec {
        self.spec
    }

    /// The word read as an `N`-bit two's-complement integer.
    pub fn as_signed(&self) -> i64 {
        let shift = 64 - self.spec.n();
        ((self.bits << shift) as i64) >> shift
    }

    pub fn sign_bit(&self) -> bool {
        self.bit(self.spec.n() - 1)
    }

    pub fn bit(&self, i: u32) -> bool {
        (self.bits >> i) & 1 == 1
    }

    /// Two's complement negation within `N` bits. Posit negation.
    pub fn negate(&self) -> Self {
        Self::wrapping(self.spec, self.bits.wrapping_neg())
    }

    /// Next pattern in posit order, wrapping from maxpos to NaR.
    pub fn next_up(&self) -> Self {
        Self::wrapping(self.spec, self.bits.wrapping_add(1))
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    /// The single exception pattern `10…0` of posit-family formats.
    pub fn is_nar(&self) -> bool {
        self.spec.is_posit_family() && self.bits == 1u64 << (self.spec.n() - 1)
    }

    pub fn nar(spec: FormatSpec) -> Self {
        Self::wrapping(spec, 1u64 << (spec.n() - 1))
    }

    pub fn zero(spec: FormatSpec) -> Self {
        Self { bits: 0, spec }
    }

    /// Largest positive posit, `01…1`.
    pub fn maxpos(spec: FormatSpec) -> Self {
        Self::wrapping(spec, spec.word_mask() >> 1)
    }

    /// Smallest positive posit, `0…01`.
    pub fn minpos(spec: FormatSpec) -> Self {
        Self::wrapping(spec, 1)
    }

    /// Zero-padded hexadecimal, e.g. `0x0400` for a 16-bit word.
    pub fn to_hex(&self) -> String {
        let width = self.spec.n().div_ceil(4) as usize;
        format!("0x{:0width$X}", self.bits)
    }

    /// The word as a string of `N` binary digits, MSB first.
    pub fn to_binary(&self) -> String {
        format!("{:0width$b}", self.bits, width = self.spec.n() as usize)
    }

    /// Parses `0x…` hexadecimal, `0b…` binary, or a string of binary digits
    /// optionally split by spaces or `|` (the field-annotated form).
    pub fn parse(spec: FormatSpec, text: &str) -> Result<Self> {
        let t = text.trim();
        let bits = if let Some(hex) = t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
            u64::from_str_radix(&hex.replace('_', ""), 16)
                .map_err(|e| Error::Parse(format!("bad hex pattern {t:?}: {e}")))?
        } else {
            let body = t.strip_prefix("0b").unwrap_or(t);
            let digits: String = body.chars().filter(|c| !matches!(c, ' ' | '|' | '_')).collect();
            if digits.len() != spec.n() as usize || !digits.chars().all(|c| c == '0' || c == '1') {
                return Err(Error::Parse(format!(
                    "expected {} binary digits or a 0x-prefixed word, got {t:?}",
                    spec.n()
                )));
            }
            u64::from_str_radix(&digits, 2).map_err(|e| Error::Parse(e.to_string()))?
        };
        Self::new(spec, bits)
    }
}

/// Posit order: signed comparison of the raw words, so NaR sorts first.
pub fn compare_as_posit(a: &BitPattern, b: &BitPattern) -> Result<Ordering> {
    if a.spec != b.spec {
        return Err(Error::FormatMismatch { left: a.spec, right: b.spec });
    }
    if !a.spec.is_posit_family() {
        return Err(Error::UnsupportedFormat { op: "posit comparison", spec: a.spec });
    }
    Ok(a.as_signed().cmp(&b.as_signed()))
}

impl fmt::Display for BitPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b16() -> FormatSpec {
        FormatSpec::bposit(16, 6, 5).unwrap()
    }

    #[test]
    fn nar_sorts_first() {
        let nar = BitPattern::nar(b16());
        for bits in [0u64, 1, 0x7FFF, 0x8001, 0xFFFF] {
            let p = BitPattern::new(b16(), bits).unwrap();
            assert_eq!(compare_as_posit(&nar, &p).unwrap(), Ordering::Less);
        }
        assert_eq!(compare_as_posit(&nar, &nar).unwrap(), Ordering::Equal);
    }

    #[test]
    fn format_mismatch() {
        let a = BitPattern::zero(b16());
        let b = BitPattern::zero(FormatSpec::posit(16, 2).unwrap());
        assert!(matches!(compare_as_posit(&a, &b), Err(Error::FormatMismatch { .. })));
    }

    #[test]
    fn parse_and_print() {
        let p = BitPattern::parse(b16(), "0 000001 10000 0000").unwrap();
        assert_eq!(p.bits(), 0b0000_0011_0000_0000);
        assert_eq!(p.to_hex(), "0x0300");
        assert_eq!(BitPattern::parse(b16(), "0x0300").unwrap(), p);
        assert_eq!(BitPattern::parse(b16(), "0|000001|10000|0000").unwrap(), p);
        assert!(BitPattern::parse(b16(), "0x10000").is_err());
        assert!(BitPattern::parse(b16(), "0101").is_err());
    }

    #[test]
    fn signed_view_and_negation() {
        let p = BitPattern::new(b16(), 0xFFFF).unwrap();
        assert_eq!(p.as_signed(), -1);
        assert_eq!(p.negate().bits(), 1);
        assert_eq!(BitPattern::nar(b16()).negate(), BitPattern::nar(b16()));
        assert_eq!(BitPattern::from_signed(b16(), -2).bits(), 0xFFFE);
    }
}
