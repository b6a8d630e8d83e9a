//! Exact arithmetic on decoded operands and the quire accumulator.

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::bposit::BPositCodec;
use crate::error::{Error, Result};
use crate::format::FormatSpec;
use crate::pattern::BitPattern;
use crate::value::{pow2_rational, Class, ExactValue};

/// A decoded operand or an exact intermediate result.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unpacked {
    value: ExactValue,
}

impl Unpacked {
    pub fn from_value(value: ExactValue) -> Self {
        Self { value }
    }

    pub fn decode(p: &BitPattern) -> Result<Self> {
        Ok(Self { value: crate::bposit::pattern_value(p)? })
    }

    pub fn value(&self) -> &ExactValue {
        &self.value
    }

    pub fn class(&self) -> Class {
        self.value.class()
    }

    pub fn is_negative(&self) -> bool {
        self.value.is_negative()
    }

    /// Effective exponent `T` with `|x| = significand · 2^T`.
    pub fn exponent(&self) -> Option<i64> {
        self.value.floor_log2()
    }

    /// Significand in `[1, 2)`.
    pub fn significand(&self) -> Option<BigRational> {
        let t = self.exponent()?;
        let m = BigRational::from_integer(BigInt::from(self.value.significand().clone()));
        Some(m * pow2_rational(self.value.scale() - t))
    }

    /// Rounds once into `spec`.
    pub fn round(&self, spec: FormatSpec) -> Result<BitPattern> {
        crate::bposit::round_real_to_bposit(&self.value, spec)
    }
}

pub fn add_exact(a: &Unpacked, b: &Unpacked) -> Unpacked {
    Unpacked { value: &a.value + &b.value }
}

pub fn mul_exact(a: &Unpacked, b: &Unpacked) -> Unpacked {
    Unpacked { value: &a.value * &b.value }
}

/// Rounded sum of two patterns of the same format.
pub fn add(a: &BitPattern, b: &BitPattern) -> Result<BitPattern> {
    same_spec(a, b)?;
    add_exact(&Unpacked::decode(a)?, &Unpacked::decode(b)?).round(a.spec())
}

/// Rounded product of two patterns of the same format.
pub fn mul(a: &BitPattern, b: &BitPattern) -> Result<BitPattern> {
    same_spec(a, b)?;
    mul_exact(&Unpacked::decode(a)?, &Unpacked::decode(b)?).round(a.spec())
}

fn same_spec(a: &BitPattern, b: &BitPattern) -> Result<()> {
    if a.spec() != b.spec() {
        return Err(Error::FormatMismatch { left: a.spec(), right: b.spec() });
    }
    Ok(())
}

/// Nominal quire width `32 + 4·rS·2^eS`: a sign bit, 31 carry bits and
/// twice the dynamic range on each side of the binary point.
pub fn quire_size_of(spec: FormatSpec) -> Result<u32> {
    if !spec.is_posit_family() {
        return Err(Error::InvalidFormat(format!("{spec} has no quire")));
    }
    Ok(32 + 4 * range_bits(spec))
}

fn range_bits(spec: FormatSpec) -> u32 {
    spec.rs() << spec.es()
}

/// Extra fraction bits below the nominal layout, needed because the
/// smallest b-posit values carry fraction bits below `2^−rS·2^eS`.
pub fn quire_guard_bits(spec: FormatSpec) -> u32 {
    2 * spec.min_frac_bits()
}

/// Exact fixed-point accumulator of products.
///
/// Holds a two's-complement integer scaled by `2^(2·I + guard)` with
/// `I = rS·2^eS`. Overflowing the width, or accumulating a NaR, sets a
/// sticky NaR state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quire {
    spec: FormatSpec,
    acc: BigInt,
    nar: bool,
}

impl Quire {
    pub fn new(spec: FormatSpec) -> Result<Self> {
        quire_size_of(spec)?;
        Ok(Self { spec, acc: BigInt::zero(), nar: false })
    }

    pub fn spec(&self) -> FormatSpec {
        self.spec
    }

    pub fn nominal_bits(&self) -> u32 {
        32 + 4 * range_bits(self.spec)
    }

    pub fn guard_bits(&self) -> u32 {
        quire_guard_bits(self.spec)
    }

    /// Total accumulator width, nominal plus guard bits.
    pub fn width(&self) -> u32 {
        self.nominal_bits() + self.guard_bits()
    }

    fn frac_bits(&self) -> u32 {
        2 * range_bits(self.spec) + self.guard_bits()
    }

    pub fn is_nar(&self) -> bool {
        self.nar
    }

    /// The accumulated value, exactly.
    pub fn value(&self) -> ExactValue {
        if self.nar {
            return ExactValue::nar();
        }
        ExactValue::from_bigint(&self.acc, -(self.frac_bits() as i64))
    }

    /// `q + a·b` without rounding.
    pub fn accumulate(&self, a: &BitPattern, b: &BitPattern) -> Result<Self> {
        self.accumulate_repeated(a, b, 1)
    }

    /// `q + count·a·b`, as if the product were accumulated `count` times.
    pub fn accumulate_repeated(&self, a: &BitPattern, b: &BitPattern, count: u64) -> Result<Self> {
        for p in [a, b] {
            if p.spec() != self.spec {
                return Err(Error::FormatMismatch { left: self.spec, right: p.spec() });
            }
        }
        if self.nar {
            return Ok(self.clone());
        }
        let product = mul_exact(&Unpacked::decode(a)?, &Unpacked::decode(b)?);
        Ok(self.add_value(product.value(), count))
    }

    fn add_value(&self, v: &ExactValue, count: u64) -> Self {
        let term = match v.class() {
            Class::NaR => return Self { nar: true, acc: BigInt::zero(), ..self.clone() },
            Class::Zero => return self.clone(),
            Class::Real => {
                let shift = v.scale() + self.frac_bits() as i64;
                assert!(shift >= 0, "product below the quire LSB");
                let m = BigInt::from_biguint(
                    if v.is_negative() { Sign::Minus } else { Sign::Plus },
                    v.significand().clone(),
                );
                (m << shift as usize) * BigInt::from(count)
            }
        };
        let acc = &self.acc + term;
        let limit = BigInt::one() << (self.width() - 1) as usize;
        if acc >= limit || acc < -limit {
            return Self { nar: true, acc: BigInt::zero(), ..self.clone() };
        }
        Self { acc, ..self.clone() }
    }

    /// Rounds the accumulated sum once into the format.
    pub fn read(&self) -> BitPattern {
        let codec = BPositCodec::new(self.spec).expect("posit family");
        BitPattern::wrapping(self.spec, codec.round_exact(&self.value()))
    }

    /// Two's-complement image of the accumulator, `width` bits in hex.
    pub fn to_hex(&self) -> String {
        let width = self.width() as usize;
        let modulus = BigInt::one() << width;
        let image: BigUint = if self.nar {
            // NaR is the most negative accumulator value, as in the posit quire.
            BigUint::one() << (width - 1)
        } else if self.acc.is_negative() {
            (&modulus + &self.acc).magnitude().clone()
        } else {
            self.acc.magnitude().clone()
        };
        format!("{:0digits$x}", image, digits = width.div_ceil(4))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: u32, rs: u32, es: u32) -> FormatSpec {
        FormatSpec::bposit(n, rs, es).unwrap()
    }

    #[test]
    fn quire_sizes() {
        for n in [13, 16, 32, 64] {
            assert_eq!(quire_size_of(b(n, 6, 5)).unwrap(), 800);
        }
        assert_eq!(quire_size_of(b(16, 6, 3)).unwrap(), 224);
        assert!(quire_size_of(FormatSpec::ieee(32).unwrap()).is_err());
    }

    #[test]
    fn unpacked_parts() {
        let spec = b(16, 6, 5);
        let u = Unpacked::decode(&BitPattern::new(spec, 0x78B0).unwrap()).unwrap();
        assert_eq!(u.exponent(), Some(3 * 32 + 5));
        assert_eq!(u.significand().unwrap(), BigRational::new(3.into(), 2.into()));
    }

    #[test]
    fn exact_ops() {
        let spec = b(16, 6, 5);
        let p = |bits| Unpacked::decode(&BitPattern::new(spec, bits).unwrap()).unwrap();
        assert!(add_exact(&p(0x4000), &p(0xC000)).value().is_zero());
        assert_eq!(mul_exact(&p(0x0400), &p(0x0400)).value(), &ExactValue::pow2(-256));
        assert_eq!(
            mul(&BitPattern::new(spec, 0x0400).unwrap(), &BitPattern::new(spec, 0x0400).unwrap())
                .unwrap()
                .bits(),
            1
        );
        assert!(add_exact(&p(0x8000), &p(0x4000)).value().is_nar());
    }

    #[test]
    fn empty_quire_reads_zero() {
        let q = Quire::new(b(16, 6, 5)).unwrap();
        assert!(q.read().is_zero());
        assert_eq!(q.to_hex(), "0".repeat((800 + 8) / 4));
        assert_eq!(q.width(), 808);
    }

    #[test]
    fn nar_is_sticky() {
        let spec = b(16, 6, 5);
        let one = BitPattern::new(spec, 0x4000).unwrap();
        let q = Quire::new(spec)
            .unwrap()
            .accumulate(&BitPattern::nar(spec), &one)
            .unwrap()
            .accumulate(&one, &one)
            .unwrap();
        assert!(q.is_nar());
        assert!(q.read().is_nar());
    }
}
