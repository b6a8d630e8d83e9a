//! IEEE 754 binary16/32/64 codec with a recoded internal form.
//!
//! The recoded form carries one extra exponent bit so subnormals can be
//! normalized on decode: every finite nonzero value has a significand in
//! `[1, 2)` and an unbiased exponent held as an `(ew + 1)`-bit two's-complement
//! integer.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::format::{mask, FormatKind, FormatSpec};
use crate::pattern::BitPattern;
use crate::value::{floor_log2_rational, pow2_rational, round_half_even, ExactValue};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FloatClass {
    Zero,
    Subnormal,
    Normal,
    Inf,
    NaN,
}

/// Decoded float. For finite nonzero values the magnitude is
/// `(1 + fraction/2^frac_bits) · 2^exponent`; `class` records whether the
/// source word was subnormal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RecodedFloat {
    pub class: FloatClass,
    pub sign: bool,
    pub exponent: i32,
    pub fraction: u64,
    pub frac_bits: u32,
}

impl RecodedFloat {
    pub fn zero(sign: bool) -> Self {
        Self { class: FloatClass::Zero, sign, exponent: 0, fraction: 0, frac_bits: 0 }
    }

    pub fn inf(sign: bool) -> Self {
        Self { class: FloatClass::Inf, ..Self::zero(sign) }
    }

    pub fn nan() -> Self {
        Self { class: FloatClass::NaN, ..Self::zero(false) }
    }

    pub fn is_finite_nonzero(&self) -> bool {
        matches!(self.class, FloatClass::Normal | FloatClass::Subnormal)
    }

    /// Significand in `[1, 2)` for finite nonzero values.
    pub fn significand(&self) -> Option<BigRational> {
        self.is_finite_nonzero().then(|| {
            let one = BigInt::one() << self.frac_bits as usize;
            BigRational::new(one.clone() + BigInt::from(self.fraction), one)
        })
    }

    /// Exact value; NaN and infinities have none.
    pub fn value(&self) -> Option<ExactValue> {
        match self.class {
            FloatClass::Zero => Some(ExactValue::zero()),
            FloatClass::Inf | FloatClass::NaN => None,
            _ => {
                let m = (BigUint::one() << self.frac_bits as usize) + BigUint::from(self.fraction);
                Some(ExactValue::from_parts(self.sign, m, self.exponent as i64 - self.frac_bits as i64))
            }
        }
    }
}

impl fmt::Display for RecodedFloat {
    /// `class|signedExp|significand`, the significand as an exact decimal.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = match self.significand() {
            Some(s) => dyadic_decimal(&s),
            None => "-".to_string(),
        };
        let sign = if self.sign { "-" } else { "+" };
        write!(f, "{sign}{:?}|{}|{sig}", self.class, self.exponent)
    }
}

/// Exact decimal expansion of a dyadic rational in `[1, 2)`.
fn dyadic_decimal(x: &BigRational) -> String {
    let k = x.denom().bits() - 1;
    let int = x.to_integer();
    let frac = x.numer() - &int * x.denom();
    if frac.is_zero() {
        return format!("{int}.0");
    }
    // frac / 2^k = frac·5^k / 10^k.
    let digits = (frac * BigInt::from(5u32).pow(k as u32)).to_string();
    let padded = format!("{digits:0>width$}", width = k as usize);
    format!("{int}.{}", padded.trim_end_matches('0'))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FloatCodec {
    spec: FormatSpec,
    ew: u32,
    fw: u32,
}

impl FloatCodec {
    pub fn new(spec: FormatSpec) -> Result<Self> {
        if spec.kind() != FormatKind::IeeeBinary {
            return Err(Error::UnsupportedFormat { op: "float codec", spec });
        }
        let ew = spec.exp_width().expect("ieee");
        let fw = spec.frac_width().expect("ieee");
        Ok(Self { spec, ew, fw })
    }

    pub fn spec(&self) -> FormatSpec {
        self.spec
    }

    pub fn bias(&self) -> i32 {
        (1 << (self.ew - 1)) - 1
    }

    pub fn emin(&self) -> i32 {
        1 - self.bias()
    }

    pub fn emax(&self) -> i32 {
        self.bias()
    }

    /// Canonical quiet NaN, positive.
    pub fn canonical_nan(&self) -> u64 {
        mask(self.ew) << self.fw | 1 << (self.fw - 1)
    }

    pub fn decode(&self, word: u64) -> RecodedFloat {
        let word = word & self.spec.word_mask();
        let sign = (word >> (self.spec.n() - 1)) & 1 == 1;
        let exp = (word >> self.fw) & mask(self.ew);
        let frac = word & mask(self.fw);
        let fw = self.fw;
        if exp == mask(self.ew) {
            return if frac == 0 { RecodedFloat::inf(sign) } else { RecodedFloat::nan() };
        }
        if exp == 0 {
            if frac == 0 {
                return RecodedFloat::zero(sign);
            }
            // Normalize: shift the leading one into the hidden position.
            let shift = frac.leading_zeros() - (64 - fw) + 1;
            return RecodedFloat {
                class: FloatClass::Subnormal,
                sign,
                exponent: self.emin() - shift as i32,
                fraction: (frac << shift) & mask(fw),
                frac_bits: fw,
            };
        }
        RecodedFloat {
            class: FloatClass::Normal,
            sign,
            exponent: exp as i32 - self.bias(),
            fraction: frac,
            frac_bits: fw,
        }
    }

    /// Packs a recoded float, rounding to nearest-even when it carries more
    /// fraction bits or a smaller exponent than the format holds. NaN
    /// payloads are not preserved.
    pub fn encode(&self, r: &RecodedFloat) -> u64 {
        let sign_word = (r.sign as u64) << (self.spec.n() - 1);
        match r.class {
            FloatClass::Zero => sign_word,
            FloatClass::Inf => sign_word | mask(self.ew) << self.fw,
            FloatClass::NaN => self.canonical_nan(),
            FloatClass::Normal | FloatClass::Subnormal => {
                let m = (BigUint::one() << r.frac_bits as usize) + BigUint::from(r.fraction);
                let q = BigRational::from_integer(m.into())
                    * pow2_rational(r.exponent as i64 - r.frac_bits as i64);
                self.round_magnitude(r.sign, &q)
            }
        }
    }

    /// Nearest-even rounding of an exact rational; overflow gives ±∞.
    /// A zero input encodes as +0.
    pub fn round_rational(&self, x: &BigRational) -> u64 {
        if x.is_zero() {
            return 0;
        }
        self.round_magnitude(x.is_negative(), &x.abs())
    }

    fn round_magnitude(&self, sign: bool, ax: &BigRational) -> u64 {
        let sign_word = (sign as u64) << (self.spec.n() - 1);
        let fw = self.fw as i64;
        let mut e = floor_log2_rational(ax).max(self.emin() as i64);
        // Below emin the quantum stays 2^(emin − fw): the subnormal shift.
        let q = round_half_even(&(ax * pow2_rational(fw - e)));
        let mut q = q.to_u64().expect("significand fits");
        if q >> (fw + 1) != 0 {
            q >>= 1;
            e += 1;
        }
        if e > self.emax() as i64 {
            return sign_word | mask(self.ew) << self.fw;
        }
        if q >> fw == 0 {
            // Subnormal (or zero after underflow): biased exponent 0.
            return sign_word | q;
        }
        let biased = (e + self.bias() as i64) as u64;
        sign_word | biased << self.fw | (q & mask(self.fw))
    }

    /// `N + 1`-bit recoded word: sign, `(ew + 1)`-bit two's-complement
    /// exponent, fraction. The class travels separately in
    /// [`RecodedFloat::class`].
    pub fn recoded_bits(&self, r: &RecodedFloat) -> u128 {
        let e = (r.exponent as i64 as u64) & mask(self.ew + 1);
        let frac = if r.frac_bits >= self.fw {
            r.fraction >> (r.frac_bits - self.fw)
        } else {
            r.fraction << (self.fw - r.frac_bits)
        };
        ((r.sign as u128) << (self.ew + 1 + self.fw)) | (e as u128) << self.fw | frac as u128
    }
}

pub fn decode_float(p: &BitPattern) -> Result<RecodedFloat> {
    Ok(FloatCodec::new(p.spec())?.decode(p.bits()))
}

pub fn encode_float(r: &RecodedFloat, spec: FormatSpec) -> Result<BitPattern> {
    Ok(BitPattern::wrapping(spec, FloatCodec::new(spec)?.encode(r)))
}
