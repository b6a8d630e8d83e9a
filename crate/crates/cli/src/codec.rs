//! A single view over posit-family and IEEE codecs, restricted to what the
//! analyses need: rounding, exact values and the positive word range.

use bposit::value::{floor_log2_rational, pow2_rational};
use bposit::{BPositCodec, ExactValue, FloatCodec, FormatSpec, Rational};

use crate::error::Result;

#[derive(Clone, Copy, Debug)]
pub enum AnyCodec {
    Posit(BPositCodec),
    Float(FloatCodec),
}

fn mask(bits: u32) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

impl AnyCodec {
    pub fn new(spec: FormatSpec) -> Result<Self> {
        Ok(if spec.is_posit_family() {
            AnyCodec::Posit(BPositCodec::new(spec)?)
        } else {
            AnyCodec::Float(FloatCodec::new(spec)?)
        })
    }

    pub fn spec(&self) -> FormatSpec {
        match self {
            AnyCodec::Posit(c) => c.spec(),
            AnyCodec::Float(c) => c.spec(),
        }
    }

    /// Nearest representable word.
    pub fn round(&self, x: &Rational) -> u64 {
        match self {
            AnyCodec::Posit(c) => c.round_rational(x),
            AnyCodec::Float(c) => c.round_rational(x),
        }
    }

    pub fn exact(&self, word: u64) -> Option<ExactValue> {
        match self {
            AnyCodec::Posit(c) => Some(c.value(word)).filter(|v| !v.is_nar()),
            AnyCodec::Float(c) => c.decode(word).value(),
        }
    }

    pub fn value(&self, word: u64) -> Option<Rational> {
        self.exact(word)?.to_rational()
    }

    /// Largest finite positive word. Positive words are ordered by value
    /// in both families.
    pub fn max_word(&self) -> u64 {
        match self {
            AnyCodec::Posit(c) => mask(c.spec().n() - 1),
            AnyCodec::Float(c) => {
                let spec = c.spec();
                let fw = spec.frac_width().expect("ieee");
                let ew = spec.exp_width().expect("ieee");
                (mask(ew) - 1) << fw | mask(fw)
            }
        }
    }

    pub fn min_positive(&self) -> Rational {
        self.value(1).expect("word 1 is finite")
    }

    pub fn max_positive(&self) -> Rational {
        self.value(self.max_word()).expect("largest finite word")
    }

    pub fn in_range(&self, magnitude: &Rational) -> bool {
        *magnitude >= self.min_positive() && *magnitude <= self.max_positive()
    }

    /// Largest positive word whose value does not exceed `x`, for `x` in
    /// `[minpos, maxpos]`.
    pub fn floor_word(&self, x: &Rational) -> u64 {
        let w = self.round(x);
        match self.value(w) {
            Some(v) if v > *x => w - 1,
            _ => w,
        }
    }

    /// First and last binade `k` whose interval `[2^k, 2^(k+1)]` overlaps
    /// `[minpos, maxpos]` in more than a point.
    pub fn binades(&self) -> (i64, i64) {
        let maxpos = self.max_positive();
        let lo = floor_log2_rational(&self.min_positive());
        let hi = floor_log2_rational(&maxpos);
        if pow2_rational(hi) == maxpos {
            (lo, hi - 1)
        } else {
            (lo, hi)
        }
    }

    pub fn binade_bounds(&self, k: i64) -> (Rational, Rational) {
        let lo = pow2_rational(k).max(self.min_positive());
        let hi = pow2_rational(k + 1).min(self.max_positive());
        (lo, hi)
    }
}
