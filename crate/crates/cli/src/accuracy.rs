//! Decimals of accuracy, `−log10 |log10(x̂/x)|`.

use std::f64::consts::{LN_10, LOG10_2};

use bposit::value::rational_to_f64;
use bposit::{ExactValue, FormatSpec, Rational};
use num_traits::{Signed, Zero};

use crate::codec::AnyCodec;
use crate::error::{AnalysisError, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AccuracySample {
    pub format: FormatSpec,
    pub log2_magnitude: f64,
    pub decimals: f64,
}

/// Value reported for exactly representable inputs: the information
/// content of an `N`-bit word, `N·log10 2`.
pub fn ceiling(spec: &FormatSpec) -> f64 {
    spec.n() as f64 * LOG10_2
}

/// Decimals of accuracy of `approx` against a nonzero `x`, clamped to
/// `[0, ceiling]`.
pub fn decimals_between(approx: &Rational, x: &Rational, ceiling: f64) -> f64 {
    if approx == x {
        return ceiling;
    }
    let rel = rational_to_f64(&((approx - x) / x));
    let err = (rel.ln_1p() / LN_10).abs();
    let d = -err.log10();
    if d.is_nan() {
        0.0
    } else {
        d.clamp(0.0, ceiling)
    }
}

/// Rounds `x` with `codec` and measures the result.
pub fn decimal_accuracy_with(codec: &AnyCodec, x: &Rational) -> Result<f64> {
    let spec = codec.spec();
    if !codec.in_range(&x.abs()) {
        return Err(AnalysisError::OutOfRange { value: bposit::value::rational_to_sci(x, 8), spec });
    }
    let approx = codec.value(codec.round(x)).expect("in-range values round to reals");
    Ok(decimals_between(&approx, x, ceiling(&spec)))
}

pub fn decimal_accuracy(x: &ExactValue, spec: FormatSpec) -> Result<f64> {
    let codec = AnyCodec::new(spec)?;
    let q = x
        .to_rational()
        .filter(|q| !q.is_zero())
        .ok_or_else(|| AnalysisError::OutOfRange { value: x.to_exact_string(), spec })?;
    decimal_accuracy_with(&codec, &q)
}
