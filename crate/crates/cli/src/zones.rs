//! Golden zone and fovea of a posit-family format against an IEEE baseline.

use bposit::{BPositCodec, FormatSpec, Rational};
use num_bigint::BigInt;

use crate::error::{AnalysisError, Result};
use crate::sweep::{format_curve, BinadeStats, SweepConfig};

/// Curves are compared with this slack so that equal-precision binades
/// count as ties.
const TIE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct ZoneReport {
    pub format: FormatSpec,
    pub baseline: FormatSpec,
    /// Binade edges `[lo, hi)` in log2 of the magnitude.
    pub golden_zone_log2: (i64, i64),
    /// Share of the `2^(N−1)` non-negative patterns whose value lies in the
    /// golden zone.
    pub golden_zone_pattern_fraction: Rational,
    pub fovea_log2: (i64, i64),
    pub peak_decimals: f64,
}

impl ZoneReport {
    pub fn pattern_fraction_f64(&self) -> f64 {
        bposit::value::rational_to_f64(&self.golden_zone_pattern_fraction)
    }
}

/// The run of binades around `2^0` on which `keep` holds, as `[lo, hi)`.
fn run_around_one(curve: &[BinadeStats], keep: impl Fn(&BinadeStats) -> bool) -> (i64, i64) {
    let at = |k: i64| curve.iter().find(|b| b.k == k);
    if !at(0).is_some_and(&keep) {
        return (0, 0);
    }
    let mut hi = 0;
    while at(hi + 1).is_some_and(&keep) {
        hi += 1;
    }
    let mut lo = 0;
    while at(lo - 1).is_some_and(&keep) {
        lo -= 1;
    }
    (lo, hi + 1)
}

fn worst_curve(spec: FormatSpec) -> Result<Vec<BinadeStats>> {
    let config = SweepConfig { samples_per_binade: 1, ..SweepConfig::default() };
    format_curve(spec, 0, &config)
}

/// Number of positive real patterns whose scale lies in `[lo, hi)`,
/// counted per (regime, exponent) class without visiting patterns.
pub fn count_patterns_enumerated(spec: &FormatSpec, lo: i64, hi: i64) -> BigInt {
    let n = spec.n() as i64;
    let (rs, es) = (spec.rs() as i64, spec.es() as i64);
    let mut total = BigInt::from(0);
    for r in -rs..rs {
        let run = if r >= 0 { r + 1 } else { -r };
        let size = (run + 1).min(rs);
        let rest = n - 1 - size;
        if rest < 0 {
            continue;
        }
        let visible = es.min(rest);
        for ev in 0..1i64 << visible {
            let e = ev << (es - visible);
            let scale = r * (1 << es) + e;
            if scale < lo || scale >= hi {
                continue;
            }
            let mut count = BigInt::from(1) << (rest - visible) as usize;
            if r == -rs && ev == 0 {
                // The all-zero body is the zero pattern.
                count -= 1;
            }
            total += count;
        }
    }
    total
}

/// The same count by decoding every positive pattern; `N <= 24`.
pub fn count_patterns_exhaustive(spec: &FormatSpec, lo: i64, hi: i64) -> Result<u64> {
    if spec.n() > 24 {
        return Err(AnalysisError::InvalidArgument(format!("exhaustive count needs N <= 24, got {spec}")));
    }
    let codec = BPositCodec::new(*spec)?;
    Ok((1..1u64 << (spec.n() - 1))
        .filter(|&w| {
            let t = codec.value(w).floor_log2().expect("positive pattern");
            (lo..hi).contains(&t)
        })
        .count() as u64)
}

pub fn pattern_fraction(spec: &FormatSpec, lo: i64, hi: i64) -> Rational {
    Rational::new(count_patterns_enumerated(spec, lo, hi), BigInt::from(1) << (spec.n() - 1) as usize)
}

pub fn golden_zone_stats(spec: FormatSpec, baseline: FormatSpec) -> Result<ZoneReport> {
    if !spec.is_posit_family() {
        return Err(AnalysisError::InvalidArgument(format!("{spec} is not a posit-family format")));
    }
    if spec.is_posit_family() == baseline.is_posit_family() || spec.n() != baseline.n() {
        return Err(AnalysisError::InvalidArgument(format!(
            "baseline must be the IEEE format of the same width, got {baseline}"
        )));
    }
    let curve = worst_curve(spec)?;
    let base = worst_curve(baseline)?;
    let golden = run_around_one(&curve, |b| {
        base.iter().find(|c| c.k == b.k).is_some_and(|c| b.worst + TIE >= c.worst)
    });
    let peak = curve.iter().map(|b| b.worst).fold(f64::NEG_INFINITY, f64::max);
    let fovea = run_around_one(&curve, |b| b.worst + TIE >= peak);
    Ok(ZoneReport {
        format: spec,
        baseline,
        golden_zone_log2: golden,
        golden_zone_pattern_fraction: pattern_fraction(&spec, golden.0, golden.1),
        fovea_log2: fovea,
        peak_decimals: peak,
    })
}
