//! Per-binade accuracy curves.
//!
//! Each binade `[2^k, 2^(k+1))` is probed at the midpoints of the first two
//! gaps between representable values that reach into it (the geometric
//! midpoint and a point just below the arithmetic midpoint) and at seeded
//! random points.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use bposit::{FormatSpec, Rational};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::accuracy::{ceiling, decimal_accuracy_with, AccuracySample};
use crate::codec::AnyCodec;
use crate::error::{AnalysisError, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Stat {
    #[default]
    Worst,
    Mean,
}

impl Stat {
    pub fn name(self) -> &'static str {
        match self {
            Stat::Worst => "worst",
            Stat::Mean => "mean",
        }
    }
}

impl fmt::Display for Stat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Stat {
    type Err = AnalysisError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "worst" => Ok(Stat::Worst),
            "mean" => Ok(Stat::Mean),
            _ => Err(AnalysisError::InvalidArgument(format!(
                "unknown statistic {s:?}; expected worst or mean"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    pub samples_per_binade: usize,
    pub seed: u64,
    pub stat: Stat,
    /// Restricts the sweep to binades `lo <= k < hi`.
    pub range: Option<(i64, i64)>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self { samples_per_binade: 16, seed: 0, stat: Stat::Worst, range: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BinadeStats {
    pub k: i64,
    pub worst: f64,
    pub mean: f64,
}

impl BinadeStats {
    pub fn center(&self) -> f64 {
        self.k as f64 + 0.5
    }

    pub fn get(&self, stat: Stat) -> f64 {
        match stat {
            Stat::Worst => self.worst,
            Stat::Mean => self.mean,
        }
    }
}

fn geometric_mean(a: &Rational, b: &Rational) -> Rational {
    // sqrt(p/q) = sqrt(p·q)/q, with 96 extra bits below the point.
    let p = a * b;
    let (num, den) = (p.numer(), p.denom());
    let scaled: BigInt = (num * den) << 192u32;
    Rational::new(scaled.sqrt(), den << 96u32)
}

fn below_midpoint(a: &Rational, b: &Rational) -> Rational {
    let gap = b - a;
    let mid = (a + b) / Rational::from_integer(2.into());
    mid - gap / Rational::from_integer(BigInt::from(1) << 80u32)
}

fn clamp(x: Rational, lo: &Rational, hi: &Rational) -> Rational {
    if x < *lo {
        lo.clone()
    } else if x > *hi {
        hi.clone()
    } else {
        x
    }
}

fn random_point(lo: &Rational, hi: &Rational, rng: &mut ChaCha8Rng) -> Rational {
    let u = Rational::new(BigInt::from(rng.gen::<u64>()), BigInt::from(1) << 64u32);
    lo + (hi - lo) * u
}

/// Stream id that makes every binade's random points independent of the
/// evaluation order.
fn stream(format_index: usize, k: i64) -> u64 {
    (format_index as u64) << 32 | (k as u32 as u64)
}

/// Evaluates binade `k` of `codec`. Returns `None` when the binade holds no
/// positive value of the format.
pub fn binade_stats(codec: &AnyCodec, k: i64, samples: usize, rng: &mut ChaCha8Rng) -> Option<BinadeStats> {
    let (bl, bh) = codec.binades();
    if k < bl || k > bh {
        return None;
    }
    let (lo, hi) = codec.binade_bounds(k);
    let top = ceiling(&codec.spec());
    let measure = |x: &Rational| decimal_accuracy_with(codec, x).unwrap_or(0.0);

    let mut worst = top;
    for a in (codec.floor_word(&lo)..).take(2) {
        if a >= codec.max_word() {
            break;
        }
        let va = codec.value(a).expect("finite");
        let vb = codec.value(a + 1).expect("finite");
        if va >= hi && lo != hi {
            break;
        }
        for m in [below_midpoint(&va, &vb), geometric_mean(&va, &vb)] {
            worst = worst.min(measure(&clamp(m, &lo, &hi)));
        }
    }

    let mut sum = 0.0;
    for _ in 0..samples {
        let d = measure(&random_point(&lo, &hi, rng));
        worst = worst.min(d);
        sum += d;
    }
    let mean = if samples == 0 { worst } else { sum / samples as f64 };
    Some(BinadeStats { k, worst, mean })
}

/// The full curve of one format, binades in increasing order.
pub fn format_curve(spec: FormatSpec, format_index: usize, config: &SweepConfig) -> Result<Vec<BinadeStats>> {
    let codec = AnyCodec::new(spec)?;
    let (mut lo, mut hi) = codec.binades();
    if let Some((rlo, rhi)) = config.range {
        lo = lo.max(rlo);
        hi = hi.min(rhi - 1);
    }
    Ok((lo..=hi)
        .into_par_iter()
        .filter_map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            rng.set_stream(stream(format_index, k));
            binade_stats(&codec, k, config.samples_per_binade, &mut rng)
        })
        .collect())
}

/// Samples for every format and binade, formats in the given order and
/// binades ascending. `log2_magnitude` is the binade center `k + 1/2`.
pub fn accuracy_sweep(specs: &[FormatSpec], config: &SweepConfig) -> Result<Vec<AccuracySample>> {
    if config.samples_per_binade == 0 {
        return Err(AnalysisError::InvalidArgument("samples per binade must be at least 1".into()));
    }
    let mut out = Vec::new();
    for (i, &spec) in specs.iter().enumerate() {
        for b in format_curve(spec, i, config)? {
            out.push(AccuracySample {
                format: spec,
                log2_magnitude: b.center(),
                decimals: b.get(config.stat),
            });
        }
    }
    Ok(out)
}

pub fn write_csv<W: Write>(
    out: &mut W,
    specs: &[FormatSpec],
    samples: &[AccuracySample],
    config: &SweepConfig,
) -> std::io::Result<()> {
    let ceilings: Vec<String> = specs.iter().map(|s| format!("{s}={:.6}", ceiling(s))).collect();
    writeln!(
        out,
        "# meta: version={} seed={} stat={} samples_per_binade={} metric=-log10(|log10(approx/x)|) ceiling=N*log10(2) [{}]",
        env!("CARGO_PKG_VERSION"),
        config.seed,
        config.stat,
        config.samples_per_binade,
        ceilings.join(" ")
    )?;
    writeln!(out, "format,log2_magnitude,decimals_{}", config.stat)?;
    for s in samples {
        writeln!(out, "{},{:.1},{:.6}", s.format, s.log2_magnitude, s.decimals)?;
    }
    Ok(())
}

pub fn sweep_csv(specs: &[FormatSpec], config: &SweepConfig) -> Result<String> {
    let samples = accuracy_sweep(specs, config)?;
    let mut buf = Vec::new();
    write_csv(&mut buf, specs, &samples, config)?;
    Ok(String::from_utf8(buf).expect("ascii"))
}
