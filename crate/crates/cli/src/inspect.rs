//! Pattern inspection, value conversion and pattern tables.

use bposit::value::rational_to_sci;
use bposit::{BPositCodec, BitPattern, Class, FloatClass, FormatSpec, Rational};
use num_traits::Zero;
use serde::Serialize;

use crate::accuracy::decimal_accuracy_with;
use crate::codec::AnyCodec;
use crate::error::{AnalysisError, Result};

const SCI_DIGITS: u32 = 17;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Inspection {
    pub format: String,
    pub word: String,
    pub fields: String,
    pub class: String,
    pub sign: bool,
    /// Regime value and size; absent for IEEE formats.
    pub regime: Option<i32>,
    pub regime_size: Option<u32>,
    pub exponent: Option<i64>,
    pub fraction: Option<String>,
    /// Binary scale `floor(log2 |x|)`.
    pub scale: Option<i64>,
    pub exact: String,
    pub decimal: String,
}

fn float_fields(spec: &FormatSpec, word: u64) -> String {
    let n = spec.n() as usize;
    let ew = spec.exp_width().expect("ieee") as usize;
    let bin = format!("{word:0n$b}");
    format!("{}|{}|{}", &bin[..1], &bin[1..1 + ew], &bin[1 + ew..])
}

fn fraction_text(fraction: u64, bits: u32) -> String {
    if bits == 0 {
        "-".into()
    } else {
        format!("{fraction:0width$b}", width = bits as usize)
    }
}

pub fn inspect(spec: FormatSpec, text: &str) -> Result<Inspection> {
    let word = BitPattern::parse(spec, text)?.bits();
    let codec = AnyCodec::new(spec)?;
    let value = codec.exact(word);
    let (exact, decimal) = match &value {
        Some(v) => (v.to_exact_string(), v.to_sci(SCI_DIGITS)),
        None => ("-".into(), "-".into()),
    };
    let scale = value.as_ref().and_then(|v| v.floor_log2());
    let word_hex = BitPattern::new(spec, word)?.to_hex();
    Ok(match codec {
        AnyCodec::Posit(c) => {
            let f = c.decode_reference(word);
            let real = f.class == Class::Real;
            Inspection {
                format: spec.to_string(),
                word: word_hex,
                fields: c.field_string(word),
                class: format!("{:?}", f.class),
                sign: f.sign,
                regime: real.then_some(f.regime),
                regime_size: real.then_some(f.regime_size),
                exponent: real.then_some(f.exponent as i64),
                fraction: real.then(|| fraction_text(f.fraction, f.frac_bits)),
                scale,
                exact: if f.class == Class::NaR { "NaR".into() } else { exact },
                decimal: if f.class == Class::NaR { "NaR".into() } else { decimal },
            }
        }
        AnyCodec::Float(c) => {
            let r = c.decode(word);
            let finite = r.is_finite_nonzero();
            let label = match r.class {
                FloatClass::Inf => if r.sign { "-inf" } else { "+inf" }.to_string(),
                FloatClass::NaN => "NaN".to_string(),
                _ => exact,
            };
            Inspection {
                format: spec.to_string(),
                word: word_hex,
                fields: float_fields(&spec, word),
                class: format!("{:?}", r.class),
                sign: r.sign,
                regime: None,
                regime_size: None,
                exponent: finite.then_some(r.exponent as i64),
                fraction: finite.then(|| fraction_text(r.fraction, r.frac_bits)),
                scale,
                exact: label,
                decimal: if value.is_some() { decimal } else { "-".into() },
            }
        }
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Conversion {
    pub format: String,
    pub input: String,
    pub word: String,
    pub fields: String,
    pub exact: String,
    pub decimal: String,
    /// `(x̂ − x)/x`, absent for zero or non-real results.
    pub relative_error: Option<String>,
    pub decimals: Option<f64>,
}

/// Rounds a decimal literal or fraction to the nearest value of `spec`.
pub fn convert(spec: FormatSpec, text: &str) -> Result<Conversion> {
    let x = bposit::parse_decimal(text)?;
    let codec = AnyCodec::new(spec)?;
    let word = codec.round(&x);
    let info = inspect(spec, &format!("{word:#x}"))?;
    let approx = codec.value(word);
    let relative_error = match &approx {
        Some(a) if !x.is_zero() => Some(rational_to_sci(&((a - &x) / &x), 6)),
        _ => None,
    };
    let decimals = if x.is_zero() { None } else { decimal_accuracy_with(&codec, &x).ok() };
    Ok(Conversion {
        format: spec.to_string(),
        input: text.trim().to_string(),
        word: info.word,
        fields: info.fields,
        exact: info.exact,
        decimal: info.decimal,
        relative_error,
        decimals,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub word: String,
    pub fields: String,
    pub exact: String,
    pub decimal: String,
}

/// Largest width `table` will list.
pub const MAX_TABLE_BITS: u32 = 16;

/// Every pattern of a posit-family format in posit order: NaR first, then
/// from the most negative value up to maxpos.
pub fn table(spec: FormatSpec) -> Result<Vec<TableRow>> {
    if !spec.is_posit_family() {
        return Err(AnalysisError::InvalidArgument(format!("table lists posit-family formats, got {spec}")));
    }
    if spec.n() > MAX_TABLE_BITS {
        return Err(AnalysisError::InvalidArgument(format!(
            "table is limited to N <= {MAX_TABLE_BITS}, got {spec}"
        )));
    }
    let codec = BPositCodec::new(spec)?;
    let half = 1i64 << (spec.n() - 1);
    Ok((-half..half)
        .map(|i| {
            let p = BitPattern::from_signed(spec, i);
            let v = codec.value(p.bits());
            TableRow {
                word: p.to_hex(),
                fields: codec.field_string(p.bits()),
                exact: v.to_exact_string(),
                decimal: v.to_sci(SCI_DIGITS),
            }
        })
        .collect())
}

/// Checks that every row after the first is a real value no smaller than
/// the row before it.
pub fn is_monotone(spec: FormatSpec, rows: &[TableRow]) -> Result<bool> {
    let codec = BPositCodec::new(spec)?;
    let mut prev: Option<Rational> = None;
    for row in rows.iter().skip(1) {
        let Some(v) = codec.value(BitPattern::parse(spec, &row.word)?.bits()).to_rational() else {
            return Ok(false);
        };
        if prev.as_ref().is_some_and(|p| *p > v) {
            return Ok(false);
        }
        prev = Some(v);
    }
    Ok(true)
}
