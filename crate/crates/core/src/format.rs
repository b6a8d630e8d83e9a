//! Format descriptions.
//!
//! A [`FormatSpec`] names one of three layouts: a bounded posit `⟨N, rS, eS⟩`,
//! a standard posit `⟨N, eS⟩` (which decodes exactly like the bounded posit
//! `⟨N, N−1, eS⟩`), or one of the IEEE 754 binary interchange formats.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest exponent size accepted for posit-family formats.
pub const MAX_ES: u32 = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FormatKind {
    BPosit,
    StandardPosit,
    IeeeBinary,
}

/// A validated number format.
///
/// Fields are private so every value in circulation satisfies the format
/// invariants; construct through [`FormatSpec::bposit`], [`FormatSpec::posit`],
/// [`FormatSpec::ieee`] or [`FormatSpec::new`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FormatSpec {
    kind: FormatKind,
    n: u32,
    rs: u32,
    es: u32,
}

impl FormatSpec {
    /// Validates a raw `(kind, N, rS, eS)` tuple. For IEEE formats `rs` is
    /// ignored and `es` is the exponent field width.
    pub fn new(kind: FormatKind, n: u32, rs: u32, es: u32) -> Result<Self> {
        match kind {
            FormatKind::BPosit => Self::bposit(n, rs, es),
            FormatKind::StandardPosit => Self::posit(n, es),
            FormatKind::IeeeBinary => {
                let spec = Self::ieee(n)?;
                if spec.es != es {
                    return Err(Error::InvalidFormat(format!(
                        "ieee binary{n} has an exponent width of {}, not {es}",
                        spec.es
                    )));
                }
                Ok(spec)
            }
        }
    }

    pub fn bposit(n: u32, rs: u32, es: u32) -> Result<Self> {
        check_posit_width(n)?;
        if rs < 2 {
            return Err(Error::InvalidFormat(format!("rS = {rs} is below 2")));
        }
        if rs > n - 1 {
            return Err(Error::InvalidFormat(format!("rS = {rs} exceeds N - 1 = {}", n - 1)));
        }
        check_es(es)?;
        Ok(Self { kind: FormatKind::BPosit, n, rs, es })
    }

    pub fn posit(n: u32, es: u32) -> Result<Self> {
        check_posit_width(n)?;
        check_es(es)?;
        Ok(Self { kind: FormatKind::StandardPosit, n, rs: n - 1, es })
    }

    pub fn ieee(n: u32) -> Result<Self> {
        let es = match n {
            16 => 5,
            32 => 8,
            64 => 11,
            _ => return Err(Error::InvalidFormat(format!("ieee binary{n} is not one of binary16/32/64"))),
        };
        Ok(Self { kind: FormatKind::IeeeBinary, n, rs: 0, es })
    }

    pub fn kind(&self) -> FormatKind {
        self.kind
    }

    /// Word width `N` in bits.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Maximum regime size. Standard posits report `N − 1`; IEEE formats 0.
    pub fn rs(&self) -> u32 {
        self.rs
    }

    /// Exponent size `eS` (posits) or exponent field width (IEEE).
    pub fn es(&self) -> u32 {
        self.es
    }

    pub fn is_posit_family(&self) -> bool {
        self.kind != FormatKind::IeeeBinary
    }

    /// True when the b-posit regime cap is the full word (`rS = N − 1`),
    /// i.e. the format is a standard posit under another name.
    pub fn is_standard_equivalent(&self) -> bool {
        self.is_posit_family() && self.rs == self.n - 1
    }

    /// The b-posit `⟨N, rS, eS⟩` with the same decoding rules.
    pub fn as_bposit(&self) -> Option<FormatSpec> {
        self.is_posit_family().then_some(FormatSpec { kind: FormatKind::BPosit, ..*self })
    }

    /// IEEE exponent field width; `None` for posits.
    pub fn exp_width(&self) -> Option<u32> {
        (self.kind == FormatKind::IeeeBinary).then_some(self.es)
    }

    /// IEEE fraction field width; `None` for posits.
    pub fn frac_width(&self) -> Option<u32> {
        (self.kind == FormatKind::IeeeBinary).then_some(self.n - 1 - self.es)
    }

    /// Longest fraction any value of the format carries: `N − 1 − 2 − eS`
    /// for posits (smallest regime), the fraction field width for IEEE.
    pub fn max_frac_bits(&self) -> u32 {
        match self.kind {
            FormatKind::IeeeBinary => self.n - 1 - self.es,
            _ => (self.n - 3).saturating_sub(self.es),
        }
    }

    /// Fraction bits of the shortest-fraction values (largest regime).
    pub fn min_frac_bits(&self) -> u32 {
        match self.kind {
            FormatKind::IeeeBinary => self.n - 1 - self.es,
            _ => (self.n - 1 - self.rs).saturating_sub(self.es),
        }
    }

    /// Width of the two's-complement regime value bus: enough bits for
    /// `−rS ..= rS − 1`. Four bits for `rS = 6`.
    pub fn regime_value_width(&self) -> u32 {
        let mut w = 1;
        while (1u64 << (w - 1)) < self.rs as u64 {
            w += 1;
        }
        w
    }

    pub fn word_mask(&self) -> u64 {
        mask(self.n)
    }
}

impl fmt::Display for FormatSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FormatKind::BPosit => write!(f, "bposit:{}:{}:{}", self.n, self.rs, self.es),
            FormatKind::StandardPosit => write!(f, "posit:{}:{}", self.n, self.es),
            FormatKind::IeeeBinary => write!(f, "ieee:{}", self.n),
        }
    }
}

impl FromStr for FormatSpec {
    type Err = Error;

    /// Parses `bposit:N:rS:eS`, `posit:N:eS` or `ieee:16|32|64`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let num =
            |t: &str| t.parse::<u32>().map_err(|_| Error::Parse(format!("bad number {t:?} in format {s:?}")));
        match parts.as_slice() {
            ["bposit", n, rs, es] => Self::bposit(num(n)?, num(rs)?, num(es)?),
            ["posit", n, es] => Self::posit(num(n)?, num(es)?),
            ["ieee", n] => Self::ieee(num(n)?),
            _ => Err(Error::Parse(format!(
                "unrecognised format {s:?}; expected bposit:N:rS:eS, posit:N:eS or ieee:16|32|64"
            ))),
        }
    }
}

fn check_posit_width(n: u32) -> Result<()> {
    if !(4..=64).contains(&n) {
        return Err(Error::InvalidFormat(format!("N = {n} is outside 4..=64")));
    }
    Ok(())
}

fn check_es(es: u32) -> Result<()> {
    if es > MAX_ES {
        return Err(Error::InvalidFormat(format!("eS = {es} exceeds {MAX_ES}")));
    }
    Ok(())
}

/// Low `bits` ones; `bits` may be 0..=64.
#[inline]
pub(crate) fn mask(bits: u32) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}
