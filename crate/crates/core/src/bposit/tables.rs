//! Regime lookup logic: one-hot size detection, size from regime value and
//! regime-string construction. For `rS = 6` these reproduce the six-row
//! tables of the hardware design; other `rS` use the same construction.

use std::fmt;

use crate::error::{Error, Result};
use crate::format::mask;

/// One-hot regime-size selector with `rS` lines. Line `i` means a run of
/// `i + 1` identical regime bits, so the regime occupies `min(i + 2, rS)` bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OneHotRegime {
    bits: u64,
    rs: u32,
}

impl OneHotRegime {
    pub fn from_index(index: u32, rs: u32) -> Self {
        debug_assert!(index < rs);
        Self { bits: 1 << index, rs }
    }

    /// Raw select lines, line `i` in bit `i`.
    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn index(&self) -> u32 {
        self.bits.trailing_zeros()
    }

    pub fn run_length(&self) -> u32 {
        self.index() + 1
    }

    pub fn regime_size(&self) -> u32 {
        (self.index() + 2).min(self.rs)
    }
}

impl fmt::Display for OneHotRegime {
    /// Line 0 leftmost, e.g. `100000` for the shortest regime.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rs {
            f.write_str(if (self.bits >> i) & 1 == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Maps the `rS − 1` regime bits after the regime MSB, already XORed with
/// that MSB, to a one-hot selector. `xored` holds the bit nearest the MSB in
/// its top position (bit `rS − 2`).
pub fn one_hot_from_xored(xored: u64, rs: u32) -> OneHotRegime {
    let width = rs - 1;
    let x = xored & mask(width);
    let index = if x == 0 { rs - 1 } else { width - (64 - x.leading_zeros()) };
    OneHotRegime::from_index(index, rs)
}

/// Two's-complement width of the regime value bus for a given `rS`.
pub fn regime_code_width(rs: u32) -> u32 {
    let mut w = 1;
    while (1u64 << (w - 1)) < rs as u64 {
        w += 1;
    }
    w
}

/// The regime value `r` as a `w`-bit two's-complement code.
pub fn regime_code(r: i32, rs: u32) -> u32 {
    (r as u32) & mask(regime_code_width(rs)) as u32
}

/// Inverse of [`regime_code`]; rejects codes outside `−rS ..= rS − 1`.
pub fn regime_from_code(code: u32, rs: u32) -> Result<i32> {
    let w = regime_code_width(rs);
    if code as u64 > mask(w) {
        return Err(Error::InvalidRegimeValue { code, rs });
    }
    let shift = 32 - w;
    let r = ((code << shift) as i32) >> shift;
    if r < -(rs as i32) || r > rs as i32 - 1 {
        return Err(Error::InvalidRegimeValue { code, rs });
    }
    Ok(r)
}

/// Low bits of the code XORed with its MSB. A value and its one's
/// complement fold to the same number.
pub fn fold_regime_code(code: u32, rs: u32) -> u32 {
    let w = regime_code_width(rs);
    let low = code & mask(w - 1) as u32;
    if (code >> (w - 1)) & 1 == 1 {
        !low & mask(w - 1) as u32
    } else {
        low
    }
}

/// Regime field width for a regime value code.
pub fn regime_size_of(code: u32, rs: u32) -> Result<u32> {
    regime_from_code(code, rs)?;
    Ok((fold_regime_code(code, rs) + 2).min(rs))
}

/// Every intermediate of the regime-string construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RegimeString {
    pub folded: u32,
    /// Binary decoder output, `rS` lines, line 0 is the MSB.
    pub decoder: u64,
    /// Decoder output with a `0` prepended, `rS + 1` bits, MSB first.
    pub intermediate: u64,
    pub width: u32,
    /// Final regime field, `width` bits, MSB first.
    pub bits: u64,
    rs: u32,
}

impl RegimeString {
    pub fn decoder_string(&self) -> String {
        bit_string(self.decoder, self.rs)
    }

    pub fn intermediate_string(&self) -> String {
        bit_string(self.intermediate, self.rs + 1)
    }

    pub fn bits_string(&self) -> String {
        bit_string(self.bits, self.width)
    }
}

fn bit_string(v: u64, width: u32) -> String {
    (0..width).rev().map(|i| if (v >> i) & 1 == 1 { '1' } else { '0' }).collect()
}

/// Builds the regime field for the datapath regime value `code` and sign.
///
/// The folded code drives a `(w−1)×rS` decoder; a `0` is prepended, the top
/// `width` bits are kept, and the result is inverted unless the code's MSB
/// differs from the sign. A set bit marks the run terminator.
pub fn regime_string_of(code: u32, sign: bool, rs: u32) -> Result<RegimeString> {
    regime_from_code(code, rs)?;
    let w = regime_code_width(rs);
    let folded = fold_regime_code(code, rs);
    let decoder = 1u64 << (rs - 1 - folded);
    let intermediate = decoder;
    let width = (folded + 2).min(rs);
    let top = intermediate >> (rs + 1 - width);
    let msb = (code >> (w - 1)) & 1 == 1;
    let bits = if msb != sign { top } else { !top & mask(width) };
    Ok(RegimeString { folded, decoder, intermediate, width, bits, rs })
}

/// Regime field of a raw regime value `r` as it appears in the word.
pub fn raw_regime_field(r: i32, rs: u32) -> (u64, u32) {
    let (k, ones) = if r >= 0 { (r as u32 + 1, true) } else { ((-r) as u32, false) };
    let size = (k + 1).min(rs);
    let run = mask(k.min(size)) << (size - k.min(size));
    let field = if ones { run } else { !run & mask(size) };
    (field, size)
}
