//! Bit-scan decoder. The oracle every other decode path is checked against.

use crate::fields::FieldSet;
use crate::format::{mask, FormatSpec};
use crate::value::Class;

/// Decodes the low `N` bits of `word` under b-posit rules (`rS` from
/// `spec`, so standard posits decode with `rS = N − 1`).
///
/// Fields are read from the raw word; negative patterns are not complemented.
pub fn decode_reference(spec: &FormatSpec, word: u64) -> FieldSet {
    let (n, rs, es) = (spec.n(), spec.rs(), spec.es());
    let word = word & mask(n);
    if word == 0 {
        return FieldSet::zero();
    }
    if word == 1 << (n - 1) {
        return FieldSet::nar();
    }
    let sign = (word >> (n - 1)) & 1 == 1;
    let lead = (word >> (n - 2)) & 1;

    let mut run = 0;
    while run < rs && (word >> (n - 2 - run)) & 1 == lead {
        run += 1;
    }
    // A run that stops early is followed by its terminator.
    let regime_size = if run < rs { run + 1 } else { rs };
    let regime = if lead == 1 { run as i32 - 1 } else { -(run as i32) };

    let rest_bits = n - 1 - regime_size;
    let rest = word & mask(rest_bits);
    let (exponent, fraction, frac_bits) = if rest_bits >= es {
        let fb = rest_bits - es;
        (rest >> fb, rest & mask(fb), fb)
    } else {
        // Exponent runs past the LSB: complete it with ghost zeros.
        (rest << (es - rest_bits), 0, 0)
    };

    FieldSet { class: Class::Real, sign, regime, regime_size, exponent, fraction, frac_bits }
}
