//! Standard posit decoder (leading-bit count, then shift) and encoder
//! (regime shift, then two's-complement negation).

use bposit::bposit::tables::regime_code_width;
use bposit::FormatSpec;

use crate::builder::{Builder, Sig};
use crate::netlist::{BlockKind, Netlist};

/// Width of the regime bus for a standard posit of `n` bits.
pub fn regime_width(n: u32) -> u32 {
    regime_code_width(n - 1)
}

/// Outputs: `zero`, `nar`, `sign`, `regime`, `exponent`, `fraction`
/// (left-aligned in `N − 3 − eS` bits). Fields are taken from the raw word.
pub fn decoder(spec: &FormatSpec) -> Netlist {
    let (n, es) = (spec.n() as usize, spec.es() as usize);
    let f_width = spec.max_frac_bits() as usize;
    let rw = regime_width(spec.n()) as usize;
    let mut b = Builder::new();
    let w = b.input("word", n);
    let sign = w[n - 1];
    let lead = w[n - 2];

    let special = b.nor_all(&w[..n - 1]);
    b.block("exception_check", BlockKind::ZeroDetect, n - 1, &[special]);

    // Body bits below the leading regime bit, MSB first.
    let body: Vec<Sig> = (0..n - 2).rev().map(|i| w[i]).collect();
    let differs: Vec<Sig> = body.iter().map(|&x| b.xor(x, lead)).collect();
    let count = b.leading_zeros(&differs);
    b.block("lbc", BlockKind::LeadingBitCounter, n - 1, &count);

    let not_lead = b.not(lead);
    let mut regime: Vec<Sig> = count.iter().take(rw).map(|&c| b.xor(c, not_lead)).collect();
    regime.resize(rw, not_lead);

    // Shift out the rest of the run and the terminating bit.
    let zero = b.zero();
    let lsb_first: Vec<Sig> = body.iter().rev().copied().collect();
    let mut pre = vec![zero];
    pre.extend_from_slice(&lsb_first[..n - 3]);
    let shifted = b.shift_left(&pre, &count, zero);
    b.block("shifter", BlockKind::Shifter, count.len(), &shifted);

    let top = n - 2;
    let exponent: Vec<Sig> =
        (0..es).map(|k| if top + k >= es { shifted[top + k - es] } else { zero }).collect();
    let fraction: Vec<Sig> = (0..f_width).map(|k| shifted[top - es - f_width + k]).collect();

    let not_sign = b.not(sign);
    let z = b.and(special, not_sign);
    let nar = b.and(special, sign);
    b.output("zero", &[z]);
    b.output("nar", &[nar]);
    b.output("sign", &[sign]);
    b.output("regime", &regime);
    b.output("exponent", &exponent);
    b.output("fraction", &fraction);
    b.finish()
}

/// Inputs: `zero`, `nar`, `sign`, then the regime, exponent and
/// left-aligned fraction of the magnitude. Output: `word`.
pub fn encoder(spec: &FormatSpec) -> Netlist {
    let (n, es) = (spec.n() as usize, spec.es() as usize);
    let f_width = spec.max_frac_bits() as usize;
    let rw = regime_width(spec.n()) as usize;
    let mut b = Builder::new();
    let zero = b.input_bit("zero");
    let nar = b.input_bit("nar");
    let sign = b.input_bit("sign");
    let regime = b.input("regime", rw);
    let exponent = b.input("exponent", es);
    let fraction = b.input("fraction", f_width);

    let msb = regime[rw - 1];
    let run = b.not(msb);
    let amount = b.xor_each(&regime[..rw - 1], msb);

    // [terminator | exponent | fraction], shifted right under a fill of
    // regime bits; one more regime bit sits on top.
    let terminator = msb;
    let mut payload: Vec<Sig> = fraction.clone();
    payload.extend_from_slice(&exponent);
    // Exponent bits that do not fit are ghost bits and must be zero.
    payload.drain(..payload.len() - (n - 3));
    payload.push(terminator);
    let shifted = b.shift_right(&payload, &amount, run);
    b.block("shifter", BlockKind::Shifter, amount.len(), &shifted);
    let mut magnitude = shifted;
    magnitude.push(run);
    magnitude.push(b.zero());

    let flipped = b.xor_each(&magnitude, sign);
    let (negated, _) = b.add_const(&flipped, 0, sign);
    b.block("negate", BlockKind::Adder, n, &negated);

    let special = b.or(zero, nar);
    let keep = b.not(special);
    let mut word: Vec<Sig> = negated[..n - 1].iter().map(|&x| b.and(x, keep)).collect();
    let not_zero = b.not(zero);
    let s = b.or(negated[n - 1], nar);
    let s = b.and(s, not_zero);
    word.push(s);
    b.output("word", &word);
    b.finish()
}
