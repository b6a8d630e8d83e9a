//! IEEE binary decoder into the recoded form (one extra exponent bit,
//! normalized subnormals) and the matching encoder.

use bposit::FormatSpec;

use crate::builder::{Builder, Sig};
use crate::netlist::{BlockKind, Netlist};

fn widths(spec: &FormatSpec) -> (usize, usize, u64) {
    let ew = spec.exp_width().expect("ieee") as usize;
    let fw = spec.frac_width().expect("ieee") as usize;
    (ew, fw, (1u64 << (ew - 1)) - 1)
}

/// Two's complement of `k` in `width` bits.
fn neg_const(k: u64, width: usize) -> u64 {
    k.wrapping_neg() & ((1u64 << width) - 1)
}

/// Outputs: class flags `zero`, `subnormal`, `normal`, `inf`, `nan`, then
/// `sign`, the signed `exponent` (`ew + 1` bits) and the normalized
/// `fraction`.
pub fn decoder(spec: &FormatSpec) -> Netlist {
    let (ew, fw, bias) = widths(spec);
    let n = spec.n() as usize;
    let mut b = Builder::new();
    let w = b.input("word", n);
    let sign = w[n - 1];
    let frac = w[..fw].to_vec();
    let exp = w[fw..fw + ew].to_vec();

    let exp_zero = b.nor_all(&exp);
    let exp_ones = b.and_all(&exp);
    let frac_zero = b.nor_all(&frac);
    let frac_nonzero = b.not(frac_zero);
    let zero = b.and(exp_zero, frac_zero);
    let subnormal = b.and(exp_zero, frac_nonzero);
    let inf = b.and(exp_ones, frac_zero);
    let nan = b.and(exp_ones, frac_nonzero);
    let either = b.or(exp_zero, exp_ones);
    let normal = b.not(either);

    let msb_first: Vec<Sig> = frac.iter().rev().copied().collect();
    let lz = b.leading_zeros(&msb_first);
    b.block("lzc", BlockKind::LeadingBitCounter, fw, &lz);
    let zero_bit = b.zero();
    let mut pre = vec![zero_bit];
    pre.extend_from_slice(&frac[..fw - 1]);
    let normalized = b.shift_left(&pre, &lz, zero_bit);
    b.block("normalize", BlockKind::Shifter, lz.len(), &normalized);
    let fraction = b.mux_bus(subnormal, &frac, &normalized);

    // Normal: E − bias. Subnormal: emin − (lz + 1) = ¬lz + 1 − bias.
    let mut e_ext = exp.clone();
    e_ext.push(zero_bit);
    let mut lz_inv = b.not_bus(&lz);
    lz_inv.resize(ew + 1, b.one());
    let addend = b.mux_bus(subnormal, &e_ext, &lz_inv);
    let (exponent, _) = b.add_const(&addend, neg_const(bias, ew + 1), subnormal);
    b.block("rebias", BlockKind::Adder, ew + 1, &exponent);

    b.output("zero", &[zero]);
    b.output("subnormal", &[subnormal]);
    b.output("normal", &[normal]);
    b.output("inf", &[inf]);
    b.output("nan", &[nan]);
    b.output("sign", &[sign]);
    b.output("exponent", &exponent);
    b.output("fraction", &fraction);
    b.finish()
}

/// Inputs: `zero`, `inf`, `nan`, `sign`, signed `exponent` (`ew + 1` bits)
/// and `fraction`. Output: `word`. NaN encodes as the canonical quiet NaN.
pub fn encoder(spec: &FormatSpec) -> Netlist {
    let (ew, fw, bias) = widths(spec);
    let mut b = Builder::new();
    let zero = b.input_bit("zero");
    let inf = b.input_bit("inf");
    let nan = b.input_bit("nan");
    let sign = b.input_bit("sign");
    let exponent = b.input("exponent", ew + 1);
    let fraction = b.input("fraction", fw);
    let zero_bit = b.zero();
    let one = b.one();

    let (biased, _) = b.add_const(&exponent, bias, zero_bit);
    b.block("rebias", BlockKind::Adder, ew + 1, &biased);
    let biased_zero = b.nor_all(&biased);
    let subnormal = b.or(biased[ew], biased_zero);

    // Right-shift distance minus one: emin − 1 − exponent = ¬exponent + 1 − bias.
    let inv = b.not_bus(&exponent);
    let (distance, _) = b.add_const(&inv, neg_const(bias, ew + 1).wrapping_add(1), zero_bit);
    let stages = usize::BITS as usize - fw.leading_zeros() as usize;
    let far = b.or_all(&distance[stages.min(ew + 1)..]);
    let mut hidden = fraction[1..].to_vec();
    hidden.push(one);
    let shifted = b.shift_right(&hidden, &distance[..stages.min(ew + 1)], zero_bit);
    b.block("denormalize", BlockKind::Shifter, stages, &shifted);
    let near = b.not(far);
    let sub_frac = b.and_each(&shifted, near);

    let frac_sel = b.mux_bus(subnormal, &fraction, &sub_frac);
    let exp_zero = vec![zero_bit; ew];
    let exp_sel = b.mux_bus(subnormal, &biased[..ew], &exp_zero);

    let special = b.or(zero, inf);
    let special = b.or(special, nan);
    let finite = b.not(special);
    let saturate = b.or(inf, nan);
    let mut word: Vec<Sig> = frac_sel.iter().map(|&x| b.and(x, finite)).collect();
    word[fw - 1] = b.or(word[fw - 1], nan);
    for &e in &exp_sel {
        let kept = b.and(e, finite);
        word.push(b.or(kept, saturate));
    }
    let not_nan = b.not(nan);
    word.push(b.and(sign, not_nan));
    b.output("word", &word);
    b.finish()
}
