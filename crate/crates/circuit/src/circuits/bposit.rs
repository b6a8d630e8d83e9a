//! One-hot b-posit decoder and parallel-packing encoder.

use bposit::bposit::tables::regime_code_width;
use bposit::FormatSpec;

use crate::builder::{Builder, Sig};
use crate::netlist::{BlockKind, Netlist};

/// Select line for each regime size `2..=rS`: size `rS` covers the last two
/// one-hot lines.
fn size_selects(b: &mut Builder, one_hot: &[Sig]) -> Vec<Sig> {
    let rs = one_hot.len();
    let mut sel = one_hot[..rs - 1].to_vec();
    sel[rs - 2] = b.or(one_hot[rs - 2], one_hot[rs - 1]);
    sel
}

/// Outputs: `zero`, `nar`, `sign`, `one_hot` (rS lines), `regime`
/// (two's complement), `exponent` (sign-XORed), `exp_cin`, `fraction`
/// (left-aligned in `N − 3 − eS` bits).
pub fn decoder(spec: &FormatSpec) -> Netlist {
    let (n, rs, es) = (spec.n() as usize, spec.rs() as usize, spec.es() as usize);
    let f_width = spec.max_frac_bits() as usize;
    let d = n - 3;
    let mut b = Builder::new();
    let w = b.input("word", n);
    let sign = w[n - 1];
    let lead = w[n - 2];

    let not_lead = b.not(lead);
    let y: Vec<Sig> = (0..rs - 1).map(|j| b.xor(w[n - 3 - j], lead)).collect();
    let ny: Vec<Sig> = (0..rs - 1).map(|j| b.xor(w[n - 3 - j], not_lead)).collect();
    let one_hot: Vec<Sig> = (0..rs)
        .map(|i| {
            let mut terms = ny[..i.min(rs - 1)].to_vec();
            if i < rs - 1 {
                terms.push(y[i]);
            }
            b.and_all(&terms)
        })
        .collect();
    b.block("one_hot", BlockKind::Decoder, rs - 1, &one_hot);

    let rw = regime_code_width(rs as u32) as usize;
    let index = b.priority_encode(&one_hot, rw);
    b.block("priority_encoder", BlockKind::PriorityEncoder, rs, &index);
    let regime = b.xor_each(&index, not_lead);

    let sel = size_selects(&mut b, &one_hot);
    let taps: Vec<Vec<Sig>> = (2..=rs)
        .map(|m| (0..d).map(|p| if p >= m - 2 { w[p - (m - 2)] } else { b.zero() }).collect())
        .collect();
    let field = b.one_hot_mux(&sel, &taps);
    b.block("field", BlockKind::Mux, taps.len(), &field);

    let raw_exp: Vec<Sig> = (0..es).map(|k| if d + k >= es { field[d + k - es] } else { b.zero() }).collect();
    let exponent = b.xor_each(&raw_exp, sign);
    let fraction = field[..f_width].to_vec();

    // The fraction is zero when the low word bits below the shortest
    // possible fraction are zero and so are the extra bits a shorter regime
    // leaves to the fraction. Neither test waits for the field mux.
    let low_len = |m: usize| (n - 1 - m).saturating_sub(es);
    let common = b.nor_all(&w[..low_len(rs)]);
    b.block("fraction_zero", BlockKind::ZeroDetect, low_len(rs), &[common]);
    let extra: Vec<Vec<Sig>> = (2..=rs).map(|m| vec![b.nor_all(&w[low_len(rs)..low_len(m)])]).collect();
    let extra_zero = b.one_hot_mux(&sel, &extra)[0];
    b.block("fraction_extra", BlockKind::Mux, extra.len(), &[extra_zero]);
    let negative_common = b.and(sign, common);
    let exp_cin = b.and(negative_common, extra_zero);

    let special = b.nor_all(&w[..n - 1]);
    b.block("exception_check", BlockKind::ZeroDetect, n - 1, &[special]);
    let not_sign = b.not(sign);
    let zero = b.and(special, not_sign);
    let nar = b.and(special, sign);

    b.output("zero", &[zero]);
    b.output("nar", &[nar]);
    b.output("sign", &[sign]);
    b.output("one_hot", &one_hot);
    b.output("regime", &regime);
    b.output("exponent", &exponent);
    b.output("exp_cin", &[exp_cin]);
    b.output("fraction", &fraction);
    b.finish()
}

/// Inputs: `zero`, `nar`, `sign`, `regime` (magnitude regime, two's
/// complement), `exponent`, `fraction` (signed form, left-aligned). Output:
/// `word`.
pub fn encoder(spec: &FormatSpec) -> Netlist {
    let (n, rs, es) = (spec.n() as usize, spec.rs() as usize, spec.es() as usize);
    let f_width = spec.max_frac_bits() as usize;
    let rw = regime_code_width(rs as u32) as usize;
    let mut b = Builder::new();
    let zero = b.input_bit("zero");
    let nar = b.input_bit("nar");
    let sign = b.input_bit("sign");
    let regime = b.input("regime", rw);
    let exponent = b.input("exponent", es);
    let fraction = b.input("fraction", f_width);

    let msb = regime[rw - 1];
    let folded = b.xor_each(&regime[..rw - 1], msb);
    b.block("fold", BlockKind::Logic, rw - 1, &folded);
    let dec = b.decoder(&folded, rs);
    b.block("regime_decoder", BlockKind::Decoder, rw - 1, &dec);
    // Run polarity of the stored (sign-adjusted) regime.
    let pol = b.xnor(msb, sign);
    let mut rstring = vec![pol];
    for j in 1..rs {
        rstring.push(b.xor(pol, dec[j - 1]));
    }

    let e0 = b.xor_each(&exponent, sign);
    let one = b.one();
    let (e1, _) = b.add_const(&e0, 0, one);
    b.block("exponent_increment", BlockKind::Adder, es, &e1);
    let e_overflow = b.and_all(&e0);
    let sel = size_selects(&mut b, &dec);

    // Body bits are indexed from the top: position j is word bit N − 2 − j.
    let place = |b: &mut Builder, e: &[Sig], name: &str| -> Vec<Sig> {
        let payload: Vec<Sig> = e.iter().rev().chain(fraction.iter().rev()).copied().collect();
        let layouts: Vec<Vec<Sig>> = (2..=rs)
            .map(|m| {
                (0..n - 1)
                    .map(|j| if j < m { rstring[j] } else { payload.get(j - m).copied().unwrap_or(b.zero()) })
                    .collect()
            })
            .collect();
        let body = b.one_hot_mux(&sel, &layouts);
        b.block(name, BlockKind::Mux, layouts.len(), &body);
        body
    };
    let body0 = place(&mut b, &e0, "pack");
    let body1 = place(&mut b, &e1, "pack_incremented");

    // Exponent carry-out: the regime moves by one and everything else is 0.
    let mut carried = Vec::with_capacity(n - 1);
    let mut thermo = b.one();
    for j in 0..n - 1 {
        if j < rs {
            let bit = b.mux(pol, dec[j], thermo);
            carried.push(bit);
            thermo = b.or_all(&dec[j..]);
        } else {
            carried.push(b.zero());
        }
    }
    let body1 = b.mux_bus(e_overflow, &body1, &carried);
    b.block("overflow", BlockKind::Mux, 2, &body1);

    let frac_zero = b.nor_all(&fraction);
    let cin = b.and(sign, frac_zero);
    let body = b.mux_bus(cin, &body0, &body1);
    b.block("carry_select", BlockKind::Mux, 2, &body);

    let special = b.or(zero, nar);
    let keep = b.not(special);
    let mut word: Vec<Sig> = body.iter().rev().map(|&x| b.and(x, keep)).collect();
    let not_zero = b.not(zero);
    let s = b.or(sign, nar);
    let s = b.and(s, not_zero);
    word.push(s);
    b.output("word", &word);
    b.finish()
}
