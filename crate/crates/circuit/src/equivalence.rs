//! Differential checks of netlists against the behavioral codecs.
//!
//! Every probe starts from a word of the format. Decoders see the word;
//! encoders see the fields the behavioral decoder extracts from it, so the
//! encoder domain is exactly the set of well-formed field tuples.

use bposit::bposit::tables::regime_code_width;
use bposit::{
    BPositCodec, Class, DatapathFields, FieldSet, FloatClass, FloatCodec, FormatSpec, StandardPositCodec,
};

use crate::circuits::{posit::regime_width, CircuitKind};
use crate::error::Result;
use crate::netlist::Netlist;

fn mask(bits: u32) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

fn code(value: i64, bits: u32) -> u64 {
    value as u64 & mask(bits)
}

/// One circuit stimulus with its behavioral response. `None` marks an
/// output the codec leaves undefined for this input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Probe {
    pub inputs: Vec<u64>,
    pub expected: Vec<Option<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub word: u64,
    pub output: String,
    pub expected: u64,
    pub got: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub kind: CircuitKind,
    pub spec: FormatSpec,
    pub checked: u64,
    pub mismatches: u64,
    pub first_mismatch: Option<Mismatch>,
}

impl EquivalenceReport {
    pub fn passed(&self) -> bool {
        self.mismatches == 0
    }
}

/// Builds probes for one circuit kind and format.
pub struct Prober {
    kind: CircuitKind,
    spec: FormatSpec,
    bposit: Option<BPositCodec>,
    posit: Option<StandardPositCodec>,
    float: Option<FloatCodec>,
}

impl Prober {
    pub fn new(kind: CircuitKind, spec: FormatSpec) -> Self {
        Self {
            kind,
            spec,
            bposit: BPositCodec::new(spec).ok(),
            posit: StandardPositCodec::new(spec).ok(),
            float: FloatCodec::new(spec).ok(),
        }
    }

    pub fn probe(&self, word: u64) -> Probe {
        let word = word & mask(self.spec.n());
        match self.kind {
            CircuitKind::BPositDec => self.bposit_dec(word),
            CircuitKind::BPositEnc => self.bposit_enc(word),
            CircuitKind::PositDec => self.posit_dec(word),
            CircuitKind::PositEnc => self.posit_enc(word),
            CircuitKind::FloatDec => self.float_dec(word),
            CircuitKind::FloatEnc => self.float_enc(word),
        }
    }

    fn bposit_dec(&self, word: u64) -> Probe {
        let c = self.bposit.as_ref().expect("posit-family spec");
        let r = c.decode_fast(word);
        let rw = regime_code_width(self.spec.rs());
        let expected = [
            r.zero as u64,
            r.nar as u64,
            r.sign as u64,
            r.one_hot.bits(),
            code(r.regime as i64, rw),
            r.exponent,
            r.exp_cin as u64,
            r.fraction,
        ];
        Probe { inputs: vec![word], expected: expected.map(Some).to_vec() }
    }

    fn bposit_enc(&self, word: u64) -> Probe {
        let c = self.bposit.as_ref().expect("posit-family spec");
        let d: DatapathFields = c.decode_fast(word).to_datapath();
        let rw = regime_code_width(self.spec.rs());
        let inputs = vec![
            (d.class == Class::Zero) as u64,
            (d.class == Class::NaR) as u64,
            d.sign as u64,
            code(d.regime as i64, rw),
            d.exponent,
            d.fraction,
        ];
        let out = c.encode_datapath(&d).expect("decoded fields encode");
        Probe { inputs, expected: vec![Some(out)] }
    }

    fn aligned_posit_fields(&self, f: &FieldSet) -> [u64; 3] {
        let f_width = self.spec.max_frac_bits();
        [
            code(f.regime as i64, regime_width(self.spec.n())),
            f.exponent,
            f.fraction << (f_width - f.frac_bits),
        ]
    }

    fn posit_dec(&self, word: u64) -> Probe {
        let c = self.posit.as_ref().expect("standard posit spec");
        let f = c.decode(word);
        let real = f.class == Class::Real;
        let mut expected = vec![Some((f.class == Class::Zero) as u64), Some((f.class == Class::NaR) as u64)];
        expected.push(real.then_some(f.sign as u64));
        for v in self.aligned_posit_fields(&f) {
            expected.push(real.then_some(v));
        }
        Probe { inputs: vec![word], expected }
    }

    fn posit_enc(&self, word: u64) -> Probe {
        let c = self.posit.as_ref().expect("standard posit spec");
        let n = self.spec.n();
        let sign = (word >> (n - 1)) & 1 == 1;
        let negate = |w: u64| w.wrapping_neg() & mask(n);
        let magnitude = if sign { negate(word) } else { word };
        let f = c.decode(magnitude);
        match f.class {
            Class::Zero | Class::NaR => {
                let inputs =
                    vec![(f.class == Class::Zero) as u64, (f.class == Class::NaR) as u64, 0, 0, 0, 0];
                let out = c.encode(&f).expect("special encodes");
                Probe { inputs, expected: vec![Some(out)] }
            }
            Class::Real => {
                let [r, e, frac] = self.aligned_posit_fields(&f);
                let m = c.encode(&f).expect("decoded fields encode");
                let out = if sign { negate(m) } else { m };
                Probe { inputs: vec![0, 0, sign as u64, r, e, frac], expected: vec![Some(out)] }
            }
        }
    }

    fn float_dec(&self, word: u64) -> Probe {
        let c = self.float.as_ref().expect("ieee spec");
        let r = c.decode(word);
        let ew = self.spec.exp_width().expect("ieee");
        let finite = r.is_finite_nonzero();
        let mut expected: Vec<Option<u64>> =
            [FloatClass::Zero, FloatClass::Subnormal, FloatClass::Normal, FloatClass::Inf, FloatClass::NaN]
                .iter()
                .map(|&k| Some((r.class == k) as u64))
                .collect();
        expected.push((r.class != FloatClass::NaN).then_some(r.sign as u64));
        expected.push(finite.then_some(code(r.exponent as i64, ew + 1)));
        expected.push(finite.then_some(r.fraction));
        Probe { inputs: vec![word], expected }
    }

    fn float_enc(&self, word: u64) -> Probe {
        let c = self.float.as_ref().expect("ieee spec");
        let r = c.decode(word);
        let ew = self.spec.exp_width().expect("ieee");
        let inputs = vec![
            (r.class == FloatClass::Zero) as u64,
            (r.class == FloatClass::Inf) as u64,
            (r.class == FloatClass::NaN) as u64,
            r.sign as u64,
            code(r.exponent as i64, ew + 1),
            r.fraction,
        ];
        Probe { inputs, expected: vec![Some(c.encode(&r))] }
    }
}

/// Runs `words` through both the netlist and the behavioral codec.
pub fn check_words<I>(
    netlist: &Netlist,
    kind: CircuitKind,
    spec: FormatSpec,
    words: I,
) -> Result<EquivalenceReport>
where
    I: IntoIterator<Item = u64>,
{
    let prober = Prober::new(kind, spec);
    let names: Vec<&str> = netlist.outputs().iter().map(|b| b.name.as_str()).collect();
    let mut report = EquivalenceReport { kind, spec, checked: 0, mismatches: 0, first_mismatch: None };
    let mut words = words.into_iter().peekable();
    while words.peek().is_some() {
        let batch: Vec<u64> = words.by_ref().take(4096).collect();
        let probes: Vec<Probe> = batch.iter().map(|&w| prober.probe(w)).collect();
        let vectors: Vec<Vec<u64>> = probes.iter().map(|p| p.inputs.clone()).collect();
        let outputs = netlist.evaluate(&vectors)?;
        for ((&word, probe), got) in batch.iter().zip(&probes).zip(&outputs) {
            report.checked += 1;
            let bad =
                probe.expected.iter().zip(got).enumerate().find(|(_, (e, g))| e.is_some_and(|e| e != **g));
            if let Some((i, (e, g))) = bad {
                report.mismatches += 1;
                report.first_mismatch.get_or_insert(Mismatch {
                    word,
                    output: names[i].to_string(),
                    expected: e.unwrap(),
                    got: *g,
                });
            }
        }
    }
    Ok(report)
}

/// Checks every word of the format.
pub fn check_exhaustive(netlist: &Netlist, kind: CircuitKind, spec: FormatSpec) -> Result<EquivalenceReport> {
    check_words(netlist, kind, spec, 0..1u64 << spec.n())
}
