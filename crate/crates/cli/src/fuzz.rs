//! Differential fuzzing of the behavioral codecs against each other and
//! against the gate-level netlists.

use bposit::{BPositCodec, DatapathFields, FloatClass, FloatCodec, FormatSpec, StandardPositCodec};
use bposit_circuit::{build_circuit, check_words, CircuitKind, Netlist};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;

const CHUNK: usize = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FuzzCheck {
    pub name: String,
    pub checked: u64,
    pub mismatches: u64,
    pub first_mismatch: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FuzzReport {
    pub format: String,
    pub seed: u64,
    pub checks: Vec<FuzzCheck>,
}

impl FuzzReport {
    pub fn mismatches(&self) -> u64 {
        self.checks.iter().map(|c| c.mismatches).sum()
    }
}

fn mask(bits: u32) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

/// `count` words; a quarter are pushed toward long regimes and another
/// quarter toward their negations.
pub fn random_words(spec: &FormatSpec, count: usize, seed: u64) -> Vec<u64> {
    let n = spec.n();
    let m = mask(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let w = rng.gen::<u64>() & m;
            match i % 4 {
                0 => w >> rng.gen_range(0..n),
                1 => !(w >> rng.gen_range(0..n)) & m,
                _ => w,
            }
        })
        .collect()
}

fn behavioral(name: &str, words: &[u64], bad: impl Fn(u64) -> bool + Sync) -> FuzzCheck {
    let failures: Vec<u64> = words.par_iter().copied().filter(|&w| bad(w)).collect();
    FuzzCheck {
        name: name.to_string(),
        checked: words.len() as u64,
        mismatches: failures.len() as u64,
        first_mismatch: failures.first().map(|w| format!("{w:#x}")),
    }
}

fn netlist_check(kind: CircuitKind, spec: FormatSpec, words: &[u64]) -> Result<FuzzCheck> {
    let netlist: Netlist = build_circuit(kind, &spec)?;
    let reports = words
        .par_chunks(CHUNK)
        .map(|chunk| check_words(&netlist, kind, spec, chunk.iter().copied()))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(FuzzCheck {
        name: format!("netlist {kind}"),
        checked: reports.iter().map(|r| r.checked).sum(),
        mismatches: reports.iter().map(|r| r.mismatches).sum(),
        first_mismatch: reports
            .iter()
            .find_map(|r| r.first_mismatch.as_ref())
            .map(|m| format!("{:#x}: {} expected {:#x} got {:#x}", m.word, m.output, m.expected, m.got)),
    })
}

fn posit_family_checks(spec: FormatSpec, words: &[u64]) -> Result<Vec<FuzzCheck>> {
    let c = BPositCodec::new(spec)?;
    let mut checks = vec![
        behavioral("fast vs reference decode", words, |w| {
            let fast = c.decode_fast(w);
            let reference = c.decode_reference(w);
            fast.to_fields() != reference
                || Some(fast.to_datapath()) != DatapathFields::from_fields(&reference, &spec)
        }),
        behavioral("encode(decode(w)) = w", words, |w| {
            c.encode_fields(&c.decode_reference(w)).ok() != Some(w)
        }),
        behavioral("datapath encode", words, |w| {
            c.encode_datapath(&c.decode_fast(w).to_datapath()).ok() != Some(w)
        }),
    ];
    checks.push(netlist_check(CircuitKind::BPositDec, spec, words)?);
    checks.push(netlist_check(CircuitKind::BPositEnc, spec, words)?);
    if spec.is_standard_equivalent() {
        let s = StandardPositCodec::new(spec)?;
        checks.push(behavioral("standard vs reference decode", words, |w| {
            let f = s.decode(w);
            f != c.decode_reference(w) || s.encode(&f).ok() != Some(w)
        }));
        checks.push(netlist_check(CircuitKind::PositDec, spec, words)?);
        checks.push(netlist_check(CircuitKind::PositEnc, spec, words)?);
    }
    Ok(checks)
}

fn float_checks(spec: FormatSpec, words: &[u64]) -> Result<Vec<FuzzCheck>> {
    let c = FloatCodec::new(spec)?;
    let mut checks = vec![behavioral("encode(decode(w)) = w", words, |w| {
        let r = c.decode(w);
        match r.class {
            FloatClass::NaN => c.encode(&r) != c.canonical_nan(),
            _ => c.encode(&r) != w,
        }
    })];
    checks.push(netlist_check(CircuitKind::FloatDec, spec, words)?);
    checks.push(netlist_check(CircuitKind::FloatEnc, spec, words)?);
    Ok(checks)
}

pub fn fuzz(spec: FormatSpec, count: usize, seed: u64) -> Result<FuzzReport> {
    let words = random_words(&spec, count, seed);
    let checks =
        if spec.is_posit_family() { posit_family_checks(spec, &words)? } else { float_checks(spec, &words)? };
    Ok(FuzzReport { format: spec.to_string(), seed, checks })
}
