use bposit::FormatSpec;
use bposit_circuit::{build_circuit, check_exhaustive, check_words, CircuitKind, EquivalenceReport};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn assert_clean(report: &EquivalenceReport) {
    assert!(
        report.passed(),
        "{} {}: {} of {} differ, first {:?}",
        report.kind,
        report.spec,
        report.mismatches,
        report.checked,
        report.first_mismatch
    );
}

fn exhaustive(kind: CircuitKind, spec: FormatSpec) {
    let net = build_circuit(kind, &spec).unwrap();
    let report = check_exhaustive(&net, kind, spec).unwrap();
    assert_eq!(report.checked, 1 << spec.n());
    assert_clean(&report);
}

/// Random words with a quarter biased toward long runs at the top.
fn words(n: u32, seed: u64, count: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = if n == 64 { u64::MAX } else { (1 << n) - 1 };
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

#[test]
fn all_kinds_exhaustive_at_16_bits() {
    for kind in CircuitKind::ALL {
        exhaustive(kind, kind.default_spec(16).unwrap());
    }
}

#[test]
fn all_kinds_on_a_million_words_at_32_and_64_bits() {
    for kind in CircuitKind::ALL {
        for (n, seed) in [(32, 1), (64, 2)] {
            let spec = kind.default_spec(n).unwrap();
            let net = build_circuit(kind, &spec).unwrap();
            let report = check_words(&net, kind, spec, words(n, seed, 1_000_000)).unwrap();
            assert_eq!(report.checked, 1_000_000);
            assert_clean(&report);
        }
    }
}

#[test]
fn other_bposit_parameters() {
    for spec in [
        FormatSpec::bposit(16, 6, 3).unwrap(),
        FormatSpec::bposit(16, 15, 2).unwrap(),
        FormatSpec::bposit(16, 4, 0).unwrap(),
    ] {
        exhaustive(CircuitKind::BPositDec, spec);
        exhaustive(CircuitKind::BPositEnc, spec);
    }
}

#[test]
fn small_formats_with_ghost_exponent_bits() {
    for n in 4..=10 {
        for rs in 2..n {
            for es in 0..=4 {
                let spec = FormatSpec::bposit(n, rs, es).unwrap();
                exhaustive(CircuitKind::BPositDec, spec);
                exhaustive(CircuitKind::BPositEnc, spec);
            }
        }
        for es in 0..=4 {
            let spec = FormatSpec::posit(n, es).unwrap();
            exhaustive(CircuitKind::PositDec, spec);
            exhaustive(CircuitKind::PositEnc, spec);
        }
    }
}

#[test]
fn other_widths() {
    for n in [24, 40, 48] {
        for (kind, spec) in [
            (CircuitKind::BPositDec, FormatSpec::bposit(n, 6, 5).unwrap()),
            (CircuitKind::BPositEnc, FormatSpec::bposit(n, 6, 5).unwrap()),
            (CircuitKind::PositDec, FormatSpec::posit(n, 2).unwrap()),
            (CircuitKind::PositEnc, FormatSpec::posit(n, 3).unwrap()),
        ] {
            let net = build_circuit(kind, &spec).unwrap();
            assert_clean(&check_words(&net, kind, spec, words(n, n as u64, 100_000)).unwrap());
        }
    }
}
