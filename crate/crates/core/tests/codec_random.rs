mod common;

use bposit::{BPositCodec, DatapathFields, FormatSpec, StandardPositCodec};
use common::oracle_value;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SAMPLES: usize = 1_000_000;

fn random_words(n: u32, seed: u64) -> impl Iterator<Item = u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = if n == 64 { u64::MAX } else { (1 << n) - 1 };
    // Bias a quarter of the draws toward long regimes and short fractions.
    (0..SAMPLES).map(move |i| {
        let w: u64 = rng.gen::<u64>() & m;
        match i % 4 {
            0 => w >> rng.gen_range(0..n),
            1 => !(w >> rng.gen_range(0..n)) & m,
            _ => w,
        }
    })
}

fn check_bposit(n: u32, rs: u32, es: u32, seed: u64) {
    let spec = FormatSpec::bposit(n, rs, es).unwrap();
    let c = BPositCodec::new(spec).unwrap();
    for (i, w) in random_words(n, seed).enumerate() {
        let reference = c.decode_reference(w);
        let fast = c.decode_fast(w);
        assert_eq!(fast.to_fields(), reference, "{spec} {w:#x}");
        assert_eq!(Some(fast.to_datapath()), DatapathFields::from_fields(&reference, &spec));
        assert_eq!(c.encode_fields(&reference).unwrap(), w, "{spec} {w:#x}");
        if i % 100 == 0 {
            assert_eq!(c.value(w).to_rational(), oracle_value(n, rs, es, w), "{spec} {w:#x}");
        }
    }
}

#[test]
fn bposit_32_6_5() {
    check_bposit(32, 6, 5, 1);
}

#[test]
fn bposit_64_6_5() {
    check_bposit(64, 6, 5, 2);
}

#[test]
fn bposit_64_other_parameters() {
    check_bposit(64, 8, 2, 3);
    check_bposit(48, 6, 5, 4);
    check_bposit(40, 39, 3, 5);
}

#[test]
fn standard_posit_32_and_64() {
    for (n, seed) in [(32, 6), (64, 7)] {
        let spec = FormatSpec::posit(n, 2).unwrap();
        let s = StandardPositCodec::new(spec).unwrap();
        let b = BPositCodec::new(spec).unwrap();
        for w in random_words(n, seed) {
            let f = s.decode(w);
            assert_eq!(f, b.decode_reference(w), "{spec} {w:#x}");
            assert_eq!(s.encode(&f).unwrap(), w, "{spec} {w:#x}");
        }
    }
}
