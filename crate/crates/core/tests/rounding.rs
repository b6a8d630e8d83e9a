mod common;

use bposit::{compare_as_posit, BPositCodec, BitPattern, ExactValue, FloatCodec, FormatSpec, Scalar};
use common::{oracle_float, pow2, rat, ValueTable};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PI_40: &str = "3.1415926535897932384626433832795028841971";

fn codec(spec: FormatSpec) -> BPositCodec {
    BPositCodec::new(spec).unwrap()
}

/// Random rational with a log-uniform magnitude across `±range` binades.
fn random_rational(rng: &mut ChaCha8Rng, range: i64) -> BigRational {
    let scale = rng.gen_range(-range..=range);
    let m: u64 = rng.gen::<u64>() | 1;
    let den: u64 = rng.gen_range(1..=1_000_003);
    let q = BigRational::new(BigInt::from(m), BigInt::from(den)) * pow2(scale - 64);
    if rng.gen() {
        -q
    } else {
        q
    }
}

#[test]
fn pi_nearest_values() {
    let pi = rat(PI_40);
    let b16 = FormatSpec::bposit(16, 6, 5).unwrap();
    let p16 = FormatSpec::bposit(16, 15, 2).unwrap();

    let tb = ValueTable::new(16, 6, 5);
    let w = tb.nearest(&pi);
    assert_eq!(codec(b16).round_rational(&pi), w);
    assert_eq!(codec(b16).value(w).to_rational().unwrap(), rat("3.140625"));

    let tp = ValueTable::new(16, 15, 2);
    let w = tp.nearest(&pi);
    assert_eq!(codec(p16).round_rational(&pi), w);
    assert_eq!(w, 0x4C91);
    assert_eq!(codec(p16).value(w).to_rational().unwrap(), rat("3.1416015625"));

    // Half precision for comparison: 3.140625, about 109 times the posit error.
    let h = FloatCodec::new(FormatSpec::ieee(16).unwrap()).unwrap();
    let hw = h.round_rational(&pi);
    assert_eq!(hw, 0x4248);
    assert_eq!(oracle_float(5, 10, hw).unwrap(), rat("3.140625"));
}

#[test]
fn saturation() {
    let c = codec(FormatSpec::bposit(32, 6, 5).unwrap());
    assert_eq!(c.round_rational(&pow2(300)), 0x7FFF_FFFF);
    assert_eq!(c.round_rational(&pow2(192)), 0x7FFF_FFFF);
    assert_eq!(c.round_rational(&pow2(-192)), 1);
    assert_eq!(c.round_rational(&pow2(-1000)), 1);
    assert_eq!(c.round_rational(&-pow2(-1000)), 0xFFFF_FFFF);
}

/// Exhaustive tie and near-tie probes plus random points against the table.
fn agrees_with_table(n: u32, rs: u32, es: u32, seed: u64) {
    let c = codec(FormatSpec::bposit(n, rs, es).unwrap());
    let table = ValueTable::new(n, rs, es);
    let vals = table.values();
    let nudge = pow2(-400);
    for pair in vals.windows(2) {
        let mid = (&pair[0].0 + &pair[1].0) / BigRational::from_integer(2.into());
        for x in [mid.clone(), &mid + &nudge, &mid - &nudge, pair[0].0.clone()] {
            assert_eq!(c.round_rational(&x), table.nearest(&x), "<{n},{rs},{es}> {x}");
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..20_000 {
        let x = random_rational(&mut rng, 260);
        assert_eq!(c.round_rational(&x), table.nearest(&x), "<{n},{rs},{es}> {x}");
    }
}

#[test]
fn correct_rounding_16_6_5() {
    agrees_with_table(16, 6, 5, 10);
}

#[test]
fn correct_rounding_16_6_3() {
    agrees_with_table(16, 6, 3, 11);
}

#[test]
fn correct_rounding_posit16() {
    agrees_with_table(16, 15, 2, 12);
}

#[test]
fn correct_rounding_small_formats() {
    for (n, rs, es) in [(8, 6, 3), (8, 7, 0), (6, 3, 4), (10, 4, 1), (12, 6, 5)] {
        agrees_with_table(n, rs, es, 13);
    }
}

#[test]
fn rounding_is_symmetric_and_monotone() {
    for (n, rs, es) in [(32, 6, 5), (64, 6, 5), (16, 6, 3)] {
        let spec = FormatSpec::bposit(n, rs, es).unwrap();
        let c = codec(spec);
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        let mut xs: Vec<BigRational> = (0..5_000).map(|_| random_rational(&mut rng, 200)).collect();
        for x in &xs {
            let p = BitPattern::new(spec, c.round_rational(x)).unwrap();
            let q = BitPattern::new(spec, c.round_rational(&-x)).unwrap();
            assert_eq!(q, p.negate(), "{spec} {x}");
        }
        xs.sort();
        let words: Vec<BitPattern> =
            xs.iter().map(|x| BitPattern::new(spec, c.round_rational(x)).unwrap()).collect();
        for w in words.windows(2) {
            assert_ne!(compare_as_posit(&w[0], &w[1]).unwrap(), std::cmp::Ordering::Greater);
        }
    }
}

#[test]
fn ties_at_every_midpoint_go_to_even_in_32_bits() {
    let spec = FormatSpec::bposit(32, 6, 5).unwrap();
    let c = codec(spec);
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..20_000 {
        let w = rng.gen_range(1..0x7FFF_FFFEu64);
        let lo = c.value(w).to_rational().unwrap();
        let hi = c.value(w + 1).to_rational().unwrap();
        let mid = (lo + hi) / BigRational::from_integer(2.into());
        let even = if w & 1 == 0 { w } else { w + 1 };
        assert_eq!(c.round_rational(&mid), even, "{w:#x}");
    }
}

#[test]
fn exact_values_round_to_themselves() {
    let spec = FormatSpec::bposit(64, 6, 5).unwrap();
    let c = codec(spec);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20_000 {
        let w = rng.gen::<u64>();
        if w == 1 << 63 {
            continue;
        }
        assert_eq!(c.round_exact(&c.value(w)), w);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn f64_inputs_round_like_the_table(x in proptest::num::f64::NORMAL | proptest::num::f64::SUBNORMAL) {
        static TABLE: std::sync::OnceLock<ValueTable> = std::sync::OnceLock::new();
        let table = TABLE.get_or_init(|| ValueTable::new(16, 6, 3));
        let c = codec(FormatSpec::bposit(16, 6, 3).unwrap());
        let q = x.to_rational().unwrap();
        prop_assert_eq!(c.round_scalar(x), table.nearest(&q));
    }

    #[test]
    fn scalar_round_trip_through_64_bits(neg: bool, frac in 0u64..1 << 52, t in -63i32..64) {
        // Every f64 inside the golden zone is exact in <64,6,5>, whose
        // binades there carry at least 54 fraction bits.
        let c = codec(FormatSpec::bposit(64, 6, 5).unwrap());
        let x = f64::from_bits(((neg as u64) << 63) | (((t + 1023) as u64) << 52) | frac);
        let w = c.round_scalar(x);
        prop_assert_eq!(c.to_scalar::<f64>(w), Some(x));
        prop_assert_eq!(c.value(w), ExactValue::from_rational(&x.to_rational().unwrap()).unwrap());
    }
}
