mod common;

use bposit::{FloatClass, FloatCodec, FormatSpec, Scalar};
use common::{oracle_float, pow2};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn codec(n: u32) -> FloatCodec {
    FloatCodec::new(FormatSpec::ieee(n).unwrap()).unwrap()
}

#[test]
fn binary16_exhaustive_round_trip() {
    let c = codec(16);
    let two = BigRational::from_integer(2.into());
    for w in 0..1u64 << 16 {
        let r = c.decode(w);
        let back = c.encode(&r);
        if r.class == FloatClass::NaN {
            assert_eq!(back, 0x7E00, "{w:#x}");
            continue;
        }
        assert_eq!(back, w, "{w:#x}");
        assert_eq!(r.value().and_then(|v| v.to_rational()), oracle_float(5, 10, w), "{w:#x}");
        if let Some(sig) = r.significand() {
            assert!(sig >= BigRational::one() && sig < two, "{w:#x}");
        }
        let is_sub = (w >> 10) & 0x1F == 0 && w & 0x3FF != 0;
        assert_eq!(r.class == FloatClass::Subnormal, is_sub, "{w:#x}");
    }
}

#[test]
fn binary32_and_64_match_native_floats() {
    let c32 = codec(32);
    let c64 = codec(64);
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for i in 0..1_000_000u32 {
        let w32: u32 = if i % 3 == 0 { rng.gen::<u32>() & 0x807F_FFFF } else { rng.gen() };
        let x = f32::from_bits(w32);
        let r = c32.decode(w32 as u64);
        assert_eq!(r.value().and_then(|v| v.to_rational()), x.to_rational(), "{w32:#x}");
        if !x.is_nan() {
            assert_eq!(c32.encode(&r), w32 as u64, "{w32:#x}");
        }

        let w64: u64 = if i % 3 == 0 { rng.gen::<u64>() & 0x800F_FFFF_FFFF_FFFF } else { rng.gen() };
        let y = f64::from_bits(w64);
        let r = c64.decode(w64);
        assert_eq!(r.value().and_then(|v| v.to_rational()), y.to_rational(), "{w64:#x}");
        if !y.is_nan() {
            assert_eq!(c64.encode(&r), w64, "{w64:#x}");
        }
    }
}

#[test]
fn narrowing_matches_native_casts() {
    let c32 = codec(32);
    let mut rng = ChaCha8Rng::seed_from_u64(64);
    for _ in 0..200_000 {
        let y = f64::from_bits(rng.gen());
        if !y.is_finite() || y == 0.0 {
            continue;
        }
        let w = c32.round_rational(&y.to_rational().unwrap());
        // Rust's `as` cast is round-to-nearest-even with overflow to infinity.
        let expected = (y as f32).to_bits() as u64;
        assert_eq!(w, expected, "{y:e}");
    }
}

#[test]
fn gradual_underflow() {
    // Distinct binary16 values never have a difference that encodes to zero.
    let c = codec(16);
    let value = |w: u64| oracle_float(5, 10, w);
    let diff_is_zero = |a: u64, b: u64| {
        let d = value(a).unwrap() - value(b).unwrap();
        let dw = c.round_rational(&d);
        dw & 0x7FFF == 0
    };
    for w in 0..0x7C00u64 {
        for s in [0, 0x8000] {
            let a = w | s;
            let b = (w + 1) | s;
            if b & 0x7FFF >= 0x7C00 {
                continue;
            }
            assert!(!diff_is_zero(a, b), "{a:#x} - {b:#x}");
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let finite = |rng: &mut ChaCha8Rng| loop {
        let w = rng.gen::<u64>() & 0xFFFF;
        if w & 0x7C00 != 0x7C00 {
            return w;
        }
    };
    for _ in 0..200_000 {
        let (a, b) = (finite(&mut rng), finite(&mut rng));
        let equal = value(a) == value(b);
        assert_eq!(diff_is_zero(a, b), equal, "{a:#x} {b:#x}");
    }
    // The smallest subnormal is the spacing near zero.
    assert_eq!(value(1).unwrap(), pow2(-24));
    assert!(!value(1).unwrap().is_zero());
}
