mod common;

use bposit::arith::{add, mul};
use bposit::{BPositCodec, BitPattern, FormatSpec, Quire};
use common::{oracle_value, pow2, ValueTable};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn spec(n: u32, rs: u32, es: u32) -> FormatSpec {
    FormatSpec::bposit(n, rs, es).unwrap()
}

#[test]
fn add_and_mul_are_correctly_rounded_on_all_8_bit_pairs() {
    let s = spec(8, 6, 3);
    let table = ValueTable::new(8, 6, 3);
    let nar = 0x80;
    for a in 0..256u64 {
        for b in 0..256u64 {
            let pa = BitPattern::new(s, a).unwrap();
            let pb = BitPattern::new(s, b).unwrap();
            let sum = add(&pa, &pb).unwrap().bits();
            let prod = mul(&pa, &pb).unwrap().bits();
            match (oracle_value(8, 6, 3, a), oracle_value(8, 6, 3, b)) {
                (Some(x), Some(y)) => {
                    assert_eq!(sum, table.nearest(&(&x + &y)), "{a:#x} + {b:#x}");
                    assert_eq!(prod, table.nearest(&(&x * &y)), "{a:#x} * {b:#x}");
                }
                _ => {
                    assert_eq!(sum, nar);
                    assert_eq!(prod, nar);
                }
            }
        }
    }
}

#[test]
fn quire_examples() {
    let s = spec(16, 6, 5);
    let c = BPositCodec::new(s).unwrap();
    let p = |x: BigRational| BitPattern::new(s, c.round_rational(&x)).unwrap();
    let one = p(pow2(0));
    let q = Quire::new(s)
        .unwrap()
        .accumulate(&p(pow2(100)), &p(pow2(-100)))
        .unwrap()
        .accumulate(&p(pow2(-150)), &p(pow2(150)))
        .unwrap()
        .accumulate(&one, &one)
        .unwrap();
    assert_eq!(c.value(q.read().bits()).to_rational().unwrap(), BigRational::from_integer(3.into()));

    let maxpos = BitPattern::maxpos(s);
    let q = Quire::new(s)
        .unwrap()
        .accumulate(&maxpos, &maxpos)
        .unwrap()
        .accumulate(&maxpos.negate(), &maxpos)
        .unwrap();
    assert!(q.read().is_zero());
    assert!(q.value().is_zero());
}

#[test]
fn minpos_squared_is_held_exactly() {
    let s = spec(16, 6, 5);
    let minpos = BitPattern::minpos(s);
    let q = Quire::new(s).unwrap().accumulate(&minpos, &minpos).unwrap();
    let c = BPositCodec::new(s).unwrap();
    let m = c.value(1).to_rational().unwrap();
    assert_eq!(q.value().to_rational().unwrap(), &m * &m);
    assert_eq!(q.read(), minpos);
}

#[test]
fn worst_case_accumulation_fits() {
    for s in [spec(16, 6, 5), spec(32, 6, 5), spec(64, 6, 5), spec(16, 6, 3)] {
        let maxpos = BitPattern::maxpos(s);
        let q = Quire::new(s).unwrap();
        let up = q.accumulate_repeated(&maxpos, &maxpos, 1 << 31).unwrap();
        assert!(!up.is_nar(), "{s}");
        let down = q.accumulate_repeated(&maxpos.negate(), &maxpos, 1 << 31).unwrap();
        assert!(!down.is_nar(), "{s}");
        // Twice the budget would spill past the carry bits.
        let over = up.accumulate_repeated(&maxpos, &maxpos, 1 << 31).unwrap();
        assert!(over.is_nar(), "{s}");
    }
}

#[test]
fn fused_dot_products_match_exact_sums() {
    let s = spec(16, 6, 5);
    let c = BPositCodec::new(s).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let nar = 1u64 << 15;
    let mut naive_differs = false;
    for _ in 0..100_000 {
        let len = rng.gen_range(1..=16);
        let mut q = Quire::new(s).unwrap();
        let mut exact = BigRational::zero();
        let mut naive = 0u64;
        for _ in 0..len {
            let (a, b) = loop {
                let a = rng.gen::<u64>() & 0xFFFF;
                let b = rng.gen::<u64>() & 0xFFFF;
                if a != nar && b != nar {
                    break (a, b);
                }
            };
            let (pa, pb) = (BitPattern::new(s, a).unwrap(), BitPattern::new(s, b).unwrap());
            q = q.accumulate(&pa, &pb).unwrap();
            let prod = oracle_value(16, 6, 5, a).unwrap() * oracle_value(16, 6, 5, b).unwrap();
            exact += &prod;
            let step = mul(&pa, &pb).unwrap();
            naive = add(&BitPattern::new(s, naive).unwrap(), &step).unwrap().bits();
        }
        let fused = q.read().bits();
        assert_eq!(fused, c.round_rational(&exact));
        naive_differs |= naive != fused;
    }
    assert!(naive_differs);
}

#[test]
fn quire_hex_is_twos_complement() {
    let s = spec(16, 6, 3);
    let one = BitPattern::new(s, 0x4000).unwrap();
    let q = Quire::new(s).unwrap().accumulate(&one.negate(), &one).unwrap();
    let hex = q.to_hex();
    assert_eq!(hex.len() as u32, q.width().div_ceil(4));
    let v = BigInt::parse_bytes(hex.as_bytes(), 16).unwrap();
    let modulus = BigInt::from(1) << q.width() as usize;
    let frac = q.width() - 32 - 2 * (6 << 3);
    assert_eq!(modulus - v, BigInt::from(1) << frac as usize);
}
