//! Independent oracles: a string-level decoder written straight from the
//! field definitions, and nearest-value search over a sorted value table.

#![allow(dead_code)]

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub fn pow2(k: i64) -> BigRational {
    let p = BigInt::one() << k.unsigned_abs() as usize;
    if k >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

pub fn rat(s: &str) -> BigRational {
    bposit::parse_decimal(s).unwrap()
}

/// Value of an `N`-bit word with regime cap `rs`; `None` for NaR.
pub fn oracle_value(n: u32, rs: u32, es: u32, word: u64) -> Option<BigRational> {
    let bits: Vec<u8> = format!("{word:0w$b}", w = n as usize).bytes().map(|b| b - b'0').collect();
    if bits.iter().all(|&b| b == 0) {
        return Some(BigRational::zero());
    }
    if bits[0] == 1 && bits[1..].iter().all(|&b| b == 0) {
        return None;
    }
    let s = bits[0] as i64;
    let body = &bits[1..];
    let lead = body[0];
    let k = body.iter().take(rs as usize).take_while(|&&b| b == lead).count();
    let r = if lead == 1 { k as i64 - 1 } else { -(k as i64) };
    let used = if k < rs as usize { k + 1 } else { k };
    let rest = &body[used..];
    let mut e = 0i64;
    for i in 0..es as usize {
        e = 2 * e + *rest.get(i).unwrap_or(&0) as i64;
    }
    let frac_bits = rest.get(es as usize..).unwrap_or(&[]);
    let mut f = BigRational::zero();
    for (i, &b) in frac_bits.iter().enumerate() {
        if b == 1 {
            f += pow2(-(i as i64) - 1);
        }
    }
    let t = (1 - 2 * s) * (r * (1 << es) + e + s);
    let sig = BigRational::from_integer(BigInt::from(1 - 3 * s)) + f;
    Some(sig * pow2(t))
}

/// Value of an IEEE binary word from the textbook formula.
pub fn oracle_float(ew: u32, fw: u32, word: u64) -> Option<BigRational> {
    let sign = (word >> (ew + fw)) & 1;
    let exp = ((word >> fw) & ((1 << ew) - 1)) as i64;
    let frac = (word & ((1 << fw) - 1)) as i64;
    let bias = (1i64 << (ew - 1)) - 1;
    if exp == (1 << ew) - 1 {
        return None;
    }
    let mag = if exp == 0 {
        BigRational::from_integer(frac.into()) * pow2(1 - bias - fw as i64)
    } else {
        BigRational::from_integer(((1i64 << fw) + frac).into()) * pow2(exp - bias - fw as i64)
    };
    Some(if sign == 1 { -mag } else { mag })
}

/// Every real value of a posit-family format, sorted by value.
pub struct ValueTable {
    entries: Vec<(BigRational, u64)>,
}

impl ValueTable {
    pub fn new(n: u32, rs: u32, es: u32) -> Self {
        let mut entries: Vec<(BigRational, u64)> =
            (0..1u64 << n).filter_map(|w| oracle_value(n, rs, es, w).map(|v| (v, w))).collect();
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        Self { entries }
    }

    pub fn values(&self) -> &[(BigRational, u64)] {
        &self.entries
    }

    /// Nearest value, ties to the even word; saturating at ±minpos / ±maxpos.
    pub fn nearest(&self, x: &BigRational) -> u64 {
        if x.is_zero() {
            return 0;
        }
        let zero_at = self.entries.iter().position(|(v, _)| v.is_zero()).unwrap();
        // Candidates exclude Zero: nonzero never rounds to Zero.
        let side: &[(BigRational, u64)] =
            if x.is_positive() { &self.entries[zero_at + 1..] } else { &self.entries[..zero_at] };
        let i = side.partition_point(|(v, _)| v < x);
        if i == 0 {
            return side[0].1;
        }
        if i == side.len() {
            return side[side.len() - 1].1;
        }
        let (lo, hi) = (&side[i - 1], &side[i]);
        if hi.0 == *x {
            return hi.1;
        }
        match (x - &lo.0).cmp(&(&hi.0 - x)) {
            Ordering::Less => lo.1,
            Ordering::Greater => hi.1,
            Ordering::Equal => {
                if lo.1 & 1 == 0 {
                    lo.1
                } else {
                    hi.1
                }
            }
        }
    }
}
