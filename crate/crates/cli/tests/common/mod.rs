#![allow(dead_code)]

use bposit::Rational;
use num_bigint::BigInt;

pub fn pow2(k: i64) -> Rational {
    if k >= 0 {
        Rational::from_integer(BigInt::from(1) << k as usize)
    } else {
        Rational::new(BigInt::from(1), BigInt::from(1) << (-k) as usize)
    }
}

/// Decodes a b-posit word by walking its bit string. `None` for NaR.
pub fn oracle_value(n: u32, rs: u32, es: u32, word: u64) -> Option<Rational> {
    let m = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let word = word & m;
    if word == 0 {
        return Some(Rational::from_integer(0.into()));
    }
    if word == 1 << (n - 1) {
        return None;
    }
    let negative = word >> (n - 1) == 1;
    let mag = if negative { word.wrapping_neg() & m } else { word };
    let bits: Vec<u8> = format!("{mag:0w$b}", w = n as usize).bytes().map(|b| b - b'0').collect();
    let body = &bits[1..];
    let lead = body[0];
    let run = body.iter().take(rs as usize).take_while(|&&b| b == lead).count();
    let size = if run < rs as usize { run + 1 } else { run };
    let r = if lead == 1 { run as i64 - 1 } else { -(run as i64) };
    let rest = &body[size.min(body.len())..];
    let mut e = 0i64;
    for i in 0..es as usize {
        e = 2 * e + *rest.get(i).unwrap_or(&0) as i64;
    }
    let frac_bits = rest.get(es as usize..).unwrap_or(&[]);
    let mut f = BigInt::from(0);
    for &b in frac_bits {
        f = f * 2 + b;
    }
    let one = BigInt::from(1) << frac_bits.len();
    let sig = Rational::new(&one + f, one);
    let v = sig * pow2(r * (1i64 << es) + e);
    Some(if negative { -v } else { v })
}
