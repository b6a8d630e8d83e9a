//! Exact values and the rational helpers the oracles are built on.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Class {
    Zero,
    NaR,
    Real,
}

/// An exact dyadic value `±significand · 2^scale`.
///
/// Kept canonical: the significand of a real value is odd, and Zero and NaR
/// carry a zero significand and scale. Structural equality is therefore
/// value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactValue {
    class: Class,
    negative: bool,
    significand: BigUint,
    scale: i64,
}

impl ExactValue {
    pub fn zero() -> Self {
        Self { class: Class::Zero, negative: false, significand: BigUint::zero(), scale: 0 }
    }

    pub fn nar() -> Self {
        Self { class: Class::NaR, negative: false, significand: BigUint::zero(), scale: 0 }
    }

    pub fn one() -> Self {
        Self::from_parts(false, BigUint::one(), 0)
    }

    /// `±significand · 2^scale`, canonicalised. A zero significand gives Zero.
    pub fn from_parts(negative: bool, significand: BigUint, scale: i64) -> Self {
        if significand.is_zero() {
            return Self::zero();
        }
        let tz = significand.trailing_zeros().unwrap_or(0);
        Self { class: Class::Real, negative, significand: significand >> tz, scale: scale + tz as i64 }
    }

    pub fn from_bigint(value: &BigInt, scale: i64) -> Self {
        Self::from_parts(value.sign() == Sign::Minus, value.magnitude().clone(), scale)
    }

    pub fn from_i64(value: i64) -> Self {
        Self::from_bigint(&BigInt::from(value), 0)
    }

    pub fn pow2(k: i64) -> Self {
        Self::from_parts(false, BigUint::one(), k)
    }

    /// Converts a rational whose denominator is a power of two.
    pub fn from_rational(x: &BigRational) -> Option<Self> {
        let den = x.denom().magnitude();
        let tz = den.trailing_zeros()?;
        if (den >> tz) != BigUint::one() {
            return None;
        }
        Some(Self::from_bigint(x.numer(), -(tz as i64)))
    }

    pub fn class(&self) -> Class {
        self.class
    }

    pub fn is_zero(&self) -> bool {
        self.class == Class::Zero
    }

    pub fn is_nar(&self) -> bool {
        self.class == Class::NaR
    }

    pub fn is_real(&self) -> bool {
        self.class == Class::Real
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn significand(&self) -> &BigUint {
        &self.significand
    }

    pub fn scale(&self) -> i64 {
        self.scale
    }

    pub fn abs(&self) -> Self {
        Self { negative: false, ..self.clone() }
    }

    /// `floor(log2 |x|)` for real values.
    pub fn floor_log2(&self) -> Option<i64> {
        self.is_real().then(|| self.scale + self.significand.bits() as i64 - 1)
    }

    /// Signed significand as a `BigInt` aligned to `2^scale`.
    fn signed_at(&self, scale: i64) -> BigInt {
        debug_assert!(scale <= self.scale);
        let m = BigInt::from_biguint(
            if self.negative { Sign::Minus } else { Sign::Plus },
            self.significand.clone(),
        );
        m << (self.scale - scale) as usize
    }

    /// Compares two non-NaR values; `None` if either is NaR.
    pub fn cmp_value(&self, other: &Self) -> Option<Ordering> {
        if self.is_nar() || other.is_nar() {
            return None;
        }
        let key = |v: &Self| match v.class {
            Class::Zero => 0,
            _ if v.negative => -1,
            _ => 1,
        };
        match key(self).cmp(&key(other)) {
            Ordering::Equal if self.is_real() => {
                let s = self.scale.min(other.scale);
                Some(self.signed_at(s).cmp(&other.signed_at(s)))
            }
            ord => Some(ord),
        }
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        match self.class {
            Class::NaR => None,
            Class::Zero => Some(BigRational::zero()),
            Class::Real => {
                let m = self.signed_at(self.scale);
                Some(BigRational::from_integer(m) * pow2_rational(self.scale))
            }
        }
    }

    /// Nearest `f64`, for reporting only.
    pub fn to_f64(&self) -> f64 {
        match self.to_rational() {
            None => f64::NAN,
            Some(q) => rational_to_f64(&q),
        }
    }

    /// Exact `±m·2^k` rendering used in logs and golden files.
    pub fn to_exact_string(&self) -> String {
        match self.class {
            Class::Zero => "0".to_string(),
            Class::NaR => "NaR".to_string(),
            Class::Real => {
                format!("{}{}·2^{}", if self.negative { "-" } else { "+" }, self.significand, self.scale)
            }
        }
    }

    /// Decimal scientific notation with `digits` significant digits,
    /// rounded half-to-even, e.g. `1.4657003e-52`.
    pub fn to_sci(&self, digits: u32) -> String {
        match self.to_rational() {
            None => "NaR".to_string(),
            Some(q) => rational_to_sci(&q, digits),
        }
    }
}

impl Neg for &ExactValue {
    type Output = ExactValue;

    fn neg(self) -> ExactValue {
        match self.class {
            Class::Real => ExactValue { negative: !self.negative, ..self.clone() },
            _ => self.clone(),
        }
    }
}

impl Neg for ExactValue {
    type Output = ExactValue;

    fn neg(self) -> ExactValue {
        -&self
    }
}

impl Add for &ExactValue {
    type Output = ExactValue;

    fn add(self, rhs: &ExactValue) -> ExactValue {
        match (self.class, rhs.class) {
            (Class::NaR, _) | (_, Class::NaR) => ExactValue::nar(),
            (Class::Zero, _) => rhs.clone(),
            (_, Class::Zero) => self.clone(),
            _ => {
                let s = self.scale.min(rhs.scale);
                ExactValue::from_bigint(&(self.signed_at(s) + rhs.signed_at(s)), s)
            }
        }
    }
}

impl Add for ExactValue {
    type Output = ExactValue;

    fn add(self, rhs: ExactValue) -> ExactValue {
        &self + &rhs
    }
}

impl Mul for &ExactValue {
    type Output = ExactValue;

    fn mul(self, rhs: &ExactValue) -> ExactValue {
        match (self.class, rhs.class) {
            (Class::NaR, _) | (_, Class::NaR) => ExactValue::nar(),
            (Class::Zero, _) | (_, Class::Zero) => ExactValue::zero(),
            _ => ExactValue::from_parts(
                self.negative != rhs.negative,
                &self.significand * &rhs.significand,
                self.scale + rhs.scale,
            ),
        }
    }
}

impl Mul for ExactValue {
    type Output = ExactValue;

    fn mul(self, rhs: ExactValue) -> ExactValue {
        &self * &rhs
    }
}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_exact_string())
    }
}

/// `2^k` as a rational.
pub fn pow2_rational(k: i64) -> BigRational {
    let p = BigInt::one() << k.unsigned_abs() as usize;
    if k >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

/// `floor(log2 |x|)` for nonzero `x`.
pub fn floor_log2_rational(x: &BigRational) -> i64 {
    assert!(!x.is_zero(), "log2 of zero");
    let num = x.numer().magnitude();
    let den = x.denom().magnitude();
    let guess = num.bits() as i64 - den.bits() as i64;
    // 2^guess lies within a factor of two of |x|; adjust down if it overshoots.
    let lhs = num.clone() << (-guess).max(0) as usize;
    let rhs = den.clone() << guess.max(0) as usize;
    if lhs < rhs {
        guess - 1
    } else {
        guess
    }
}

/// Nearest integer, ties to even.
pub fn round_half_even(x: &BigRational) -> BigInt {
    let (q, r) = x.numer().div_mod_floor(x.denom());
    let twice = r * 2u32;
    match twice.cmp(x.denom()) {
        Ordering::Less => q,
        Ordering::Greater => q + 1,
        Ordering::Equal if q.is_even() => q,
        Ordering::Equal => q + 1,
    }
}

/// Close approximation of a rational as `f64` (within one ulp).
pub fn rational_to_f64(x: &BigRational) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let t = floor_log2_rational(x);
    let scaled = (x * pow2_rational(62 - t)).to_integer();
    let m = scaled.to_f64().unwrap_or(f64::NAN);
    scale_f64(m, t - 62)
}

fn scale_f64(mut m: f64, mut k: i64) -> f64 {
    while k > 0 {
        let step = k.min(512);
        m *= 2f64.powi(step as i32);
        k -= step;
    }
    while k < 0 {
        let step = (-k).min(512);
        m /= 2f64.powi(step as i32);
        k += step;
    }
    m
}

/// Scientific notation with `digits` significant digits, ties to even.
pub fn rational_to_sci(x: &BigRational, digits: u32) -> String {
    let digits = digits.max(1);
    if x.is_zero() {
        return "0".to_string();
    }
    let neg = x.is_negative();
    let ax = x.abs();
    // log10(2) estimate is off by at most one decade; the loop settles it.
    let mut e10 = (floor_log2_rational(&ax) as f64 * std::f64::consts::LOG10_2).floor() as i64;
    let lo = BigInt::from(10u32).pow(digits - 1);
    let hi = BigInt::from(10u32).pow(digits);
    let m = loop {
        let m = round_half_even(&(&ax * pow10_rational(digits as i64 - 1 - e10)));
        if m >= hi {
            e10 += 1;
        } else if m < lo {
            e10 -= 1;
        } else {
            break m;
        }
    };
    let s = m.to_string();
    let (head, tail) = s.split_at(1);
    let sign = if neg { "-" } else { "" };
    if tail.is_empty() {
        format!("{sign}{head}e{e10}")
    } else {
        format!("{sign}{head}.{tail}e{e10}")
    }
}

fn pow10_rational(k: i64) -> BigRational {
    let p = BigInt::from(10u32).pow(k.unsigned_abs() as u32);
    if k >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

/// Parses a decimal literal (`-3.25`, `1.4657e-52`, `42`) or a fraction
/// (`355/113`) into an exact rational.
pub fn parse_decimal(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a decimal number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n = parse_decimal(n)?;
        let d = parse_decimal(d)?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(n / d);
    }
    let (neg, body) = match s.as_bytes().first() {
        Some(b'-') => (true, &s[1..]),
        Some(b'+') => (false, &s[1..]),
        _ => (false, s),
    };
    let (mantissa, exp) = match body.find(['e', 'E']) {
        Some(i) => (&body[..i], body[i + 1..].parse::<i64>().map_err(|_| bad())?),
        None => (body, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("0{int_part}{frac_part}").parse().map_err(|_| bad())?;
    let q = BigRational::from_integer(digits) * pow10_rational(exp - frac_part.len() as i64);
    Ok(if neg { -q } else { q })
}
