//! Binary fixed-point reals with a few hundred bits of fraction, enough to
//! take logarithms of huge exact counts without cancellation.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::numerics::BigRat;
use crate::Error;

/// Fraction bits.
pub const PRECISION_BITS: u64 = 320;

/// Decimal digits printed by default; well inside the working precision.
pub const DISPLAY_DIGITS: usize = 30;

/// `value = raw / 2^PRECISION_BITS`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Real {
    raw: BigInt,
}

fn ln2() -> &'static Real {
    static LN2: OnceLock<Real> = OnceLock::new();
    LN2.get_or_init(|| atanh(&Real::from_ratio(&BigInt::one(), &BigInt::from(3))).scale_int(2))
}

/// `atanh(z) = z + z^3/3 + z^5/5 + ...` for `|z| <= 1/3`.
fn atanh(z: &Real) -> Real {
    let z2 = z * z;
    let mut power = z.clone();
    let mut acc = z.clone();
    let mut k = 1u64;
    loop {
        power = &power * &z2;
        k += 2;
        let term = Real { raw: &power.raw / BigInt::from(k) };
        if term.raw.is_zero() {
            return acc;
        }
        acc = &acc + &term;
    }
}

impl Real {
    pub fn zero() -> Self {
        Real { raw: BigInt::zero() }
    }

    pub fn from_int(n: &BigInt) -> Self {
        Real { raw: n << PRECISION_BITS }
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_int(&BigInt::from(n))
    }

    /// Rounds toward minus infinity. `den` must be nonzero.
    pub fn from_ratio(num: &BigInt, den: &BigInt) -> Self {
        Real { raw: (num << PRECISION_BITS).div_floor(den) }
    }

    pub fn from_rat(r: &BigRat) -> Self {
        Self::from_ratio(r.numer(), r.denom())
    }

    pub fn from_f64(x: f64) -> Self {
        Self::from_rat(&crate::numerics::rat_from_f64(x))
    }

    pub fn is_positive(&self) -> bool {
        self.raw.is_positive()
    }

    pub fn abs(&self) -> Self {
        Real { raw: self.raw.abs() }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        Real { raw: &self.raw * k }
    }

    pub fn mul_rat(&self, r: &BigRat) -> Self {
        Real { raw: (&self.raw * r.numer()).div_floor(r.denom()) }
    }

    /// Natural logarithm of a positive number.
    pub fn ln(&self) -> Option<Real> {
        ln_scaled(&self.raw, PRECISION_BITS as i64)
    }

    /// Natural logarithm of a positive integer of any size.
    pub fn ln_int(n: &BigInt) -> Option<Real> {
        ln_scaled(n, 0)
    }

    /// Natural logarithm of a positive rational, computed as a difference of
    /// logarithms so both parts keep full relative precision.
    pub fn ln_ratio(num: &BigInt, den: &BigInt) -> Option<Real> {
        Some(&Self::ln_int(num)? - &Self::ln_int(den)?)
    }

    pub fn exp(&self) -> Real {
        // x = k ln 2 + r with |r| <= ln 2 / 2, then exp(r) = exp(r / 2^s)^(2^s)
        const HALVINGS: u32 = 12;
        let l2 = ln2();
        let k = (&(&self.raw << 1u32) + &l2.raw).div_floor(&(&l2.raw << 1u32));
        let r = self - &Real { raw: &l2.raw * &k };
        let small = Real { raw: r.raw >> HALVINGS };
        let mut term = Real::from_i64(1);
        let mut acc = term.clone();
        let mut j = 1i64;
        loop {
            term = Real { raw: (&term * &small).raw / j };
            if term.raw.is_zero() {
                break;
            }
            acc = &acc + &term;
            j += 1;
        }
        for _ in 0..HALVINGS {
            acc = &acc * &acc;
        }
        let k = k.to_i64().expect("exponent in range");
        if k >= 0 {
            Real { raw: acc.raw << k as u64 }
        } else {
            Real { raw: acc.raw >> (-k) as u64 }
        }
    }

    /// `self^(p/q)` for positive `self`.
    pub fn pow_rat(&self, e: &BigRat) -> Option<Real> {
        Some(self.ln()?.mul_rat(e).exp())
    }

    /// Integer part, rounded toward minus infinity.
    pub fn floor(&self) -> BigInt {
        &self.raw >> PRECISION_BITS
    }

    pub fn to_f64(&self) -> f64 {
        let bits = self.raw.bits();
        if bits <= 1000 {
            return self.raw.to_f64().unwrap_or(f64::NAN) * 2f64.powi(-(PRECISION_BITS as i32));
        }
        let shift = bits - 64;
        let top = (&self.raw >> shift).to_f64().unwrap_or(f64::NAN);
        top * 2f64.powi(shift as i32 - PRECISION_BITS as i32)
    }

    /// Fixed-point decimal with `digits` digits after the point, rounded to
    /// nearest.
    pub fn to_decimal(&self, digits: usize) -> String {
        let negative = self.raw.is_negative();
        let scale = BigInt::from(10).pow(digits as u32);
        let half = BigInt::one() << (PRECISION_BITS - 1);
        let scaled: BigInt = (self.raw.abs() * &scale + half) >> PRECISION_BITS;
        let (whole, frac) = scaled.div_rem(&scale);
        let sign = if negative && !scaled.is_zero() { "-" } else { "" };
        if digits == 0 {
            return format!("{sign}{whole}");
        }
        format!("{sign}{whole}.{:0>width$}", frac.to_string(), width = digits)
    }
}

/// `ln(v / 2^scale)` for positive `v`.
fn ln_scaled(v: &BigInt, scale: i64) -> Option<Real> {
    if v.sign() != Sign::Plus {
        return None;
    }
    // mantissa m in [1, 2) with PRECISION_BITS fraction bits, v/2^scale = m 2^e
    let top = v.bits() as i64 - 1;
    let p = PRECISION_BITS as i64;
    let mantissa = if top > p { v >> (top - p) as u64 } else { v << (p - top) as u64 };
    let e = top - scale;
    let m = Real { raw: mantissa };
    let one = Real::from_i64(1);
    let z = &(&m - &one) / &(&m + &one);
    Some(&atanh(&z).scale_int(2) + &ln2().scale_int(e))
}

impl Add for &Real {
    type Output = Real;
    fn add(self, o: &Real) -> Real {
        Real { raw: &self.raw + &o.raw }
    }
}

impl Sub for &Real {
    type Output = Real;
    fn sub(self, o: &Real) -> Real {
        Real { raw: &self.raw - &o.raw }
    }
}

impl Mul for &Real {
    type Output = Real;
    fn mul(self, o: &Real) -> Real {
        Real { raw: (&self.raw * &o.raw) >> PRECISION_BITS }
    }
}

impl Div for &Real {
    type Output = Real;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &Real) -> Real {
        Real { raw: (&self.raw << PRECISION_BITS).div_floor(&o.raw) }
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real { raw: -&self.raw }
    }
}

impl PartialEq<f64> for Real {
    fn eq(&self, other: &f64) -> bool {
        self.to_f64() == *other
    }
}

impl PartialOrd<f64> for Real {
    fn partial_cmp(&self, other: &f64) -> Option<Ordering> {
        self.to_f64().partial_cmp(other)
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal(f.precision().unwrap_or(DISPLAY_DIGITS)))
    }
}

impl Serialize for Real {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_decimal(DISPLAY_DIGITS))
    }
}

/// Plain decimals such as `-12.5` or `3`.
impl FromStr for Real {
    type Err = Error;
    fn from_str(text: &str) -> crate::Result<Self> {
        let bad = || Error::Parse(format!("not a decimal number: {text:?}"));
        let t = text.trim();
        let (negative, body) = match t.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, t),
        };
        let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
        if whole.is_empty() && frac.is_empty() || !(whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())) {
            return Err(bad());
        }
        let digits: BigInt = format!("0{whole}{frac}").parse().map_err(|_| bad())?;
        let r = Real::from_ratio(&digits, &BigInt::from(10).pow(frac.len() as u32));
        Ok(if negative { -&r } else { r })
    }
}

impl<'de> Deserialize<'de> for Real {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}
