//! Exact integer and rational arithmetic plus the combinatorial
//! coefficients used by the closed-form formulas.
//!
//! Out-of-range arguments evaluate to zero instead of failing, so that
//! formulas containing binomials such as `C(n+1, (n-i)/2)` can be written
//! down directly; see [`binomial_half`] for the half-integer convention.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

pub type BigRat = BigRational;

pub fn rat(n: i64, d: i64) -> BigRat {
    BigRat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(n))
}

/// Returns the integer value of `r`, or an error naming `what` if it is not
/// integral.
pub fn to_integer(r: &BigRat, what: &str) -> Result<BigInt> {
    if r.is_integer() {
        Ok(r.to_integer())
    } else {
        Err(Error::NonIntegral(format!("{what} = {r}")))
    }
}

/// `C(n, k)`, zero when `k < 0`, `k > n` or `n < 0`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for step in 0..k {
        acc *= n - step;
        acc /= step + 1;
    }
    acc
}

/// `C(n, a/2)` where the lower argument is a possibly odd numerator over 2;
/// zero whenever `a` is odd.
pub fn binomial_half(n: i64, a: i64) -> BigInt {
    if a.is_odd() {
        BigInt::zero()
    } else {
        binomial(n, a / 2)
    }
}

/// `(p+q+r)! / (p! q! r!)`, zero if any part is negative.
pub fn multinomial(p: i64, q: i64, r: i64) -> BigInt {
    if p < 0 || q < 0 || r < 0 {
        return BigInt::zero();
    }
    binomial(p + q + r, p) * binomial(q + r, q)
}

pub fn catalan(i: i64) -> Result<BigInt> {
    if i < 0 {
        return Err(Error::InvalidArgument(format!("catalan index {i} is negative")));
    }
    Ok(binomial(2 * i, i) / (i + 1))
}

/// Memoized factorials `0!..=bound!` for repeated coefficient evaluation.
#[derive(Debug, Clone)]
pub struct FactorialTable {
    facts: Vec<BigInt>,
}

impl FactorialTable {
    pub fn new(bound: usize) -> Self {
        let mut facts = Vec::with_capacity(bound + 1);
        facts.push(BigInt::one());
        for k in 1..=bound {
            let next = &facts[k - 1] * k;
            facts.push(next);
        }
        Self { facts }
    }

    pub fn bound(&self) -> usize {
        self.facts.len() - 1
    }

    /// `n!`; panics if `n` exceeds the table bound.
    pub fn factorial(&self, n: usize) -> &BigInt {
        &self.facts[n]
    }

    pub fn binomial(&self, n: i64, k: i64) -> BigInt {
        if n < 0 || k < 0 || k > n {
            return BigInt::zero();
        }
        if n as usize > self.bound() {
            return binomial(n, k);
        }
        let (n, k) = (n as usize, k as usize);
        &self.facts[n] / (&self.facts[k] * &self.facts[n - k])
    }

    pub fn multinomial(&self, p: i64, q: i64, r: i64) -> BigInt {
        if p < 0 || q < 0 || r < 0 {
            return BigInt::zero();
        }
        let total = (p + q + r) as usize;
        if total > self.bound() {
            return multinomial(p, q, r);
        }
        &self.facts[total]
            / (&self.facts[p as usize] * &self.facts[q as usize] * &self.facts[r as usize])
    }
}

/// Natural logarithm of a positive big integer, accurate to f64 precision
/// relative to the result even when the integer overflows f64.
pub fn ln_bigint(n: &BigInt) -> f64 {
    assert!(n.is_positive(), "ln of non-positive integer");
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().expect("fits in f64").ln();
    }
    let shift = bits - 64;
    let top: BigInt = n >> shift;
    top.to_f64().expect("64-bit mantissa").ln() + (shift as f64) * std::f64::consts::LN_2
}

/// Converts a rational of any size to the nearest f64, saturating only when
/// the value itself is outside the f64 range.
pub fn rat_to_f64(r: &BigRat) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let sign = if r.is_negative() { -1.0 } else { 1.0 };
    let num = r.numer().abs();
    let den = r.denom().clone();
    // Scale so the quotient carries 64 significant bits.
    let shift = num.bits() as i64 - den.bits() as i64 - 64;
    let q = if shift >= 0 {
        &num / (&den << (shift as u64))
    } else {
        (&num << ((-shift) as u64)) / &den
    };
    let mant = q.to_f64().expect("bounded mantissa");
    sign * mant * 2f64.powi(shift.clamp(i32::MIN as i64, i32::MAX as i64) as i32)
}

/// Natural logarithm of a positive rational without intermediate overflow.
pub fn ln_rat(r: &BigRat) -> f64 {
    assert!(r.is_positive(), "ln of non-positive rational");
    let approx = rat_to_f64(r);
    if approx.is_finite() && approx > 1e-300 {
        return approx.ln();
    }
    ln_bigint(r.numer()) - ln_bigint(r.denom())
}

/// Exact conversion of a finite f64 into a rational.
pub fn rat_from_f64(x: f64) -> BigRat {
    BigRat::from_float(x).expect("finite float")
}
