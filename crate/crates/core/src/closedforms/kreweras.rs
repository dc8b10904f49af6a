//! Walks with steps West, South and North-East.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::numerics::{binomial, catalan, int, multinomial, rat, BigRat};
use crate::series::{newton_root, positive_part, sqrt_series, LaurentPoly, TSeries, Vars};
use crate::{Error, Result};

/// Number of walks of length `3n + 2i` ending at `(i, 0)`:
/// `4^n (2i+1) / ((n+i+1)(2n+2i+1)) * C(2i,i) * C(3n+2i,n)`.
pub fn kreweras_axis_count(i: i64, n: i64) -> BigInt {
    if i < 0 || n < 0 {
        return BigInt::zero();
    }
    let num = BigInt::from(4).pow(n as u32) * (2 * i + 1) * binomial(2 * i, i) * binomial(3 * n + 2 * i, n);
    let den = BigInt::from((n + i + 1) * (2 * n + 2 * i + 1));
    let (q, r) = num.div_rem(&den);
    assert!(r.is_zero(), "axis count formula is integral");
    q
}

/// Number of walks of length `m` ending at `(i, 0)`, zero unless
/// `m - 2i` is a nonnegative multiple of 3.
pub fn kreweras_axis_count_by_length(i: i64, m: i64) -> BigInt {
    let rest = m - 2 * i;
    if i < 0 || rest < 0 || rest % 3 != 0 {
        BigInt::zero()
    } else {
        kreweras_axis_count(i, rest / 3)
    }
}

/// `X`, `Q(0,0)` and `Q(x,0)`, each known through `t^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KrewerasSolution {
    pub x: TSeries,
    pub q00: TSeries,
    pub qx0: TSeries,
    pub order: i32,
}

/// The series `X = t(2 + X^3)` through `t^order`.
pub fn kreweras_parameter(order: i32) -> Result<TSeries> {
    let wide = order + 4;
    let poly = vec![
        TSeries::monomial(1, LaurentPoly::constant(Vars::X, int(-2)), wide),
        TSeries::one(Vars::X, wide),
        TSeries::zero(Vars::X, wide),
        TSeries::monomial(1, LaurentPoly::constant(Vars::X, int(-1)), wide),
    ];
    newton_root(&poly, &LaurentPoly::zero(Vars::X), order)
}

/// Solves the quadratic equation for `Q(x,0)` through the parameter `X`.
pub fn solve_kreweras(order: i32) -> Result<KrewerasSolution> {
    if order < 1 {
        return Err(Error::InvalidArgument("order must be at least 1".into()));
    }
    // Q(0,0) and [x^i] Q(x,0) divide powers of X by t, losing one order.
    let x = kreweras_parameter(order + 1)?;
    let x3 = x.pow(3)?;
    let quarter = rat(1, 4);
    let inv_2t = |s: &TSeries| s.shift_t(-1).scale(&rat(1, 2));
    let q00 = (&inv_2t(&x) * &(&TSeries::one(Vars::X, order + 1) - &x3.scale(&quarter))).truncate(order);

    let mut qx0 = TSeries::zero(Vars::X, order);
    let mut xpow = x.clone();
    let x2 = x.pow(2)?;
    let mut four_pow = BigRat::one();
    for i in 0..=(order / 2) as i64 {
        // X^{2i+1} / (2 4^i t) * (C_i - C_{i+1} X^3 / 4)
        let ci = BigRat::from_integer(catalan(i)?);
        let ci1 = BigRat::from_integer(catalan(i + 1)?);
        let bracket = &TSeries::from_poly(LaurentPoly::constant(Vars::X, ci), order + 2) - &x3.scale(&(ci1 * &quarter));
        let term = (&inv_2t(&xpow) * &bracket).scale(&four_pow.recip()).truncate(order);
        qx0 = &qx0 + &term.mul_poly(&LaurentPoly::x_pow(i as i32));
        xpow = &xpow * &x2;
        four_pow *= int(4);
    }
    let sol = KrewerasSolution { x, q00, qx0, order };
    sol.check()?;
    Ok(sol)
}

impl KrewerasSolution {
    fn check(&self) -> Result<()> {
        for s in [&self.q00, &self.qx0] {
            for (n, c) in s.iter() {
                if c.terms().any(|(_, v)| !v.is_integer() || v.is_negative()) {
                    return Err(Error::NonIntegral(format!("coefficient of t^{n} is not a walk count: {c}")));
                }
            }
        }
        if !self.qx0.x_section(0).y_section(0).agrees_with(&self.q00) {
            return Err(Error::Contract("[x^0] Q(x,0) differs from Q(0,0)".into()));
        }
        let sq = qx0_from_sqrt_form(&self.x, self.order)?;
        if !sq.agrees_with(&self.qx0) {
            return Err(Error::Contract("coefficientwise Q(x,0) differs from the square-root form".into()));
        }
        Ok(())
    }

    /// Residual of the quadratic equation with the solved series.
    pub fn quadratic_residual(&self) -> TSeries {
        quadratic_equation_residual(&self.qx0, &self.q00)
    }
}

/// `Q(x,0) = 1/(t x) (1/(2t) - 1/x - (1/X - 1/x) sqrt(1 - x X^2))`, from a
/// parameter known through one order more than the result.
pub fn qx0_from_sqrt_form(x_param: &TSeries, order: i32) -> Result<TSeries> {
    let wide = order + 3;
    let xp = x_param.truncate(wide);
    let radicand = &TSeries::one(Vars::X, wide) - &xp.pow(2)?.mul_poly(&LaurentPoly::x_pow(1));
    let root = sqrt_series(&radicand)?;
    let xbar = TSeries::from_poly(LaurentPoly::x_pow(-1), wide);
    let half_inv_t = TSeries::monomial(-1, LaurentPoly::constant(Vars::X, rat(1, 2)), wide);
    let inner = &(&half_inv_t - &xbar) - &(&(&xp.inverse()? - &xbar) * &root);
    let q = inner.shift_t(-1).mul_poly(&LaurentPoly::x_pow(-1));
    if !positive_part(&q)?.agrees_with(&q) {
        return Err(Error::Contract("square-root form leaves negative powers of x".into()));
    }
    Ok(q.truncate(order))
}

/// `t^2 x^2 Q(x,0)^2 + (2t - x) Q(x,0) - 2t Q(0,0) + x`.
pub fn quadratic_equation_residual(qx0: &TSeries, q00: &TSeries) -> TSeries {
    let order = qx0.order().min(q00.order());
    let t = TSeries::t(Vars::X, order + 2);
    let x = TSeries::from_poly(LaurentPoly::x_pow(1), order + 2);
    let q2 = qx0 * qx0;
    let a = q2.shift_t(2).shift_x(2, 0);
    let b = &(&t.scale(&int(2)) - &x) * qx0;
    let c = q00.shift_t(1).scale(&int(2));
    &(&(&a + &b) - &c) + &x
}

/// Walks with `p` West, `q` South and `r` North-East steps, by the two
/// double sums. Returns both values.
pub fn kreweras_full_count(p: i64, q: i64, r: i64) -> Result<(BigInt, BigInt)> {
    if p < 0 || q < 0 || r < 0 || r < p || r < q {
        return Err(Error::InvalidArgument(format!(
            "(p,q,r) = ({p},{q},{r}) does not describe an endpoint in the quadrant"
        )));
    }
    Ok((first_double_sum(p, q, r)?, second_double_sum(p, q, r)))
}

fn first_double_sum(p: i64, q: i64, r: i64) -> Result<BigInt> {
    let mut acc = BigRat::from_integer(multinomial(p, q, r)) * (BigRat::one() - rat(p + q, r + 1));
    for h in 1..=p {
        for k in 1..=q {
            let s = h + k;
            let sign = if s % 2 == 0 { 1 } else { -1 };
            let num = binomial(s, h) * binomial(2 * s - 2, 2 * h - 1) * multinomial(p - h, q - k, r + s) * sign;
            acc += BigRat::new(num, BigInt::from(s * (s - 1)));
        }
    }
    crate::numerics::to_integer(&acc, "first double sum")
}

fn second_double_sum(p: i64, q: i64, r: i64) -> BigInt {
    let mut acc = multinomial(p, q, r);
    let m = p + q + r;
    for i in 0..=m {
        for n in 0..=m {
            if 3 * n + 2 * i + 1 > m {
                break;
            }
            let a = multinomial(p - n, q - n - i - 1, r - n - i);
            let b = multinomial(p - n - i - 1, q - n, r - n - i);
            if a.is_zero() && b.is_zero() {
                continue;
            }
            acc -= kreweras_axis_count(i, n) * (a + b);
        }
    }
    acc
}
