//! Laurent series in `t`, truncated at an explicit guaranteed order, with
//! Laurent-polynomial coefficients in the auxiliary variables.

use std::ops::{Add, Mul, Neg, Sub};

use super::laurent::{LaurentPoly, Vars};
use crate::numerics::BigRat;
use crate::{Error, Result};

/// `sum_{n=val}^{order} c_n t^n + O(t^{order+1})`.
///
/// Invariants: `coeffs.len() == order - val + 1`; when nonempty the first
/// coefficient is nonzero, so `val` is the true valuation. The zero series
/// has `val == order + 1` and no coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TSeries {
    vars: Vars,
    val: i32,
    coeffs: Vec<LaurentPoly>,
    order: i32,
}

impl TSeries {
    pub fn zero(vars: Vars, order: i32) -> Self {
        Self { vars, val: order + 1, coeffs: Vec::new(), order }
    }

    pub fn one(vars: Vars, order: i32) -> Self {
        Self::from_poly(LaurentPoly::one(vars), order)
    }

    /// The constant (in `t`) series `p + O(t^{order+1})`.
    pub fn from_poly(p: LaurentPoly, order: i32) -> Self {
        Self::monomial(0, p, order)
    }

    /// `p * t^n + O(t^{order+1})`.
    pub fn monomial(n: i32, p: LaurentPoly, order: i32) -> Self {
        let vars = p.vars();
        Self::from_coeffs(vars, n, vec![p], order)
    }

    /// The series `t` itself.
    pub fn t(vars: Vars, order: i32) -> Self {
        Self::monomial(1, LaurentPoly::one(vars), order)
    }

    /// Builds from coefficients of `t^start, t^{start+1}, ...`; entries past
    /// `order` are dropped and missing ones are zero.
    pub fn from_coeffs(vars: Vars, start: i32, coeffs: Vec<LaurentPoly>, order: i32) -> Self {
        let mut s = Self::zero(vars, order);
        if order < start {
            return s;
        }
        let len = (order - start + 1) as usize;
        let mut cs: Vec<LaurentPoly> = coeffs.into_iter().take(len).map(|c| c.with_vars_lenient(vars)).collect();
        cs.resize(len, LaurentPoly::zero(vars));
        s.val = start;
        s.coeffs = cs;
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.val += lead as i32;
        }
        if self.coeffs.is_empty() {
            self.val = self.order + 1;
        }
    }

    pub fn vars(&self) -> Vars {
        self.vars
    }

    /// Largest `n` such that the coefficient of `t^n` is known.
    pub fn order(&self) -> i32 {
        self.order
    }

    /// True valuation, or `order + 1` for a series known to vanish.
    pub fn valuation(&self) -> i32 {
        self.val
    }

    /// Zero through the guaranteed order.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `t^n` as a Laurent polynomial.
    pub fn coeff_poly(&self, n: i32) -> Result<LaurentPoly> {
        if n > self.order {
            return Err(Error::Truncation { requested: n, order: self.order });
        }
        Ok(self.coeff_ref(n).cloned().unwrap_or_else(|| LaurentPoly::zero(self.vars)))
    }

    pub(crate) fn coeff_ref(&self, n: i32) -> Option<&LaurentPoly> {
        if n < self.val || n > self.order {
            None
        } else {
            self.coeffs.get((n - self.val) as usize)
        }
    }

    /// Exact coefficient of `x^i y^j t^n`.
    pub fn coeff(&self, n: i32, exp: (i32, i32)) -> Result<BigRat> {
        Ok(self.coeff_poly(n)?.coeff(exp))
    }

    /// Nonzero coefficients as `(n, c_n)`.
    pub fn iter(&self) -> impl Iterator<Item = (i32, &LaurentPoly)> {
        let v = self.val;
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(k, c)| (v + k as i32, c))
    }

    /// Lowers the guaranteed order; never raises it.
    pub fn truncate(&self, order: i32) -> Self {
        if order >= self.order {
            return self.clone();
        }
        let keep = (order - self.val + 1).max(0) as usize;
        let mut s = Self { vars: self.vars, val: self.val, coeffs: self.coeffs[..keep.min(self.coeffs.len())].to_vec(), order };
        s.normalize();
        s
    }

    /// Applies `f` to every coefficient, keeping the order.
    pub fn map_coeffs(&self, vars: Vars, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        Self::from_coeffs(vars, self.val, self.coeffs.iter().map(f).collect(), self.order)
    }

    pub fn scale(&self, c: &BigRat) -> Self {
        self.map_coeffs(self.vars, |p| p.scale(c))
    }

    /// Multiplies every coefficient by a `t`-free Laurent polynomial.
    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        self.map_coeffs(self.vars.join(p.vars()), |c| c * p)
    }

    /// Multiplies by `t^k`.
    pub fn shift_t(&self, k: i32) -> Self {
        Self { vars: self.vars, val: self.val + k, coeffs: self.coeffs.clone(), order: self.order + k }
    }

    /// Multiplies by `x^di y^dj`.
    pub fn shift_x(&self, di: i32, dj: i32) -> Self {
        self.map_coeffs(self.vars, |c| c.shift(di, dj))
    }

    /// The substitution `x -> 1/x` applied to each coefficient.
    pub fn mirror_x(&self) -> Self {
        self.map_coeffs(self.vars, LaurentPoly::mirror_x)
    }

    pub fn swap_xy(&self) -> Self {
        self.map_coeffs(Vars::XY, LaurentPoly::swap_xy)
    }

    /// Coefficient of `y^j` of a bivariate series, as a series in `x`.
    pub fn y_section(&self, j: i32) -> Self {
        self.map_coeffs(Vars::X, |c| c.y_section(j))
    }

    /// Terms with x-exponent `i`, as a bivariate series in `y`.
    pub fn x_section(&self, i: i32) -> Self {
        self.map_coeffs(Vars::XY, |c| c.x_section(i))
    }

    pub fn with_vars(&self, vars: Vars) -> Self {
        self.map_coeffs(vars, |c| c.clone().with_vars(vars))
    }

    /// Inverse of a series whose leading coefficient is a Laurent monomial.
    /// A series of valuation `v` known through `N` has an inverse known
    /// through `N - 2v`.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::NotInvertible("series vanishes through its guaranteed order".into()));
        }
        let lead_inv = self.coeffs[0].inverse()?;
        let v = self.val;
        let rel = (self.order - v) as usize;
        let mut out: Vec<LaurentPoly> = Vec::with_capacity(rel + 1);
        out.push(lead_inv.clone());
        for k in 1..=rel {
            let mut acc = LaurentPoly::zero(self.vars);
            for l in 1..=k {
                let a = &self.coeffs[l];
                if a.is_zero() || out[k - l].is_zero() {
                    continue;
                }
                acc = &acc + &(a * &out[k - l]);
            }
            out.push(-&(&acc * &lead_inv));
        }
        Ok(Self::from_coeffs(self.vars, -v, out, self.order - 2 * v))
    }

    /// Same coefficients, with the unknown range through `order` declared
    /// zero. Only for iterative solvers that certify the result afterwards.
    pub(crate) fn assume_known_through(&self, order: i32) -> Self {
        if order <= self.order {
            return self.truncate(order);
        }
        Self::from_coeffs(self.vars, self.val.min(self.order + 1), self.coeffs.clone(), order)
    }

    pub fn checked_div(&self, rhs: &TSeries) -> Result<Self> {
        Ok(self * &rhs.inverse()?)
    }

    /// Integer power; negative exponents go through [`TSeries::inverse`].
    pub fn pow(&self, k: i32) -> Result<Self> {
        if k < 0 {
            return self.inverse()?.pow(-k);
        }
        if k == 0 {
            return Ok(Self::one(self.vars, (self.order - self.val).max(0)));
        }
        let mut result: Option<TSeries> = None;
        let mut base = self.clone();
        let mut e = k as u32;
        while e > 0 {
            if e & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => &r * &base,
                });
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(result.expect("k > 0"))
    }

    /// Equality of two series through the smaller guaranteed order.
    pub fn agrees_with(&self, other: &TSeries) -> bool {
        let order = self.order.min(other.order);
        let lo = self.val.min(other.val);
        (lo..=order).all(|n| {
            let zero = LaurentPoly::zero(self.vars);
            let a = self.coeff_ref(n).unwrap_or(&zero);
            let b = other.coeff_ref(n).unwrap_or(&zero);
            a.terms().eq(b.terms())
        })
    }

    /// Evaluates the polynomial `sum_k coeffs[k] * u^k` at `u = self`.
    pub fn eval_poly_in(&self, coeffs: &[TSeries]) -> TSeries {
        let mut acc: Option<TSeries> = None;
        for c in coeffs.iter().rev() {
            acc = Some(match acc {
                None => c.clone(),
                Some(a) => &(&a * self) + c,
            });
        }
        acc.unwrap_or_else(|| TSeries::zero(self.vars, self.order))
    }

    /// Largest absolute `x`-exponent among nonzero coefficients of `t^n`.
    pub fn x_span_at(&self, n: i32) -> Option<(i32, i32)> {
        self.coeff_ref(n).and_then(|c| c.bounds()).map(|b| (b.x_min, b.x_max))
    }
}

impl LaurentPoly {
    /// Like `with_vars`, but promoting only; used when assembling series.
    pub(crate) fn with_vars_lenient(self, vars: Vars) -> Self {
        if self.vars() == vars {
            self
        } else {
            self.with_vars(vars)
        }
    }
}

fn combine(a: &TSeries, b: &TSeries, negate_b: bool) -> TSeries {
    let vars = a.vars.join(b.vars);
    let order = a.order.min(b.order);
    let lo = a.val.min(b.val);
    if lo > order {
        return TSeries::zero(vars, order);
    }
    let coeffs = (lo..=order)
        .map(|n| match (a.coeff_ref(n), b.coeff_ref(n)) {
            (Some(x), Some(y)) => {
                if negate_b {
                    x - y
                } else {
                    x + y
                }
            }
            (Some(x), None) => x.clone().with_vars_lenient(vars),
            (None, Some(y)) => {
                if negate_b {
                    (-y).with_vars_lenient(vars)
                } else {
                    y.clone().with_vars_lenient(vars)
                }
            }
            (None, None) => LaurentPoly::zero(vars),
        })
        .collect();
    TSeries::from_coeffs(vars, lo, coeffs, order)
}

impl Add for &TSeries {
    type Output = TSeries;
    fn add(self, rhs: &TSeries) -> TSeries {
        combine(self, rhs, false)
    }
}

impl Sub for &TSeries {
    type Output = TSeries;
    fn sub(self, rhs: &TSeries) -> TSeries {
        combine(self, rhs, true)
    }
}

impl Neg for &TSeries {
    type Output = TSeries;
    fn neg(self) -> TSeries {
        self.map_coeffs(self.vars, |c| -c)
    }
}

impl Mul for &TSeries {
    type Output = TSeries;
    /// Known through `min(N_a + v_b, N_b + v_a)`.
    fn mul(self, rhs: &TSeries) -> TSeries {
        let vars = self.vars.join(rhs.vars);
        let order = (self.order.saturating_add(rhs.val)).min(rhs.order.saturating_add(self.val));
        if self.is_zero() || rhs.is_zero() {
            return TSeries::zero(vars, order);
        }
        let lo = self.val + rhs.val;
        if lo > order {
            return TSeries::zero(vars, order);
        }
        let len = (order - lo + 1) as usize;
        let mut out = vec![LaurentPoly::zero(vars); len];
        for (ka, ca) in self.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            if ka >= len {
                break;
            }
            for (kb, cb) in rhs.coeffs.iter().enumerate().take(len - ka) {
                if cb.is_zero() {
                    continue;
                }
                let prod = ca * cb;
                let slot = &mut out[ka + kb];
                *slot = &*slot + &prod;
            }
        }
        TSeries::from_coeffs(vars, lo, out, order)
    }
}

impl Add for TSeries {
    type Output = TSeries;
    fn add(self, rhs: TSeries) -> TSeries {
        &self + &rhs
    }
}

impl Sub for TSeries {
    type Output = TSeries;
    fn sub(self, rhs: TSeries) -> TSeries {
        &self - &rhs
    }
}

impl Mul for TSeries {
    type Output = TSeries;
    fn mul(self, rhs: TSeries) -> TSeries {
        &self * &rhs
    }
}

impl Neg for TSeries {
    type Output = TSeries;
    fn neg(self) -> TSeries {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::int;

    fn tpoly(coeffs: &[i64], order: i32) -> TSeries {
        TSeries::from_coeffs(
            Vars::X,
            0,
            coeffs.iter().map(|&c| LaurentPoly::constant(Vars::X, int(c))).collect(),
            order,
        )
    }

    #[test]
    fn addition_cancels() {
        let a = tpoly(&[0, 1, 1], 5);
        let b = tpoly(&[0, -1], 5);
        let sum = &a + &b;
        assert_eq!(sum.valuation(), 2);
        assert_eq!(sum.coeff(2, (0, 0)).unwrap(), int(1));
        assert_eq!(sum.order(), 5);
    }

    #[test]
    fn product_order_bookkeeping() {
        let t = TSeries::t(Vars::X, 6);
        let tt = &t * &t;
        assert_eq!(tt.valuation(), 2);
        assert_eq!(tt.order(), 7);
        assert_eq!(tt.coeff(2, (0, 0)).unwrap(), int(1));
        let inv = t.inverse().unwrap();
        assert_eq!(inv.valuation(), -1);
        assert_eq!(inv.order(), 4);
        let one = &inv * &t;
        assert!(one.coeff_poly(0).unwrap().is_one());
        assert!(one.iter().count() == 1);
    }

    #[test]
    fn coefficient_beyond_order_is_an_error() {
        let s = TSeries::one(Vars::X, 3);
        assert_eq!(s.coeff(0, (0, 0)).unwrap(), int(1));
        assert_eq!(s.coeff(4, (0, 0)), Err(Error::Truncation { requested: 4, order: 3 }));
        let tx = TSeries::monomial(1, LaurentPoly::x_pow(1), 3);
        assert_eq!(tx.coeff(1, (1, 0)).unwrap(), int(1));
    }

    #[test]
    fn inverse_of_geometric() {
        // 1/(1 - t) = 1 + t + t^2 + ...
        let s = tpoly(&[1, -1], 8);
        let inv = s.inverse().unwrap();
        for n in 0..=8 {
            assert_eq!(inv.coeff(n, (0, 0)).unwrap(), int(1));
        }
        assert!((&(&inv * &s) - &TSeries::one(Vars::X, 8)).is_zero());
    }

    #[test]
    fn powers() {
        let s = tpoly(&[1, 1], 6);
        let cube = s.pow(3).unwrap();
        assert_eq!(cube.coeff(2, (0, 0)).unwrap(), int(3));
        assert_eq!(cube.coeff(4, (0, 0)).unwrap(), int(0));
        let inv2 = s.pow(-2).unwrap();
        assert!((&(&inv2 * &(&s * &s)) - &TSeries::one(Vars::X, 6)).is_zero());
    }
}
