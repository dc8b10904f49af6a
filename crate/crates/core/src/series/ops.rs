//! Positive-part extraction, square roots, Newton root-finding and
//! substitution of a series for `x`.

use num_traits::Zero;
use num_integer::Integer;

use super::laurent::{LaurentPoly, Vars};
use super::tseries::TSeries;
use crate::{Error, Result};

fn require_univariate(s: &TSeries) -> Result<()> {
    if s.vars() != Vars::X {
        return Err(Error::Bivariate);
    }
    Ok(())
}

/// Keeps the monomials `x^i` with `i >= 0`. The exponent 0 is part of the
/// positive part.
pub fn positive_part(s: &TSeries) -> Result<TSeries> {
    require_univariate(s)?;
    Ok(s.map_coeffs(Vars::X, |c| c.filter_x(|i| i >= 0)))
}

/// Keeps the monomials `x^i` with `i < 0`; the complement of
/// [`positive_part`].
pub fn negative_part(s: &TSeries) -> Result<TSeries> {
    require_univariate(s)?;
    Ok(s.map_coeffs(Vars::X, |c| c.filter_x(|i| i < 0)))
}

/// Exponent-0 part of a series whose coefficients are polynomials in `1/x`.
pub fn constant_term_xbar(s: &TSeries) -> Result<TSeries> {
    require_univariate(s)?;
    for (n, c) in s.iter() {
        if let Some(b) = c.bounds() {
            if b.x_max > 0 {
                return Err(Error::Contract(format!(
                    "coefficient of t^{n} has the positive x-exponent {}",
                    b.x_max
                )));
            }
        }
    }
    Ok(s.map_coeffs(Vars::X, |c| c.filter_x(|i| i == 0)))
}

/// Square root of a series with constant term 1, known through the same
/// order as its input.
pub fn sqrt_series(s: &TSeries) -> Result<TSeries> {
    let unit = s.valuation() == 0 && s.coeff_poly(0).map(|c| c.is_one()).unwrap_or(false);
    if !unit {
        return Err(Error::NotInvertible("square root needs constant term 1".into()));
    }
    let vars = s.vars();
    let order = s.order();
    let half = num_rational::BigRational::new(1.into(), 2.into());
    let mut r: Vec<LaurentPoly> = vec![LaurentPoly::one(vars)];
    for n in 1..=order as usize {
        let mut acc = s.coeff_poly(n as i32)?;
        for k in 1..n {
            if r[k].is_zero() || r[n - k].is_zero() {
                continue;
            }
            acc = &acc - &(&r[k] * &r[n - k]);
        }
        r.push(acc.scale(&half));
    }
    Ok(TSeries::from_coeffs(vars, 0, r, order))
}

/// The unique series root `u = u0 + O(t)` of `sum_k poly[k] * u^k`,
/// computed by Newton iteration with doubling precision and known through
/// `order`.
pub fn newton_root(poly: &[TSeries], u0: &LaurentPoly, order: i32) -> Result<TSeries> {
    if poly.is_empty() {
        return Err(Error::Newton("empty polynomial".into()));
    }
    let vars = poly.iter().fold(u0.vars(), |v, c| v.join(c.vars()));
    for (k, c) in poly.iter().enumerate() {
        if c.valuation() < 0 {
            return Err(Error::Newton(format!("coefficient of u^{k} has negative valuation")));
        }
        if c.order() < order {
            return Err(Error::OrderLoss(format!(
                "coefficient of u^{k} is only known through t^{} < t^{order}",
                c.order()
            )));
        }
    }
    // Conditions at t = 0.
    let at0: Vec<LaurentPoly> = poly.iter().map(|c| c.coeff_poly(0)).collect::<Result<_>>()?;
    let mut value = LaurentPoly::zero(vars);
    let mut deriv = LaurentPoly::zero(vars);
    let mut power = LaurentPoly::one(vars);
    for (k, c) in at0.iter().enumerate() {
        value = &value + &(c * &power);
        if k + 1 < at0.len() {
            let next_power = &power * u0;
            deriv = &deriv + &(&at0[k + 1] * &power).scale(&crate::numerics::int(k as i64 + 1));
            power = next_power;
        }
    }
    if !value.is_zero() {
        return Err(Error::Newton(format!("P(u0) = {value} does not vanish at t = 0")));
    }
    if deriv.inverse().is_err() {
        return Err(Error::Newton(format!("P'(u0) = {deriv} is not a unit at t = 0 (non-simple root)")));
    }
    let derivative: Vec<TSeries> = poly
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c.scale(&crate::numerics::int(k as i64)))
        .collect();

    let mut u = TSeries::from_poly(u0.clone().with_vars_lenient(vars), 0);
    let mut prec = 1;
    while prec <= order {
        let next = (2 * prec).min(order + 1);
        let target = next - 1;
        // Claim the current approximation through `target`; Newton's step
        // makes the claim true.
        let guess = u.assume_known_through(target);
        let cs: Vec<TSeries> = poly.iter().map(|c| c.truncate(target)).collect();
        let ds: Vec<TSeries> = derivative.iter().map(|c| c.truncate(target)).collect();
        let p_val = guess.eval_poly_in(&cs);
        let d_val = guess.eval_poly_in(&ds);
        let step = &p_val * &d_val.inverse()?;
        u = (&guess - &step).truncate(target);
        prec = next;
    }
    let u = u.assume_known_through(order);
    let residual = u.eval_poly_in(&poly.iter().map(|c| c.truncate(order)).collect::<Vec<_>>());
    if !residual.is_zero() {
        return Err(Error::Newton(format!(
            "residual does not vanish; first nonzero term at t^{}",
            residual.valuation()
        )));
    }
    Ok(u)
}

/// Affine bound `(slope_num * n + offset_num) / den` on exponents at `t^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Affine {
    pub slope_num: i64,
    pub offset_num: i64,
    pub den: i64,
}

impl Affine {
    pub const fn new(slope_num: i64, offset_num: i64, den: i64) -> Self {
        assert!(den > 0);
        Self { slope_num, offset_num, den }
    }

    pub const fn constant(c: i64) -> Self {
        Self::new(0, c, 1)
    }

    fn floor_at(&self, n: i32) -> i64 {
        Integer::div_floor(&(self.slope_num * n as i64 + self.offset_num), &self.den)
    }

    fn ceil_at(&self, n: i32) -> i64 {
        Integer::div_ceil(&(self.slope_num * n as i64 + self.offset_num), &self.den)
    }
}

/// Bound on the x-exponents of the coefficient of `t^n`, assumed to hold
/// for every `n`, including beyond the truncation order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeBound {
    pub min: Affine,
    pub max: Affine,
}

impl DegreeBound {
    /// `|i| <= n + 1`, valid for walk series built by unit-ish steps.
    pub const WALK: DegreeBound = DegreeBound { min: Affine::new(-1, -1, 1), max: Affine::new(1, 1, 1) };

    /// `0 <= i <= n + 1`.
    pub const NONNEG: DegreeBound = DegreeBound { min: Affine::constant(0), max: Affine::new(1, 1, 1) };

    pub fn range_at(&self, n: i32) -> (i64, i64) {
        (self.min.ceil_at(n), self.max.floor_at(n))
    }

    /// Lower bound on `n + i*v` over all `n > after` and admissible `i`, or
    /// `None` if it does not grow with `n`.
    fn tail_valuation(&self, v: i32, after: i32) -> Option<i64> {
        let bound = if v < 0 { self.max } else { self.min };
        let v = v as i64;
        let slope = bound.den + v * bound.slope_num;
        if v != 0 && slope <= 0 {
            return None;
        }
        let n = after as i64 + 1;
        Some(Integer::div_ceil(&(slope * n + v * bound.offset_num), &bound.den))
    }
}

/// Result of [`substitute`]: the series and the order actually guaranteed.
#[derive(Clone, Debug)]
pub struct Substitution {
    pub series: TSeries,
    pub order: i32,
}

/// Replaces `x` by `target` in the univariate series `s`.
///
/// `bound` must describe the x-exponents of every coefficient of `s`, also
/// past its truncation; it is checked on the known part. The guaranteed
/// order of the result accounts both for the truncation of `target` and for
/// the unknown tail of `s`.
pub fn substitute(s: &TSeries, target: &TSeries, bound: &DegreeBound) -> Result<Substitution> {
    require_univariate(s)?;
    if target.is_zero() {
        return Err(Error::NotInvertible("target series vanishes".into()));
    }
    let v = target.valuation();
    let m = target.order();
    let mut order = match bound.tail_valuation(v, s.order()) {
        Some(w) => (w - 1).min(i32::MAX as i64 / 4) as i32,
        None => {
            return Err(Error::OrderLoss(format!(
                "substituting a series of valuation {v} into x: the degree bound does not make the tail vanish"
            )))
        }
    };
    let mut x_lo = 0;
    let mut x_hi = 0;
    let mut terms = Vec::new();
    for (n, c) in s.iter() {
        let (lo, hi) = bound.range_at(n);
        for (&(i, _), coef) in c.terms() {
            if (i as i64) < lo || (i as i64) > hi {
                return Err(Error::Contract(format!(
                    "x^{i} at t^{n} violates the degree bound [{lo}, {hi}]"
                )));
            }
            if i != 0 {
                order = order.min(n + (i - 1) * v + m);
            }
            x_lo = x_lo.min(i);
            x_hi = x_hi.max(i);
            terms.push((n, i, coef.clone()));
        }
    }
    if order < 0 {
        return Err(Error::OrderLoss(format!("substitution would only be known through t^{order}")));
    }
    let vars = target.vars();
    let mut acc = TSeries::zero(vars, order);
    // Precision of the target that suffices for every term.
    let needed = terms
        .iter()
        .filter(|(_, i, _)| *i != 0)
        .map(|(n, i, _)| order - n - (i - 1) * v)
        .max()
        .unwrap_or(v);
    let target = target.truncate(needed.max(v));
    let pos_powers = powers(&target, x_hi.max(0))?;
    let neg_powers = if x_lo < 0 { powers(&target.inverse()?, -x_lo)? } else { Vec::new() };
    for (n, i, coef) in &terms {
        let p = match i.cmp(&0) {
            std::cmp::Ordering::Equal => TSeries::one(vars, order - n),
            std::cmp::Ordering::Greater => pos_powers[*i as usize].truncate(order - n),
            std::cmp::Ordering::Less => neg_powers[(-i) as usize].truncate(order - n),
        };
        acc = &acc + &p.shift_t(*n).scale(coef);
    }
    let series = acc.truncate(order);
    let order = series.order();
    Ok(Substitution { series, order })
}

fn powers(base: &TSeries, up_to: i32) -> Result<Vec<TSeries>> {
    let mut out = vec![TSeries::one(base.vars(), base.order() - base.valuation())];
    if up_to >= 1 {
        out.push(base.clone());
    }
    for k in 2..=up_to as usize {
        let next = &out[k - 1] * base;
        out.push(next);
    }
    Ok(out)
}

/// Evaluates a bivariate polynomial with `t`-polynomial coefficients,
/// `sum c_{n,i,j} t^n x^i y^j` with nonnegative `i, j`, at `x = X, y = Y`.
pub fn eval_bivariate(terms: &[(i32, i32, i32, num_rational::BigRational)], x: &TSeries, y: &TSeries) -> Result<TSeries> {
    let max_i = terms.iter().map(|t| t.1).max().unwrap_or(0);
    let max_j = terms.iter().map(|t| t.2).max().unwrap_or(0);
    if terms.iter().any(|t| t.1 < 0 || t.2 < 0) {
        return Err(Error::Contract("negative exponent in polynomial evaluation".into()));
    }
    let order_cap = x.order().max(y.order()) + 4 * (max_i + max_j + 1);
    let xp = powers_capped(x, max_i, order_cap)?;
    let yp = powers_capped(y, max_j, order_cap)?;
    let vars = x.vars().join(y.vars());
    let mut acc: Option<TSeries> = None;
    for (n, i, j, c) in terms {
        if c.is_zero() {
            continue;
        }
        let term = (&xp[*i as usize] * &yp[*j as usize]).shift_t(*n).scale(c);
        acc = Some(match acc {
            None => term,
            Some(a) => &a + &term,
        });
    }
    Ok(acc.unwrap_or_else(|| TSeries::zero(vars, x.order().min(y.order()))))
}

fn powers_capped(base: &TSeries, up_to: i32, cap: i32) -> Result<Vec<TSeries>> {
    let mut out = vec![TSeries::one(base.vars(), cap)];
    for k in 1..=up_to as usize {
        let next = &out[k - 1] * base;
        out.push(next);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::int;
    use proptest::prelude::*;

    fn c(v: i64) -> LaurentPoly {
        LaurentPoly::constant(Vars::X, int(v))
    }

    fn series(start: i32, cs: Vec<LaurentPoly>, order: i32) -> TSeries {
        TSeries::from_coeffs(Vars::X, start, cs, order)
    }

    #[test]
    fn positive_part_keeps_exponent_zero() {
        let p = LaurentPoly::from_int_terms(Vars::X, &[((1, 0), 1), ((-1, 0), 1), ((0, 0), 2)]);
        let s = TSeries::monomial(1, p, 4);
        let expected = TSeries::monomial(1, LaurentPoly::from_int_terms(Vars::X, &[((1, 0), 1), ((0, 0), 2)]), 4);
        assert_eq!(positive_part(&s).unwrap(), expected);
        let neg = TSeries::monomial(2, LaurentPoly::x_pow(-3), 4);
        assert!(positive_part(&neg).unwrap().is_zero());
        let bi = TSeries::monomial(0, LaurentPoly::xy_pow(1, 1), 3);
        assert_eq!(positive_part(&bi), Err(Error::Bivariate));
    }

    #[test]
    fn constant_term_in_xbar() {
        let s = TSeries::monomial(1, LaurentPoly::from_int_terms(Vars::X, &[((-1, 0), 1), ((0, 0), 3)]), 3);
        assert_eq!(constant_term_xbar(&s).unwrap(), TSeries::monomial(1, c(3), 3));
        let pure = TSeries::monomial(2, LaurentPoly::x_pow(-2), 3);
        assert!(constant_term_xbar(&pure).unwrap().is_zero());
        let bad = TSeries::monomial(0, LaurentPoly::x_pow(1), 3);
        assert!(matches!(constant_term_xbar(&bad), Err(Error::Contract(_))));
    }

    #[test]
    fn square_roots() {
        assert_eq!(sqrt_series(&TSeries::one(Vars::X, 5)).unwrap(), TSeries::one(Vars::X, 5));
        let sq = series(0, vec![c(1), c(2), c(1)], 6);
        assert_eq!(sqrt_series(&sq).unwrap(), series(0, vec![c(1), c(1)], 6));
        // 1 - 4 t^2 x
        let s = series(0, vec![c(1), c(0), LaurentPoly::from_int_terms(Vars::X, &[((1, 0), -4)])], 12);
        let r = sqrt_series(&s).unwrap();
        assert!((&(&r * &r) - &s).is_zero());
        assert!(sqrt_series(&series(0, vec![c(2)], 3)).is_err());
    }

    #[test]
    fn newton_cubic_fixed_point() {
        // u - t(2 + u^3) = 0, oracle: fixed-point iteration u <- t(2 + u^3).
        let order = 12;
        let poly = vec![
            series(1, vec![c(-2)], order),
            TSeries::one(Vars::X, order),
            TSeries::zero(Vars::X, order),
            series(1, vec![c(-1)], order),
        ];
        let root = newton_root(&poly, &LaurentPoly::zero(Vars::X), order).unwrap();
        let mut fixed = TSeries::zero(Vars::X, order);
        let two = TSeries::from_poly(c(2), order);
        for _ in 0..=order {
            let cube = &(&fixed * &fixed) * &fixed;
            fixed = (&two + &cube).shift_t(1).truncate(order);
        }
        assert_eq!(root, fixed);
        assert_eq!(root.coeff(1, (0, 0)).unwrap(), int(2));
        assert_eq!(root.coeff(4, (0, 0)).unwrap(), int(8));
        assert_eq!(root.coeff(7, (0, 0)).unwrap(), int(96));
        assert_eq!(root.coeff(10, (0, 0)).unwrap(), int(1536));
    }

    #[test]
    fn newton_trivial_roots() {
        let order = 8;
        let poly = vec![series(1, vec![c(-1)], order), TSeries::one(Vars::X, order)];
        assert_eq!(newton_root(&poly, &LaurentPoly::zero(Vars::X), order).unwrap(), TSeries::t(Vars::X, order));
        let sq = vec![series(0, vec![c(-1), c(-2), c(-1)], order), TSeries::zero(Vars::X, order), TSeries::one(Vars::X, order)];
        assert_eq!(newton_root(&sq, &c(1), order).unwrap(), series(0, vec![c(1), c(1)], order));
    }

    #[test]
    fn newton_rejects_bad_starts() {
        let order = 4;
        // u^2 - t^2: double root at 0.
        let poly = vec![series(2, vec![c(-1)], order), TSeries::zero(Vars::X, order), TSeries::one(Vars::X, order)];
        assert!(matches!(newton_root(&poly, &LaurentPoly::zero(Vars::X), order), Err(Error::Newton(_))));
        // u - 1 at u0 = 0.
        let poly = vec![series(0, vec![c(-1)], order), TSeries::one(Vars::X, order)];
        assert!(matches!(newton_root(&poly, &LaurentPoly::zero(Vars::X), order), Err(Error::Newton(_))));
    }

    #[test]
    fn substitution_basics() {
        let s = TSeries::monomial(1, LaurentPoly::x_pow(1), 6);
        let sub = substitute(&s, &TSeries::t(Vars::X, 6), &DegreeBound::NONNEG).unwrap();
        assert!(matches!(substitute(&s, &TSeries::t(Vars::X, 6), &DegreeBound::WALK), Err(Error::OrderLoss(_))));
        assert_eq!(sub.series.coeff(2, (0, 0)).unwrap(), int(1));
        assert_eq!(sub.series.iter().count(), 1);
        assert!(sub.order >= 6);
    }

    #[test]
    fn substitution_detects_unbounded_tail() {
        // x^n t^n summed with x -> 1/t diverges.
        let s = TSeries::monomial(1, LaurentPoly::x_pow(1), 6);
        let inv_t = TSeries::t(Vars::X, 6).inverse().unwrap();
        let bound = DegreeBound { min: Affine::constant(0), max: Affine::new(1, 0, 1) };
        assert!(matches!(substitute(&s, &inv_t, &bound), Err(Error::OrderLoss(_))));
        let violating = TSeries::monomial(1, LaurentPoly::x_pow(5), 6);
        assert!(matches!(substitute(&violating, &TSeries::t(Vars::X, 6), &DegreeBound::NONNEG), Err(Error::Contract(_))));
    }

    fn arb_series() -> impl Strategy<Value = TSeries> {
        proptest::collection::vec(proptest::collection::vec((-3i32..=3, -4i64..=4), 0..4), 1..6).prop_map(|rows| {
            let cs = rows.into_iter().map(|terms| LaurentPoly::from_int_terms(Vars::X, &terms.into_iter().map(|(i, c)| ((i, 0), c)).collect::<Vec<_>>())).collect::<Vec<_>>();
            let order = cs.len() as i32 + 1;
            TSeries::from_coeffs(Vars::X, 0, cs, order)
        })
    }

    proptest! {
        #[test]
        fn positive_part_idempotent_and_complementary(s in arb_series()) {
            let p = positive_part(&s).unwrap();
            prop_assert_eq!(positive_part(&p).unwrap(), p.clone());
            prop_assert_eq!(&p + &negative_part(&s).unwrap(), s);
        }

        #[test]
        fn sqrt_squares_back(s in arb_series()) {
            let unit = TSeries::one(Vars::X, s.order());
            let shifted = &unit + &s.shift_t(1).truncate(s.order());
            let r = sqrt_series(&shifted).unwrap();
            prop_assert!((&(&r * &r) - &shifted).is_zero());
        }
    }
}
