//! Sparse Laurent polynomials in `x` (and optionally `y`) with exact
//! rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::numerics::BigRat;
use crate::{Error, Result};

/// Auxiliary variable set of a polynomial or series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Vars {
    X,
    XY,
}

impl Vars {
    pub fn join(self, other: Vars) -> Vars {
        self.max(other)
    }
}

/// Exponent vector `(i, j)` of the monomial `x^i y^j`.
pub type Exp = (i32, i32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub x_min: i32,
    pub x_max: i32,
    pub y_min: i32,
    pub y_max: i32,
}

/// Zero terms are never stored. Univariate polynomials keep `j == 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    vars: Vars,
    terms: BTreeMap<Exp, BigRat>,
}

impl LaurentPoly {
    pub fn zero(vars: Vars) -> Self {
        Self { vars, terms: BTreeMap::new() }
    }

    pub fn one(vars: Vars) -> Self {
        Self::constant(vars, BigRat::one())
    }

    pub fn constant(vars: Vars, c: BigRat) -> Self {
        Self::monomial(vars, (0, 0), c)
    }

    pub fn monomial(vars: Vars, exp: Exp, c: BigRat) -> Self {
        assert!(vars == Vars::XY || exp.1 == 0, "y exponent in a univariate polynomial");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { vars, terms }
    }

    /// `x^i` in the univariate ring.
    pub fn x_pow(i: i32) -> Self {
        Self::monomial(Vars::X, (i, 0), BigRat::one())
    }

    pub fn xy_pow(i: i32, j: i32) -> Self {
        Self::monomial(Vars::XY, (i, j), BigRat::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Exp, BigRat)>>(vars: Vars, items: I) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in items {
            p.add_term(e, c);
        }
        p
    }

    /// Univariate polynomial from integer coefficients `(exponent, coeff)`.
    pub fn from_int_terms(vars: Vars, items: &[(Exp, i64)]) -> Self {
        Self::from_terms(vars, items.iter().map(|&(e, c)| (e, BigRat::from_integer(BigInt::from(c)))))
    }

    pub fn vars(&self) -> Vars {
        self.vars
    }

    pub fn with_vars(mut self, vars: Vars) -> Self {
        if vars == Vars::X {
            assert!(self.terms.keys().all(|e| e.1 == 0), "cannot drop y from a bivariate polynomial");
        }
        self.vars = vars;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &BigRat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: Exp) -> BigRat {
        self.terms.get(&exp).cloned().unwrap_or_else(BigRat::zero)
    }

    pub fn add_term(&mut self, exp: Exp, c: BigRat) {
        assert!(self.vars == Vars::XY || exp.1 == 0, "y exponent in a univariate polynomial");
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn bounds(&self) -> Option<Bounds> {
        let mut it = self.terms.keys();
        let &(i0, j0) = it.next()?;
        let mut b = Bounds { x_min: i0, x_max: i0, y_min: j0, y_max: j0 };
        for &(i, j) in it {
            b.x_min = b.x_min.min(i);
            b.x_max = b.x_max.max(i);
            b.y_min = b.y_min.min(j);
            b.y_max = b.y_max.max(j);
        }
        Some(b)
    }

    pub fn scale(&self, c: &BigRat) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars);
        }
        Self {
            vars: self.vars,
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Multiplies by `x^di y^dj`.
    pub fn shift(&self, di: i32, dj: i32) -> Self {
        assert!(self.vars == Vars::XY || dj == 0);
        Self {
            vars: self.vars,
            terms: self.terms.iter().map(|(&(i, j), v)| ((i + di, j + dj), v.clone())).collect(),
        }
    }

    /// The substitution `x -> 1/x`.
    pub fn mirror_x(&self) -> Self {
        Self {
            vars: self.vars,
            terms: self.terms.iter().map(|(&(i, j), v)| ((-i, j), v.clone())).collect(),
        }
    }

    /// Exchanges the roles of `x` and `y`; the result is bivariate.
    pub fn swap_xy(&self) -> Self {
        Self {
            vars: Vars::XY,
            terms: self.terms.iter().map(|(&(i, j), v)| ((j, i), v.clone())).collect(),
        }
    }

    /// Coefficient of `y^j`, as a univariate polynomial in `x`.
    pub fn y_section(&self, j: i32) -> Self {
        Self {
            vars: Vars::X,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.1 == j)
                .map(|(&(i, _), v)| ((i, 0), v.clone()))
                .collect(),
        }
    }

    /// Terms with x-exponent `i`, keeping their `y` exponents (bivariate).
    pub fn x_section(&self, i: i32) -> Self {
        Self {
            vars: Vars::XY,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.0 == i)
                .map(|(&(_, j), v)| ((0, j), v.clone()))
                .collect(),
        }
    }

    /// Keeps monomials satisfying `keep` on the x-exponent.
    pub fn filter_x(&self, keep: impl Fn(i32) -> bool) -> Self {
        Self {
            vars: self.vars,
            terms: self.terms.iter().filter(|(e, _)| keep(e.0)).map(|(e, v)| (*e, v.clone())).collect(),
        }
    }

    pub fn as_monomial(&self) -> Option<(Exp, &BigRat)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (*e, c))
        } else {
            None
        }
    }

    /// Inverse in the Laurent ring; only monomials are units.
    pub fn inverse(&self) -> Result<Self> {
        let ((i, j), c) = self
            .as_monomial()
            .ok_or_else(|| Error::NotInvertible(format!("Laurent polynomial `{self}` is not a monomial")))?;
        Ok(Self::monomial(self.vars, (-i, -j), c.recip()))
    }

    /// Exact quotient `self / divisor` for univariate polynomials, by long
    /// division after clearing negative exponents.
    pub fn exact_div(&self, divisor: &LaurentPoly) -> Result<Self> {
        if self.vars != Vars::X || divisor.vars != Vars::X {
            return Err(Error::Bivariate);
        }
        if divisor.is_zero() {
            return Err(Error::NotInvertible("division by zero polynomial".into()));
        }
        if let Ok(inv) = divisor.inverse() {
            return Ok(self * &inv);
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        let db = divisor.bounds().expect("nonzero");
        let sb = self.bounds().expect("nonzero");
        let d_lead_exp = db.x_max;
        let d_lead = divisor.coeff((d_lead_exp, 0));
        let mut rem = self.clone();
        let mut quot = Self::zero(Vars::X);
        let d_span = db.x_max - db.x_min;
        let max_steps = (sb.x_max - sb.x_min - d_span).max(0) + 1;
        for _ in 0..max_steps {
            let Some(rb) = rem.bounds() else { break };
            if rb.x_max - rb.x_min < d_span {
                break;
            }
            let e = rb.x_max - d_lead_exp;
            let c = rem.coeff((rb.x_max, 0)) / &d_lead;
            let step = Self::monomial(Vars::X, (e, 0), c);
            rem = &rem - &(divisor * &step);
            quot = &quot + &step;
        }
        if rem.is_zero() {
            Ok(quot)
        } else {
            Err(Error::NotInvertible(format!("`{divisor}` does not divide `{self}`")))
        }
    }

    /// Evaluates at `x = 0, y = 0`, requiring nonnegative exponents.
    pub fn constant_term(&self) -> BigRat {
        self.coeff((0, 0))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly { vars: self.vars.join(rhs.vars), terms: self.terms.clone() };
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly { vars: self.vars.join(rhs.vars), terms: self.terms.clone() };
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            vars: self.vars,
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.vars.join(rhs.vars));
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                out.add_term((i1 + i2, j1 + j2), c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    /// Renders as e.g. `x^2*y - 3/2*x^-1 + 1`; terms in decreasing exponent
    /// order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (&(i, j), c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono = monomial_text(&[('x', i), ('y', j)]);
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

pub(crate) fn monomial_text(factors: &[(char, i32)]) -> String {
    let parts: Vec<String> = factors
        .iter()
        .filter(|(_, e)| *e != 0)
        .map(|&(v, e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
        .collect();
    parts.join("*")
}
