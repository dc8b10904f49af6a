//! Symmetric functions of the two kernel roots `Y0`, `Y1`: for a symmetric
//! polynomial `F`, `F(Y0, Y1)` only involves nonpositive powers of `x`, and
//! its `x^0` part is the constant `F(0, 0)`.

use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{symmetric_functions, y_root_vanishing, Kernel};
use crate::numerics::int;
use crate::series::{constant_term_xbar, LaurentPoly, TSeries, Vars};
use crate::{Error, Result};

/// `sum c_{a,b} m(a,b)` over `a <= b`, where `m(a,b) = u^a v^b + u^b v^a`
/// and `m(a,a) = u^a v^a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetricPoly {
    /// `(a, b, c)` with `a <= b`.
    pub terms: Vec<(u32, u32, i64)>,
}

impl SymmetricPoly {
    /// Random coefficients in `[-bound, bound]` on every monomial pair of
    /// total degree at most `degree`.
    pub fn random(rng: &mut impl Rng, degree: u32, bound: i64) -> Self {
        let mut terms = Vec::new();
        for a in 0..=degree {
            for b in a..=degree - a {
                let c = rng.gen_range(-bound..=bound);
                if c != 0 {
                    terms.push((a, b, c));
                }
            }
        }
        SymmetricPoly { terms }
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|&(a, b, _)| a + b).max().unwrap_or(0)
    }

    pub fn at_zero(&self) -> i64 {
        self.terms.iter().filter(|&&(a, b, _)| a == 0 && b == 0).map(|t| t.2).sum()
    }

    /// `F(u, v)` for series `u`, `v`.
    pub fn eval(&self, u: &TSeries, v: &TSeries) -> TSeries {
        let d = self.degree() as usize;
        let powers = |s: &TSeries| {
            let mut p = vec![TSeries::one(s.vars(), s.order() + 8 * d as i32)];
            for k in 1..=d {
                let next = &p[k - 1] * s;
                p.push(next);
            }
            p
        };
        let (up, vp) = (powers(u), powers(v));
        let mut acc = TSeries::zero(Vars::X, u.order().max(v.order()) + 8 * d as i32);
        for &(a, b, c) in &self.terms {
            let (a, b) = (a as usize, b as usize);
            let mut m = &up[a] * &vp[b];
            if a != b {
                m = &m + &(&up[b] * &vp[a]);
            }
            acc = &acc + &m.scale(&int(c));
        }
        acc
    }
}

impl fmt::Display for SymmetricPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|&(a, b, c)| format!("{c}*m({a},{b})"))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaCheck {
    pub poly: SymmetricPoly,
    /// Through which power of `t` the two properties were checked.
    pub order: i32,
    pub valuation: i32,
    pub max_x_exponent: Option<i32>,
    pub constant_term_ok: bool,
    pub passed: bool,
}

/// `F(Y0, Y1)` through `t^order`, with `Y1 = e1 - Y0`.
pub fn symmetric_of_roots(kernel: &Kernel, f: &SymmetricPoly, order: i32) -> Result<TSeries> {
    // Y1 has valuation -1, so each power of it costs one order.
    let wide = order + 2 * f.degree() as i32 + 2;
    let y0 = y_root_vanishing(kernel, wide)?;
    let e = symmetric_functions(kernel, wide)?;
    let y1 = &e.e1 - &y0;
    let value = f.eval(&y0, &y1);
    if value.order() < order {
        return Err(Error::Truncation { requested: order, order: value.order() });
    }
    Ok(value.truncate(order))
}

pub fn check_symmetric(kernel: &Kernel, f: &SymmetricPoly, order: i32) -> Result<LemmaCheck> {
    let value = symmetric_of_roots(kernel, f, order)?;
    let max_x_exponent = value.iter().filter_map(|(_, c)| c.bounds().map(|b| b.x_max)).max();
    let xbar_only = max_x_exponent.is_none_or(|m| m <= 0);
    let constant_term_ok = xbar_only && {
        let expected = TSeries::from_poly(LaurentPoly::constant(Vars::X, int(f.at_zero())), order);
        constant_term_xbar(&value)?.agrees_with(&expected)
    };
    Ok(LemmaCheck {
        poly: f.clone(),
        order,
        valuation: value.valuation(),
        max_x_exponent,
        constant_term_ok,
        passed: xbar_only && constant_term_ok,
    })
}

/// Checks `count` random symmetric polynomials drawn from a seeded generator.
pub fn symmetric_root_suite(
    kernel: &Kernel,
    count: usize,
    degree: u32,
    bound: i64,
    order: i32,
    seed: u64,
) -> Result<Vec<LemmaCheck>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| check_symmetric(kernel, &SymmetricPoly::random(&mut rng, degree, bound), order)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stepsets::{model_spec, Model};

    fn kreweras() -> Kernel {
        Kernel::new(&model_spec(Model::Kreweras).steps)
    }

    #[test]
    fn elementary_functions() {
        // u + v = xbar/t - xbar^2, u v = xbar
        for terms in [vec![(0, 1, 1)], vec![(1, 1, 1)], vec![(0, 0, 3), (0, 2, -1)]] {
            let f = SymmetricPoly { terms };
            let c = check_symmetric(&kreweras(), &f, 8).unwrap();
            assert!(c.passed, "{f}: {c:?}");
        }
        let e1 = symmetric_of_roots(&kreweras(), &SymmetricPoly { terms: vec![(0, 1, 1)] }, 3).unwrap();
        assert_eq!(e1.to_string(), "x^-1*t^-1 - x^-2 + O(t^4)");
    }

    #[test]
    fn square_kernel_fails() {
        // the square kernel's e1 = 1/t - x - 1/x is not polynomial in 1/x
        let square = Kernel::new(&model_spec(Model::Square).steps);
        let c = check_symmetric(&square, &SymmetricPoly { terms: vec![(0, 1, 1)] }, 4).unwrap();
        assert!(!c.passed);
    }

    #[test]
    fn seeded_suite_is_reproducible() {
        let a = symmetric_root_suite(&kreweras(), 3, 4, 5, 6, 7).unwrap();
        let b = symmetric_root_suite(&kreweras(), 3, 4, 5, 6, 7).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|c| c.passed));
    }
}
