//! The kernel `K(x, y) = x^u y^p (1 - t S(x, y))`, its roots in `y`, and the
//! identities of the kernel method.

mod identities;
mod lemma;
mod orbit;

use std::fmt;

use num_traits::One;

use crate::numerics::{int, BigRat};
use crate::series::{eval_bivariate, newton_root, sqrt_series, LaurentPoly, TSeries, Vars};
use crate::stepsets::StepSet;
use crate::{Error, Result};

pub use identities::{
    r_series, verify_functional_equation, verify_general_equation, verify_kernel_identities, IdentityCheck,
};
pub use lemma::{check_symmetric, symmetric_of_roots, symmetric_root_suite, LemmaCheck, SymmetricPoly};
pub use orbit::{orbit, phi, psi, substitutable, Involution, Orbit, OrbitPair, MIN_DECISION_TERMS};

/// `K = k0 + t * k1` with `k0 = x^u y^p` and `k1 = -x^u y^p S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kernel {
    steps: StepSet,
    u: i32,
    p: i32,
    k0: LaurentPoly,
    k1: LaurentPoly,
}

/// Margin added to the order of exact polynomial data used in series
/// computations, so that it never limits the result.
const EXACT_MARGIN: i32 = 4;

impl Kernel {
    pub fn new(steps: &StepSet) -> Self {
        let (u, p) = (steps.u(), steps.p());
        let k0 = LaurentPoly::xy_pow(u, p);
        let k1 = -&steps.step_polynomial().shift(u, p);
        Kernel { steps: steps.clone(), u, p, k0, k1 }
    }

    pub fn steps(&self) -> &StepSet {
        &self.steps
    }

    pub fn u(&self) -> i32 {
        self.u
    }

    pub fn p(&self) -> i32 {
        self.p
    }

    /// Coefficients of `t^0` and `t^1`.
    pub fn t_coeffs(&self) -> (&LaurentPoly, &LaurentPoly) {
        (&self.k0, &self.k1)
    }

    /// Degree in `y`, which is `p` plus the largest up move.
    pub fn y_degree(&self) -> i32 {
        self.k0.bounds().expect("nonzero").y_max.max(self.k1.bounds().expect("nonzero").y_max)
    }

    pub fn x_degree(&self) -> i32 {
        self.k0.bounds().expect("nonzero").x_max.max(self.k1.bounds().expect("nonzero").x_max)
    }

    /// `K` as an exact bivariate series, reported through `order`.
    pub fn as_series(&self, order: i32) -> TSeries {
        TSeries::from_coeffs(Vars::XY, 0, vec![self.k0.clone(), self.k1.clone()], order)
    }

    /// Terms `(n, i, j, c)` of `c t^n x^i y^j`.
    pub fn terms(&self) -> Vec<(i32, i32, i32, BigRat)> {
        let mut out = Vec::new();
        for (n, part) in [(0, &self.k0), (1, &self.k1)] {
            for (&(i, j), c) in part.terms() {
                out.push((n, i, j, c.clone()));
            }
        }
        out
    }

    /// Coefficient of `y^k`, as a series in `x` known through `order`.
    pub fn y_coeff(&self, k: i32, order: i32) -> TSeries {
        TSeries::from_coeffs(Vars::X, 0, vec![self.k0.y_section(k), self.k1.y_section(k)], order)
    }

    /// Coefficient of `x^k` as terms `(n, 0, j, c)` of a polynomial in `y`.
    pub(crate) fn x_coeff_terms(&self, k: i32) -> Vec<(i32, i32, i32, BigRat)> {
        self.terms().into_iter().filter(|t| t.1 == k).map(|(n, _, j, c)| (n, 0, j, c)).collect()
    }

    /// `K(X, Y)` for series `X`, `Y`.
    pub fn eval(&self, x: &TSeries, y: &TSeries) -> Result<TSeries> {
        eval_bivariate(&self.terms(), x, y)
    }
}

impl fmt::Display for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} - t*({})", self.k0, -&self.k1)
    }
}

pub fn build_kernel(steps: &StepSet) -> Kernel {
    Kernel::new(steps)
}

/// The root `Y0` of `K(x, y) = 0` in `y` vanishing at `t = 0`, through
/// `order`. Quadratic kernels are cross-checked against the explicit root.
pub fn y_root_vanishing(kernel: &Kernel, order: i32) -> Result<TSeries> {
    if kernel.p() != 1 {
        return Err(Error::Unsupported(format!(
            "{} roots vanish at t = 0; only a single vanishing root is handled",
            kernel.p()
        )));
    }
    let coeffs: Vec<TSeries> = (0..=kernel.y_degree()).map(|k| kernel.y_coeff(k, order + EXACT_MARGIN)).collect();
    let root = newton_root(&coeffs, &LaurentPoly::zero(Vars::X), order)?;
    if kernel.y_degree() == 2 {
        let explicit = quadratic_root(kernel, order)?;
        if !explicit.agrees_with(&root) {
            return Err(Error::Contract("Newton root disagrees with the quadratic formula".into()));
        }
    }
    Ok(root)
}

/// For `K = x^u (y - t(A y^2 + B y + C))`, the root
/// `(1 - tB - sqrt((1 - tB)^2 - 4 t^2 A C)) / (2 t A)`.
pub fn quadratic_root(kernel: &Kernel, order: i32) -> Result<TSeries> {
    if kernel.y_degree() != 2 || kernel.p() != 1 {
        return Err(Error::Unsupported("explicit root needs a kernel of degree 2 in y with p = 1".into()));
    }
    let (k0, k1) = kernel.t_coeffs();
    let lead = k0.y_section(1);
    let lead_inv = lead.inverse()?;
    if !k0.y_section(0).is_zero() || !k0.y_section(2).is_zero() {
        return Err(Error::Contract("unexpected t-free terms in the kernel".into()));
    }
    let a = -&(&k1.y_section(2) * &lead_inv);
    let b = -&(&k1.y_section(1) * &lead_inv);
    let c = -&(&k1.y_section(0) * &lead_inv);
    let wide = order + 2;
    let one_minus_tb = TSeries::from_coeffs(Vars::X, 0, vec![LaurentPoly::one(Vars::X), -&b], wide);
    let four_ac = (&a * &c).scale(&int(4));
    let disc = &(&one_minus_tb * &one_minus_tb) - &TSeries::monomial(2, four_ac, wide);
    let num = &one_minus_tb - &sqrt_series(&disc)?;
    // The numerator is divisible by t; dividing by 2A is exact per coefficient.
    let half = BigRat::new(One::one(), 2.into());
    let coeffs = (1..=wide)
        .map(|n| num.coeff_poly(n).and_then(|p| p.scale(&half).exact_div(&a)))
        .collect::<Result<Vec<_>>>()?;
    if !num.coeff_poly(0)?.is_zero() {
        return Err(Error::Contract("numerator of the explicit root does not vanish at t = 0".into()));
    }
    Ok(TSeries::from_coeffs(Vars::X, 0, coeffs, (wide - 1).min(order)))
}

/// `e1 = Y0 + Y1` and `e2 = Y0 Y1`, read off the coefficients of a kernel
/// of degree 2 in `y` whose leading coefficient is invertible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricFunctions {
    pub e1: TSeries,
    pub e2: TSeries,
}

pub fn symmetric_functions(kernel: &Kernel, order: i32) -> Result<SymmetricFunctions> {
    if kernel.y_degree() != 2 {
        return Err(Error::Unsupported("symmetric functions need a kernel of degree 2 in y".into()));
    }
    let wide = order + EXACT_MARGIN;
    let a = kernel.y_coeff(2, wide);
    let inv = a.inverse()?;
    let e1 = -&(&kernel.y_coeff(1, wide) * &inv);
    let e2 = &kernel.y_coeff(0, wide) * &inv;
    Ok(SymmetricFunctions { e1: e1.truncate(order), e2: e2.truncate(order) })
}

impl SymmetricFunctions {
    /// True when both have only nonpositive x-exponents.
    pub fn polynomial_in_xbar(&self) -> bool {
        [&self.e1, &self.e2].iter().all(|s| s.iter().all(|(_, c)| c.bounds().is_none_or(|b| b.x_max <= 0)))
    }
}

/// The exact series `x^i` (or a constant when `i == 0`).
pub(crate) fn x_series(i: i32, order: i32) -> TSeries {
    TSeries::from_poly(LaurentPoly::x_pow(i), order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stepsets::{model_spec, Model};

    fn kernel(m: Model) -> Kernel {
        Kernel::new(&model_spec(m).steps)
    }

    #[test]
    fn kernels_of_the_catalog() {
        assert_eq!(kernel(Model::Square).to_string(), "x*y - t*(x^2*y + x*y^2 + x + y)");
        assert_eq!(kernel(Model::Kreweras).to_string(), "x*y - t*(x^2*y^2 + x + y)");
        assert_eq!(kernel(Model::Knight).to_string(), "x*y - t*(x^3 + y^3)");
        assert_eq!(kernel(Model::Knight).y_degree(), 3);
        assert_eq!(kernel(Model::Diagonal).to_string(), "x*y - t*(x^2*y^2 + x^2 + y^2 + 1)");
    }

    #[test]
    fn kreweras_root_expansion() {
        let y0 = y_root_vanishing(&kernel(Model::Kreweras), 2).unwrap();
        assert_eq!(y0.to_string(), "t + x^-1*t^2 + O(t^3)");
    }

    #[test]
    fn square_root_expansion() {
        let y0 = y_root_vanishing(&kernel(Model::Square), 2).unwrap();
        assert_eq!(y0.to_string(), "t + (x + x^-1)*t^2 + O(t^3)");
    }

    #[test]
    fn roots_cancel_the_kernel() {
        for m in Model::ALL {
            let k = kernel(m);
            let y0 = y_root_vanishing(&k, 20).unwrap();
            let res = k.eval(&x_series(1, 20), &y0).unwrap();
            assert!(res.is_zero(), "{m}: {res}");
            assert!(res.order() >= 20);
        }
    }

    #[test]
    fn symmetric_roots_are_mirror_invariant() {
        for m in [Model::Square, Model::Diagonal] {
            let y0 = y_root_vanishing(&kernel(m), 14).unwrap();
            assert_eq!(y0.mirror_x(), y0);
        }
    }

    #[test]
    fn symmetric_functions_of_kreweras_and_square() {
        let s = symmetric_functions(&kernel(Model::Kreweras), 6).unwrap();
        assert_eq!(s.e1.to_string(), "x^-1*t^-1 - x^-2 + O(t^7)");
        assert_eq!(s.e2.to_string(), "x^-1 + O(t^7)");
        assert!(s.polynomial_in_xbar());
        let s = symmetric_functions(&kernel(Model::Square), 6).unwrap();
        assert_eq!(s.e1.to_string(), "t^-1 + (-x - x^-1) + O(t^7)");
        assert_eq!(s.e2.to_string(), "1 + O(t^7)");
        assert!(!s.polynomial_in_xbar());
        assert!(symmetric_functions(&kernel(Model::Knight), 6).is_err());
    }

    #[test]
    fn product_of_roots() {
        let k = kernel(Model::Kreweras);
        let y0 = y_root_vanishing(&k, 12).unwrap();
        let s = symmetric_functions(&k, 12).unwrap();
        let y1 = &s.e1 - &y0;
        let prod = &y0 * &y1;
        assert!((&prod - &s.e2).is_zero());
        assert!(prod.order() >= 10);
    }

    #[test]
    fn higher_down_moves_rejected() {
        let steps: StepSet = "(0,-2);(1,1)".parse().unwrap();
        assert!(matches!(y_root_vanishing(&Kernel::new(&steps), 4), Err(Error::Unsupported(_))));
    }
}
