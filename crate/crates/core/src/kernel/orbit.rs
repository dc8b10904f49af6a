//! The involutions `Phi`, `Psi` and the orbit of `(x, Y0)`.

use serde::{Deserialize, Serialize};

use super::{x_series, y_root_vanishing, Kernel};
use crate::numerics::{int, BigRat};
use crate::series::{eval_bivariate, TSeries};
use crate::stepsets::StepSet;
use crate::{Error, Result};

/// Fewest known coefficients on which two series may be declared equal.
pub const MIN_DECISION_TERMS: i32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Involution {
    Phi,
    Psi,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitPair {
    pub x: TSeries,
    pub y: TSeries,
    /// `None` for the starting pair `(x, Y0)`.
    pub produced_by: Option<Involution>,
    /// Whether `Q(X, Y)` is a well-defined series.
    pub substitutable: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orbit {
    pub pairs: Vec<OrbitPair>,
    /// False if exploration stopped at the size limit.
    pub closed: bool,
}

fn require_biquadratic(kernel: &Kernel) -> Result<()> {
    if kernel.x_degree() != 2 || kernel.y_degree() != 2 {
        return Err(Error::Unsupported("the orbit needs a kernel of degree 2 in x and in y".into()));
    }
    Ok(())
}

/// Other root `X'` of `K(x, Y) = 0`: `X X' = c0(Y) / c2(Y)` with `c_k = [x^k] K`.
pub fn phi(kernel: &Kernel, x: &TSeries, y: &TSeries) -> Result<TSeries> {
    require_biquadratic(kernel)?;
    let c0 = eval_bivariate(&kernel.x_coeff_terms(0), y, y)?;
    let c2 = eval_bivariate(&kernel.x_coeff_terms(2), y, y)?;
    c0.checked_div(&(&c2 * x))
}

/// Other root `Y'` of `K(X, y) = 0`.
pub fn psi(kernel: &Kernel, x: &TSeries, y: &TSeries) -> Result<TSeries> {
    let swapped = Kernel::new(&StepSet::new(kernel.steps().steps().iter().map(|&(a, b)| (b, a)).collect())?);
    phi(&swapped, y, x)
}

fn same_series(a: &TSeries, b: &TSeries) -> Result<bool> {
    if !a.agrees_with(b) {
        return Ok(false);
    }
    let known = a.order().min(b.order()) - a.valuation().min(b.valuation()) + 1;
    if known < MIN_DECISION_TERMS {
        return Err(Error::Indecision(format!(
            "series agree on only {known} coefficients; raise the truncation order"
        )));
    }
    Ok(true)
}

/// Alternately applies `Psi` and `Phi` to `(x, Y0)` until a pair repeats
/// or `max_size` pairs have been produced. Each pair is checked to cancel
/// the kernel.
pub fn orbit(kernel: &Kernel, order: i32, max_size: usize) -> Result<Orbit> {
    require_biquadratic(kernel)?;
    let x = x_series(1, order);
    let y0 = y_root_vanishing(kernel, order)?;
    let mut pairs = vec![make_pair(kernel, x, y0, None)?];
    let mut next = Involution::Psi;
    while pairs.len() < max_size {
        let last = pairs.last().expect("nonempty");
        let (nx, ny) = match next {
            Involution::Psi => (last.x.clone(), psi(kernel, &last.x, &last.y)?),
            Involution::Phi => (phi(kernel, &last.x, &last.y)?, last.y.clone()),
        };
        for p in &pairs {
            if same_series(&p.x, &nx)? && same_series(&p.y, &ny)? {
                return Ok(Orbit { pairs, closed: true });
            }
        }
        pairs.push(make_pair(kernel, nx, ny, Some(next))?);
        next = match next {
            Involution::Psi => Involution::Phi,
            Involution::Phi => Involution::Psi,
        };
    }
    Ok(Orbit { pairs, closed: false })
}

fn make_pair(kernel: &Kernel, x: TSeries, y: TSeries, by: Option<Involution>) -> Result<OrbitPair> {
    let residual = kernel.eval(&x, &y)?;
    if !residual.is_zero() {
        return Err(Error::Contract(format!("orbit pair does not cancel the kernel: {residual}")));
    }
    let substitutable = substitutable(kernel.steps(), x.valuation(), y.valuation());
    Ok(OrbitPair { x, y, produced_by: by, substitutable })
}

/// Whether `sum a_{i,j}(n) X^i Y^j t^n` converges for `X`, `Y` of
/// valuations `vx`, `vy`: the weight `n + i vx + j vy` of a walk must grow
/// linearly with its length. A walk using step `s` a fraction `c_s` of the
/// time has weight `n * sum c_s (1 + dx vx + dy vy)`, with the quadrant
/// forcing `sum c_s dx >= 0` and `sum c_s dy >= 0`; the minimum over this
/// polytope is attained at a vertex, and is checked there.
pub fn substitutable(steps: &StepSet, vx: i32, vy: i32) -> bool {
    let s = steps.steps();
    let weight = |k: usize| int(1 + s[k].0 as i64 * vx as i64 + s[k].1 as i64 * vy as i64);
    let feasible = |c: &[(usize, BigRat)]| {
        let zero = int(0);
        let sx: BigRat = c.iter().map(|(k, w)| w * int(s[*k].0 as i64)).sum();
        let sy: BigRat = c.iter().map(|(k, w)| w * int(s[*k].1 as i64)).sum();
        c.iter().all(|(_, w)| *w >= zero) && sx >= zero && sy >= zero
    };
    let value = |c: &[(usize, BigRat)]| -> BigRat { c.iter().map(|(k, w)| w * weight(*k)).sum() };
    let mut vertices: Vec<Vec<(usize, BigRat)>> = Vec::new();
    let n = s.len();
    let row = |k: usize, r: usize| int(if r == 0 { s[k].0 } else { s[k].1 } as i64);
    for a in 0..n {
        vertices.push(vec![(a, int(1))]);
        for b in a + 1..n {
            for r in 0..2 {
                let (ra, rb) = (row(a, r), row(b, r));
                if ra != rb {
                    let ca = &rb / (&rb - &ra);
                    let cb = int(1) - &ca;
                    vertices.push(vec![(a, ca), (b, cb)]);
                }
            }
            for c in b + 1..n {
                let m = [[int(1), int(1), int(1)], [row(a, 0), row(b, 0), row(c, 0)], [row(a, 1), row(b, 1), row(c, 1)]];
                let det = det3(&m);
                if det == int(0) {
                    continue;
                }
                // Cramer's rule for m * w = (1, 0, 0).
                let w: Vec<BigRat> = (0..3)
                    .map(|col| {
                        let mut mc = m.clone();
                        for (r, rhs) in [int(1), int(0), int(0)].into_iter().enumerate() {
                            mc[r][col] = rhs;
                        }
                        det3(&mc) / &det
                    })
                    .collect();
                vertices.push(vec![(a, w[0].clone()), (b, w[1].clone()), (c, w[2].clone())]);
            }
        }
    }
    vertices.iter().filter(|v| feasible(v)).all(|v| value(v) > int(0))
}

fn det3(m: &[[BigRat; 3]; 3]) -> BigRat {
    &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1]) - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::symmetric_functions;
    use crate::stepsets::{model_spec, Model};

    fn kernel(m: Model) -> Kernel {
        Kernel::new(&model_spec(m).steps)
    }

    #[test]
    fn kreweras_orbit_has_six_pairs() {
        let k = kernel(Model::Kreweras);
        let o = orbit(&k, 20, 12).unwrap();
        assert!(o.closed);
        assert_eq!(o.pairs.len(), 6);
        let flags: Vec<bool> = o.pairs.iter().map(|p| p.substitutable).collect();
        // (x,Y0) (x,Y1) (Y0,Y1) (Y0,x) (Y1,x) (Y1,Y0)
        assert_eq!(flags, vec![true, false, true, true, false, true]);
        let e2 = symmetric_functions(&k, 20).unwrap().e2;
        let prod = &o.pairs[0].y * &o.pairs[1].y;
        assert!((&prod - &e2).is_zero());
    }

    #[test]
    fn square_orbit_has_four_pairs() {
        let o = orbit(&kernel(Model::Square), 16, 12).unwrap();
        assert!(o.closed);
        assert_eq!(o.pairs.len(), 4);
        let flags: Vec<bool> = o.pairs.iter().map(|p| p.substitutable).collect();
        assert_eq!(flags, vec![true, false, false, true]);
    }

    #[test]
    fn involutions() {
        let k = kernel(Model::Kreweras);
        let x = x_series(1, 16);
        let y0 = y_root_vanishing(&k, 16).unwrap();
        let y1 = psi(&k, &x, &y0).unwrap();
        assert!(psi(&k, &x, &y1).unwrap().agrees_with(&y0));
        let x1 = phi(&k, &x, &y0).unwrap();
        assert!(phi(&k, &x1, &y0).unwrap().agrees_with(&x));
    }

    #[test]
    fn low_order_is_undecidable() {
        assert!(matches!(orbit(&kernel(Model::Kreweras), 2, 12), Err(Error::Indecision(_))));
    }

    #[test]
    fn size_limit() {
        let o = orbit(&kernel(Model::Kreweras), 16, 3).unwrap();
        assert!(!o.closed);
        assert_eq!(o.pairs.len(), 3);
    }

    #[test]
    fn knight_has_no_orbit_here() {
        assert!(orbit(&kernel(Model::Knight), 8, 4).is_err());
    }
}
