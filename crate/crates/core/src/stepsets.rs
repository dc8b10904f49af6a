//! Step sets, the holonomy criterion predicates, and the model catalog.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::numerics::BigRat;
use crate::series::{Affine, DegreeBound, LaurentPoly, TSeries, Vars};
use crate::{Error, Result};

pub type Step = (i32, i32);

/// A nonempty set of distinct steps, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Step>", into = "Vec<Step>")]
pub struct StepSet {
    steps: Vec<Step>,
}

impl StepSet {
    pub fn new(steps: Vec<Step>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::InvalidArgument("empty step set".into()));
        }
        let mut seen = BTreeSet::new();
        for s in &steps {
            if !seen.insert(*s) {
                return Err(Error::InvalidArgument(format!("duplicate step ({},{})", s.0, s.1)));
            }
        }
        Ok(Self { steps: seen.into_iter().collect() })
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn contains(&self, s: Step) -> bool {
        self.steps.binary_search(&s).is_ok()
    }

    /// Largest left move, `max(0, -min dx)`.
    pub fn u(&self) -> i32 {
        (-self.steps.iter().map(|s| s.0).min().unwrap_or(0)).max(0)
    }

    /// Largest down move, `max(0, -min dy)`.
    pub fn p(&self) -> i32 {
        (-self.steps.iter().map(|s| s.1).min().unwrap_or(0)).max(0)
    }

    /// `S(x, y) = sum over steps of x^dx y^dy`.
    pub fn step_polynomial(&self) -> LaurentPoly {
        LaurentPoly::from_terms(Vars::XY, self.steps.iter().map(|&s| (s, BigRat::one())))
    }

    pub fn analyze(&self) -> CriterionReport {
        let y_symmetric = self.steps.iter().all(|&(i, j)| self.contains((-i, j)));
        let small_horizontal = self.steps.iter().all(|&(i, _)| i.abs() <= 1);
        let column = |c: i32| {
            LaurentPoly::from_terms(
                Vars::XY,
                self.steps.iter().filter(|s| s.0 == c).map(|&(_, j)| ((0, j), BigRat::one())),
            )
        };
        let (p0, p1) = if small_horizontal { (Some(column(0)), Some(column(1))) } else { (None, None) };
        CriterionReport {
            y_symmetric,
            small_horizontal,
            holonomy_sufficient: y_symmetric && small_horizontal,
            p0,
            p1,
            note: None,
        }
    }
}

impl TryFrom<Vec<Step>> for StepSet {
    type Error = Error;
    fn try_from(v: Vec<Step>) -> Result<Self> {
        StepSet::new(v)
    }
}

impl From<StepSet> for Vec<Step> {
    fn from(s: StepSet) -> Self {
        s.steps
    }
}

impl FromStr for StepSet {
    type Err = Error;

    /// Parses `"(dx,dy);(dx,dy);..."`, ignoring whitespace.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut steps = Vec::new();
        for part in compact.split(';') {
            if part.is_empty() {
                continue;
            }
            let inner = part
                .strip_prefix('(')
                .and_then(|p| p.strip_suffix(')'))
                .ok_or_else(|| Error::Parse(format!("step `{part}` is not of the form (dx,dy)")))?;
            let (a, b) = inner
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("step `{part}` needs two coordinates")))?;
            let parse = |v: &str| v.parse::<i32>().map_err(|_| Error::Parse(format!("bad integer `{v}` in `{part}`")));
            steps.push((parse(a)?, parse(b)?));
        }
        StepSet::new(steps)
    }
}

impl fmt::Display for StepSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.steps.iter().map(|(a, b)| format!("({a},{b})")).collect();
        write!(f, "{}", parts.join(";"))
    }
}

/// Predicates of the sufficient holonomy criterion.
///
/// `p0`, `p1` are the Laurent polynomials in `y` collecting the steps with
/// `dx = 0` and `dx = 1`, stored with exponents `(0, j)`; present only for
/// small horizontal variations. `note` is free text for manual tagging
/// (for instance of degenerate sets), never set by [`StepSet::analyze`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub y_symmetric: bool,
    pub small_horizontal: bool,
    pub holonomy_sufficient: bool,
    pub p0: Option<LaurentPoly>,
    pub p1: Option<LaurentPoly>,
    pub note: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Square,
    Diagonal,
    Kreweras,
    Knight,
}

impl Model {
    pub const ALL: [Model; 4] = [Model::Square, Model::Diagonal, Model::Kreweras, Model::Knight];

    pub fn name(self) -> &'static str {
        match self {
            Model::Square => "square",
            Model::Diagonal => "diagonal",
            Model::Kreweras => "kreweras",
            Model::Knight => "knight",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Model {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Model::ALL
            .into_iter()
            .find(|m| m.name() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::UnknownModel(s.to_string()))
    }
}

/// A catalog model: steps, start point and functional equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelSpec {
    pub model: Model,
    pub steps: StepSet,
    pub start: (i32, i32),
}

pub fn builtin_model(name: &str) -> Result<ModelSpec> {
    Ok(model_spec(name.parse()?))
}

pub fn model_spec(model: Model) -> ModelSpec {
    let (steps, start) = match model {
        Model::Square => (vec![(0, 1), (1, 0), (0, -1), (-1, 0)], (0, 0)),
        Model::Diagonal => (vec![(1, 1), (1, -1), (-1, 1), (-1, -1)], (0, 0)),
        Model::Kreweras => (vec![(-1, 0), (0, -1), (1, 1)], (0, 0)),
        Model::Knight => (vec![(2, -1), (-1, 2)], (1, 1)),
    };
    ModelSpec { model, steps: StepSet::new(steps).expect("catalog steps are distinct"), start }
}

/// Boundary series of a complete generating function `Q(x, y; t)`.
pub struct Sections {
    /// `Q(x, 0)`, univariate.
    pub qx0: TSeries,
    /// `Q(0, y)`, bivariate with `x`-exponent 0.
    pub q0y: TSeries,
    /// `Q(0, 0)`.
    pub q00: TSeries,
}

impl Sections {
    pub fn of(q: &TSeries) -> Self {
        let qx0 = q.y_section(0);
        let q0y = q.x_section(0);
        let q00 = qx0.x_section(0).y_section(0);
        Sections { qx0, q0y, q00 }
    }
}

fn xy(vars_order: i32, i: i32, j: i32, c: i64) -> TSeries {
    TSeries::from_poly(LaurentPoly::monomial(Vars::XY, (i, j), BigRat::from_integer(c.into())), vars_order)
}

fn poly_xy(terms: &[((i32, i32), i64)]) -> LaurentPoly {
    LaurentPoly::from_int_terms(Vars::XY, terms)
}

impl ModelSpec {
    pub fn name(&self) -> &'static str {
        self.model.name()
    }

    /// Exponents `(u, p)` clearing the denominators of the step polynomial.
    pub fn shifts(&self) -> (i32, i32) {
        (self.steps.u(), self.steps.p())
    }

    /// Right-hand side of the model's functional equation
    /// `K(x, y) Q(x, y) = RHS`, written in the boundary series of `q`.
    pub fn functional_equation_rhs(&self, q: &TSeries) -> TSeries {
        let order = q.order() + 1;
        let s = Sections::of(q);
        let t = TSeries::t(Vars::XY, order);
        let qx0 = s.qx0.with_vars(Vars::XY);
        match self.model {
            // xy - x t Q(x,0) - y t Q(0,y)
            Model::Square | Model::Kreweras => {
                let lead = xy(order, 1, 1, 1);
                &(&lead - &(&t * &qx0.shift_x(1, 0))) - &(&t * &s.q0y.shift_x(0, 1))
            }
            // xy - t(1+x^2) Q(x,0) - t(1+y^2) Q(0,y) + t Q(0,0)
            Model::Diagonal => {
                let lead = xy(order, 1, 1, 1);
                let ax = qx0.mul_poly(&poly_xy(&[((0, 0), 1), ((2, 0), 1)]));
                let ay = s.q0y.mul_poly(&poly_xy(&[((0, 0), 1), ((0, 2), 1)]));
                let q00 = s.q00.with_vars(Vars::XY);
                &(&(&lead - &(&t * &ax)) - &(&t * &ay)) + &(&t * &q00)
            }
            // x^2 y^2 - t x^3 Q(x,0) - t y^3 Q(0,y)
            Model::Knight => {
                let lead = xy(order, 2, 2, 1);
                &(&lead - &(&t * &qx0.shift_x(3, 0))) - &(&t * &s.q0y.shift_x(0, 3))
            }
        }
    }

    /// Bound on the x-exponents of `R(x) = x t Q(x, 0)` at each power of `t`,
    /// for the models whose kernel identities are checked.
    pub fn r_degree_bound(&self) -> Result<DegreeBound> {
        match self.model {
            // A walk of length m ends on the axis at abscissa at most m.
            Model::Square => Ok(DegreeBound { min: Affine::constant(1), max: Affine::new(1, 0, 1) }),
            // Axis endpoints i need length 3n + 2i, so i <= m / 2.
            Model::Kreweras => Ok(DegreeBound { min: Affine::constant(1), max: Affine::new(1, 1, 2) }),
            Model::Diagonal => Ok(DegreeBound { min: Affine::constant(1), max: Affine::new(1, 0, 1) }),
            Model::Knight => Err(Error::Unsupported("knight walks have no kernel identities here".into())),
        }
    }
}

/// Right-hand side of the general equation for a y-symmetric step set with
/// small horizontal variations, started at `start`:
///
/// `K Q = x^{1+i0} y^{p+j0} - t y^p P1(y) Q(0,y)
///        - t sum_{(i,-j)} sum_{m<j} (Q_m(x) - [i=1] Q_m(0)) x^{1-i} y^{p+m-j}`
///
/// with `K = x y^p (1 - t P0(y) - t (x + 1/x) P1(y))` and `Q_m(x) = [y^m] Q`.
pub fn general_rhs(steps: &StepSet, start: (i32, i32), q: &TSeries) -> Result<TSeries> {
    let report = steps.analyze();
    if !report.holonomy_sufficient {
        return Err(Error::Unsupported("general equation needs a symmetric set with small horizontal variations".into()));
    }
    let p1 = report.p1.expect("small horizontal variations");
    let p = steps.p();
    let order = q.order() + 1;
    let t = TSeries::t(Vars::XY, order);
    let s = Sections::of(q);
    let mut rhs = xy(order, 1 + start.0, p + start.1, 1);
    rhs = &rhs - &(&t * &s.q0y.mul_poly(&p1.shift(0, p)));
    for &(i, dy) in steps.steps() {
        if dy >= 0 {
            continue;
        }
        let j = -dy;
        for m in 0..j {
            let qm = q.y_section(m);
            let mut inner = qm.with_vars(Vars::XY);
            if i == 1 {
                inner = &inner - &qm.x_section(0).y_section(0).with_vars(Vars::XY);
            }
            rhs = &rhs - &(&t * &inner.shift_x(1 - i, p + m - j));
        }
    }
    Ok(rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let s: StepSet = " (0, 1) ; (1,0);(0,-1);(-1,0) ".parse().unwrap();
        assert_eq!(s.len(), 4);
        assert_eq!(s.to_string(), "(-1,0);(0,-1);(0,1);(1,0)");
        assert!("(1,1);(1,1)".parse::<StepSet>().is_err());
        assert!("".parse::<StepSet>().is_err());
        assert!("(1,1;(0,1)".parse::<StepSet>().is_err());
        assert!("(a,1)".parse::<StepSet>().is_err());
    }

    #[test]
    fn shifts() {
        let k = model_spec(Model::Knight);
        assert_eq!(k.shifts(), (1, 1));
        let s: StepSet = "(0,-3);(2,1)".parse().unwrap();
        assert_eq!((s.u(), s.p()), (0, 3));
    }

    #[test]
    fn criterion_on_catalog() {
        let sq = model_spec(Model::Square).steps.analyze();
        assert!(sq.y_symmetric && sq.small_horizontal && sq.holonomy_sufficient);
        assert_eq!(sq.p0.unwrap(), poly_xy(&[((0, 1), 1), ((0, -1), 1)]));
        assert_eq!(sq.p1.unwrap(), LaurentPoly::one(Vars::XY));
        assert!(model_spec(Model::Diagonal).steps.analyze().holonomy_sufficient);
        let kr = model_spec(Model::Kreweras).steps.analyze();
        assert!(!kr.y_symmetric && !kr.holonomy_sufficient);
        let kn = model_spec(Model::Knight).steps.analyze();
        assert!(!kn.small_horizontal && kn.p0.is_none());
    }

    #[test]
    fn builtin_names() {
        assert_eq!(builtin_model("Kreweras").unwrap().start, (0, 0));
        assert_eq!(builtin_model("knight").unwrap().start, (1, 1));
        assert!(matches!(builtin_model("hexagonal"), Err(Error::UnknownModel(_))));
    }

    #[test]
    fn report_round_trips_through_json() {
        let r = model_spec(Model::Square).steps.analyze();
        let back: CriterionReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(back, r);
    }
}
