//! Growth estimates for the catalog models, against the known table of
//! `mu^n n^alpha` behaviours.

mod fit;
mod real;
pub mod sequences;

pub use fit::{fit, fit_with, FitOptions, FitResult, TableRow, WindowEstimate, MIN_TERMS};
pub use real::{Real, DISPLAY_DIGITS, PRECISION_BITS};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::closedforms::{diagonal_count, kreweras_axis_count_by_length, square_count};
use crate::enumerator::{stream_aggregate, Aggregate};
use crate::numerics::{rat, BigRat};
use crate::stepsets::{model_spec, Model};
use crate::{Error, Result};

/// Largest length for sequences that have to come from the walk recursion.
pub const ENUMERATION_MAX_N: usize = 400;

/// Row of the table: one fixed endpoint, the x-axis, or any endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Row {
    Endpoint,
    XAxis,
    Free,
}

impl Row {
    pub fn of(kind: Aggregate) -> Row {
        match kind {
            Aggregate::Endpoint(..) | Aggregate::Origin => Row::Endpoint,
            Aggregate::XAxis => Row::XAxis,
            Aggregate::Free => Row::Free,
        }
    }
}

/// Expected behaviour of a count sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Growth {
    /// The counts are eventually zero.
    Vanishing,
    /// `mu^n n^alpha` with `mu = mu_base^(1/mu_root)`.
    Power {
        #[serde(with = "rat_string")]
        mu_base: BigRat,
        mu_root: u32,
        #[serde(with = "rat_string")]
        alpha: BigRat,
    },
}

mod rat_string {
    use crate::numerics::BigRat;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &BigRat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRat, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

impl Growth {
    fn power(mu_base: BigRat, mu_root: u32, alpha: BigRat) -> Growth {
        Growth::Power { mu_base, mu_root, alpha }
    }

    pub fn mu(&self) -> Option<Real> {
        match self {
            Growth::Vanishing => None,
            Growth::Power { mu_base, mu_root, .. } => {
                Real::from_rat(mu_base).pow_rat(&BigRat::new(1.into(), (*mu_root).into()))
            }
        }
    }

    pub fn alpha(&self) -> Option<&BigRat> {
        match self {
            Growth::Vanishing => None,
            Growth::Power { alpha, .. } => Some(alpha),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AsymptoticTarget {
    pub model: Model,
    pub row: Row,
    pub growth: Growth,
}

pub fn target(model: Model, row: Row) -> AsymptoticTarget {
    let int = |n: i64| BigRat::from_integer(n.into());
    let growth = match (model, row) {
        (Model::Square | Model::Diagonal, Row::Endpoint) => Growth::power(int(4), 1, int(-3)),
        (Model::Square | Model::Diagonal, Row::XAxis) => Growth::power(int(4), 1, int(-2)),
        (Model::Square | Model::Diagonal, Row::Free) => Growth::power(int(4), 1, int(-1)),
        (Model::Kreweras, Row::Endpoint) => Growth::power(int(3), 1, rat(-5, 2)),
        (Model::Kreweras, Row::XAxis) => Growth::power(int(3), 1, rat(-7, 4)),
        (Model::Kreweras, Row::Free) => Growth::power(int(3), 1, rat(-3, 4)),
        (Model::Knight, Row::Endpoint) => Growth::Vanishing,
        // 3 / 4^(1/3) = (27/4)^(1/3)
        (Model::Knight, Row::XAxis) => Growth::power(rat(27, 4), 3, rat(-3, 2)),
        (Model::Knight, Row::Free) => Growth::power(int(2), 1, int(0)),
    };
    AsymptoticTarget { model, row, growth }
}

/// The complete table.
pub fn targets() -> Vec<AsymptoticTarget> {
    Model::ALL
        .iter()
        .flat_map(|&m| [Row::Endpoint, Row::XAxis, Row::Free].map(|r| target(m, r)))
        .collect()
}

fn endpoint_of(kind: Aggregate) -> Option<(i32, i32)> {
    match kind {
        Aggregate::Endpoint(i, j) => Some((i, j)),
        Aggregate::Origin => Some((0, 0)),
        _ => None,
    }
}

/// Whether the sequence comes from a closed form rather than enumeration.
pub fn has_closed_form(model: Model, kind: Aggregate) -> bool {
    match model {
        Model::Square | Model::Diagonal => true,
        Model::Kreweras => match endpoint_of(kind) {
            Some((i, j)) => i == 0 || j == 0,
            None => true,
        },
        Model::Knight => false,
    }
}

/// Suggested length: long for closed forms, short for enumeration.
pub fn default_max_n(model: Model, kind: Aggregate) -> usize {
    if has_closed_form(model, kind) {
        2000
    } else {
        200
    }
}

/// Counts `a_0, ..., a_max_n` for one row of a catalog model.
pub fn catalog_sequence(model: Model, kind: Aggregate, max_n: usize) -> Result<Vec<BigInt>> {
    if let Some((i, j)) = endpoint_of(kind) {
        if i < 0 || j < 0 {
            return Err(Error::InvalidArgument(format!("endpoint ({i},{j}) lies outside the quadrant")));
        }
    }
    let lengths = || 0..=max_n as i64;
    let seq = match (model, kind) {
        (Model::Square, Aggregate::Free) => sequences::square_free(max_n),
        (Model::Square, Aggregate::XAxis) => sequences::square_x_axis(max_n),
        (Model::Diagonal, Aggregate::Free) => sequences::diagonal_free(max_n),
        (Model::Diagonal, Aggregate::XAxis) => sequences::diagonal_x_axis(max_n),
        (Model::Kreweras, Aggregate::Free) => sequences::kreweras_free(max_n),
        (Model::Kreweras, Aggregate::XAxis) => sequences::kreweras_x_axis(max_n),
        _ => match (model, endpoint_of(kind)) {
            (Model::Square, Some((i, j))) => lengths().map(|n| square_count(i.into(), j.into(), n)).collect(),
            (Model::Diagonal, Some((i, j))) => lengths().map(|n| diagonal_count(i.into(), j.into(), n)).collect(),
            // the model is symmetric in its two coordinates
            (Model::Kreweras, Some((i, 0))) | (Model::Kreweras, Some((0, i))) => {
                lengths().map(|n| kreweras_axis_count_by_length(i.into(), n)).collect()
            }
            _ => {
                if max_n > ENUMERATION_MAX_N {
                    return Err(Error::InvalidArgument(format!(
                        "{} {kind:?} needs enumeration; max_n is limited to {ENUMERATION_MAX_N}",
                        model.name()
                    )));
                }
                let spec = model_spec(model);
                stream_aggregate(&spec.steps, spec.start, max_n, kind)?
            }
        },
    };
    Ok(seq)
}

/// Errors of one window against the target.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WindowError {
    pub n_max: usize,
    /// `|mu_hat / mu - 1|`.
    pub mu_rel_error: Real,
    pub alpha_error: Real,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Outcome {
    Fitted {
        fit: Box<FitResult>,
        mu_target: Real,
        mu_rel_error: Real,
        alpha_error: Real,
        windows: Vec<WindowError>,
        /// Errors shrink from each window to the next.
        improving: bool,
    },
    /// Eventually-zero row: where the terms are nonzero, against the
    /// single length at which the endpoint can be reached.
    Vanishing {
        nonzero_at: Vec<usize>,
        /// The counts at `nonzero_at`, in decimal.
        nonzero_counts: Vec<String>,
        expected_nonzero_at: Vec<usize>,
        matches: bool,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Comparison {
    pub target: AsymptoticTarget,
    pub aggregate: Aggregate,
    pub max_n: usize,
    pub outcome: Outcome,
}

impl Comparison {
    /// Whether the estimate is within `mu_tol` (relative) and `alpha_tol`
    /// (absolute), or the vanishing pattern is as expected.
    pub fn within(&self, mu_tol: f64, alpha_tol: f64) -> bool {
        match &self.outcome {
            Outcome::Fitted { mu_rel_error, alpha_error, .. } => {
                mu_rel_error.to_f64() <= mu_tol && alpha_error.to_f64() <= alpha_tol
            }
            Outcome::Vanishing { matches, .. } => *matches,
        }
    }
}

/// Knight walks from `(1,1)` raise `i + j` by one per step, and reach
/// exactly the points with `i = j mod 3`.
fn knight_reach_length(i: i32, j: i32) -> Option<usize> {
    (i + j >= 2 && (i - j).rem_euclid(3) == 0).then(|| (i + j - 2) as usize)
}

pub fn compare_to_paper(model: Model, kind: Aggregate, max_n: usize) -> Result<Comparison> {
    compare_to_paper_with(model, kind, max_n, &FitOptions::default())
}

pub fn compare_to_paper_with(model: Model, kind: Aggregate, max_n: usize, opts: &FitOptions) -> Result<Comparison> {
    let target = target(model, Row::of(kind));
    let seq = catalog_sequence(model, kind, max_n)?;
    let outcome = match &target.growth {
        Growth::Vanishing => {
            let (i, j) = endpoint_of(kind).expect("vanishing rows are endpoints");
            let nonzero_at: Vec<usize> = seq.iter().enumerate().filter(|(_, a)| !a.is_zero()).map(|(n, _)| n).collect();
            let nonzero_counts = nonzero_at.iter().map(|&n| seq[n].to_string()).collect();
            let expected_nonzero_at: Vec<usize> = knight_reach_length(i, j).filter(|&n| n <= max_n).into_iter().collect();
            let matches = nonzero_at == expected_nonzero_at;
            Outcome::Vanishing { nonzero_at, nonzero_counts, expected_nonzero_at, matches }
        }
        growth @ Growth::Power { alpha, .. } => {
            let fit = fit_with(&seq, true, opts)?;
            let mu_target = growth.mu().expect("positive growth rate");
            let alpha = Real::from_rat(alpha);
            let one = Real::from_i64(1);
            let err = |mu: &Real, a: &Real| ((&(mu / &mu_target) - &one).abs(), (a - &alpha).abs());
            let windows: Vec<WindowError> = fit
                .windows
                .iter()
                .map(|w| {
                    let (mu_rel_error, alpha_error) = err(&w.mu, &w.alpha);
                    WindowError { n_max: w.n_max, mu_rel_error, alpha_error }
                })
                .collect();
            let improving = windows
                .windows(2)
                .all(|p| p[1].mu_rel_error <= p[0].mu_rel_error && p[1].alpha_error <= p[0].alpha_error);
            let (mu_rel_error, alpha_error) = err(&fit.mu, &fit.alpha);
            Outcome::Fitted { fit: Box::new(fit), mu_target, mu_rel_error, alpha_error, windows, improving }
        }
    };
    Ok(Comparison { target, aggregate: kind, max_n, outcome })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_shape() {
        assert_eq!(targets().len(), 12);
        let k = target(Model::Knight, Row::XAxis).growth.mu().unwrap();
        assert!((k.to_f64() - 3.0 / 4f64.cbrt()).abs() < 1e-12);
        assert_eq!(target(Model::Knight, Row::Endpoint).growth, Growth::Vanishing);
    }

    #[test]
    fn knight_endpoint_is_structural() {
        for ((i, j), expect) in [((3, 3), vec![4]), ((2, 3), vec![]), ((4, 1), vec![3])] {
            let c = compare_to_paper(Model::Knight, Aggregate::Endpoint(i, j), 30).unwrap();
            match c.outcome {
                Outcome::Vanishing { nonzero_at, matches, .. } => {
                    assert_eq!(nonzero_at, expect);
                    assert!(matches);
                }
                other => panic!("unexpected {other:?}"),
            }
        }
    }

    #[test]
    fn square_x_axis_short() {
        let c = compare_to_paper(Model::Square, Aggregate::XAxis, 600).unwrap();
        assert!(c.within(0.01, 0.15), "{:?}", c.outcome);
    }

    #[test]
    fn enumeration_limit() {
        assert!(catalog_sequence(Model::Knight, Aggregate::Free, ENUMERATION_MAX_N + 1).is_err());
        assert!(catalog_sequence(Model::Square, Aggregate::Endpoint(-1, 0), 10).is_err());
    }
}
