//! Brute-force counting of quadrant walks by forward dynamic programming.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::numerics::BigRat;
use crate::series::{LaurentPoly, TSeries, Vars};
use crate::stepsets::StepSet;
use crate::{Error, Result};

/// Counts of length-`n` walks on the bounding box of reachable cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layer {
    x_min: i32,
    y_min: i32,
    width: usize,
    height: usize,
    cells: Vec<BigInt>,
}

impl Layer {
    fn single(x: i32, y: i32) -> Self {
        Layer { x_min: x, y_min: y, width: 1, height: 1, cells: vec![BigInt::from(1)] }
    }

    fn empty() -> Self {
        Layer { x_min: 0, y_min: 0, width: 0, height: 0, cells: Vec::new() }
    }

    pub fn get(&self, i: i32, j: i32) -> Option<&BigInt> {
        let (di, dj) = (i - self.x_min, j - self.y_min);
        if di < 0 || dj < 0 || di as usize >= self.width || dj as usize >= self.height {
            return None;
        }
        Some(&self.cells[dj as usize * self.width + di as usize])
    }

    /// Nonzero cells as `(i, j, count)`.
    pub fn iter(&self) -> impl Iterator<Item = (i32, i32, &BigInt)> {
        self.cells.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(k, c)| {
            ((k % self.width) as i32 + self.x_min, (k / self.width) as i32 + self.y_min, c)
        })
    }

    pub fn total(&self) -> BigInt {
        self.cells.iter().sum()
    }

    fn advance(&self, steps: &StepSet) -> Layer {
        let mut pushed: Vec<(i32, i32, &BigInt)> = Vec::new();
        for (i, j, c) in self.iter() {
            for &(dx, dy) in steps.steps() {
                let (a, b) = (i + dx, j + dy);
                if a >= 0 && b >= 0 {
                    pushed.push((a, b, c));
                }
            }
        }
        if pushed.is_empty() {
            return Layer::empty();
        }
        let x_min = pushed.iter().map(|p| p.0).min().expect("nonempty");
        let x_max = pushed.iter().map(|p| p.0).max().expect("nonempty");
        let y_min = pushed.iter().map(|p| p.1).min().expect("nonempty");
        let y_max = pushed.iter().map(|p| p.1).max().expect("nonempty");
        let width = (x_max - x_min + 1) as usize;
        let height = (y_max - y_min + 1) as usize;
        let mut cells = vec![BigInt::zero(); width * height];
        for (a, b, c) in pushed {
            cells[(b - y_min) as usize * width + (a - x_min) as usize] += c;
        }
        Layer { x_min, y_min, width, height, cells }
    }
}

/// Which endpoints to sum over, per length.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Aggregate {
    Endpoint(i32, i32),
    XAxis,
    Origin,
    Free,
}

/// `free`, `x_axis` (or `x-axis`), `origin`, or an endpoint `i,j`
/// (optionally written `endpoint:i,j`).
impl FromStr for Aggregate {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_ascii_lowercase();
        match t.as_str() {
            "free" => return Ok(Aggregate::Free),
            "x_axis" | "x-axis" | "xaxis" => return Ok(Aggregate::XAxis),
            "origin" => return Ok(Aggregate::Origin),
            _ => {}
        }
        let pair = t.strip_prefix("endpoint:").unwrap_or(&t);
        let pair = pair.strip_prefix('(').and_then(|p| p.strip_suffix(')')).unwrap_or(pair);
        let bad = || Error::Parse(format!("`{s}` is not free, x_axis, origin or an endpoint i,j"));
        let (i, j) = pair.split_once(',').ok_or_else(bad)?;
        Ok(Aggregate::Endpoint(i.parse().map_err(|_| bad())?, j.parse().map_err(|_| bad())?))
    }
}

impl fmt::Display for Aggregate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Aggregate::Endpoint(i, j) => write!(f, "endpoint:{i},{j}"),
            Aggregate::XAxis => f.write_str("x_axis"),
            Aggregate::Origin => f.write_str("origin"),
            Aggregate::Free => f.write_str("free"),
        }
    }
}

impl Aggregate {
    fn of(&self, layer: &Layer) -> BigInt {
        match *self {
            Aggregate::Endpoint(i, j) => layer.get(i, j).cloned().unwrap_or_default(),
            Aggregate::Origin => layer.get(0, 0).cloned().unwrap_or_default(),
            Aggregate::XAxis => layer.iter().filter(|c| c.1 == 0).map(|c| c.2).sum(),
            Aggregate::Free => layer.total(),
        }
    }
}

/// `a_{i,j}(n)` for `0 <= n <= max_len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkTable {
    steps: StepSet,
    start: (i32, i32),
    layers: Vec<Layer>,
}

fn check_start(start: (i32, i32)) -> Result<()> {
    if start.0 < 0 || start.1 < 0 {
        return Err(Error::InvalidArgument(format!("start ({},{}) lies outside the quadrant", start.0, start.1)));
    }
    Ok(())
}

pub fn count_walks(steps: &StepSet, start: (i32, i32), max_len: usize) -> Result<WalkTable> {
    check_start(start)?;
    let mut layers = Vec::with_capacity(max_len + 1);
    layers.push(Layer::single(start.0, start.1));
    for n in 0..max_len {
        let next = layers[n].advance(steps);
        layers.push(next);
    }
    Ok(WalkTable { steps: steps.clone(), start, layers })
}

/// Aggregate counts without keeping the whole table in memory.
pub fn stream_aggregate(steps: &StepSet, start: (i32, i32), max_len: usize, kind: Aggregate) -> Result<Vec<BigInt>> {
    check_start(start)?;
    let mut layer = Layer::single(start.0, start.1);
    let mut out = Vec::with_capacity(max_len + 1);
    out.push(kind.of(&layer));
    for _ in 0..max_len {
        layer = layer.advance(steps);
        out.push(kind.of(&layer));
    }
    Ok(out)
}

impl WalkTable {
    pub fn max_len(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn steps(&self) -> &StepSet {
        &self.steps
    }

    pub fn start(&self) -> (i32, i32) {
        self.start
    }

    pub fn layer(&self, n: usize) -> &Layer {
        &self.layers[n]
    }

    /// Largest coordinate any walk in the table can reach.
    pub fn bound(&self) -> i32 {
        let reach = self.steps.steps().iter().map(|s| s.0.max(s.1)).max().unwrap_or(0).max(0);
        self.start.0.max(self.start.1) + reach * self.max_len() as i32
    }

    /// `a_{i,j}(n)`, zero off the occupied box.
    pub fn count(&self, n: usize, i: i32, j: i32) -> BigInt {
        self.layers.get(n).and_then(|l| l.get(i, j)).cloned().unwrap_or_default()
    }

    pub fn aggregate(&self, kind: Aggregate) -> Result<Vec<BigInt>> {
        if let Aggregate::Endpoint(i, j) = kind {
            let b = self.bound();
            if i < 0 || j < 0 || i > b || j > b {
                return Err(Error::InvalidArgument(format!("endpoint ({i},{j}) outside the table bounds [0,{b}]")));
            }
        }
        Ok(self.layers.iter().map(|l| kind.of(l)).collect())
    }

    /// `sum a_{i,j}(n) x^i y^j t^n`, known through `t^N`.
    pub fn series(&self) -> TSeries {
        let coeffs = self
            .layers
            .iter()
            .map(|l| LaurentPoly::from_terms(Vars::XY, l.iter().map(|(i, j, c)| ((i, j), BigRat::from_integer(c.clone())))))
            .collect();
        TSeries::from_coeffs(Vars::XY, 0, coeffs, self.max_len() as i32)
    }
}

pub fn series_from_table(table: &WalkTable) -> TSeries {
    table.series()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stepsets::{model_spec, Model};

    fn table(m: Model, n: usize) -> WalkTable {
        let spec = model_spec(m);
        count_walks(&spec.steps, spec.start, n).unwrap()
    }

    #[test]
    fn aggregate_names() {
        for kind in [Aggregate::Free, Aggregate::XAxis, Aggregate::Origin, Aggregate::Endpoint(2, -1)] {
            assert_eq!(kind.to_string().parse::<Aggregate>().unwrap(), kind);
        }
        assert_eq!("x-axis".parse::<Aggregate>().unwrap(), Aggregate::XAxis);
        assert_eq!(" (3, 4) ".parse::<Aggregate>().unwrap(), Aggregate::Endpoint(3, 4));
        assert!("sideways".parse::<Aggregate>().is_err());
    }

    fn nums(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn kreweras_origin_returns() {
        let t = table(Model::Kreweras, 9);
        assert_eq!(t.count(3, 0, 0), BigInt::from(2));
        assert_eq!(t.aggregate(Aggregate::Origin).unwrap(), nums(&[1, 0, 0, 2, 0, 0, 16, 0, 0, 192]));
    }

    #[test]
    fn square_first_steps() {
        let t = table(Model::Square, 2);
        assert_eq!(t.count(1, 1, 0), BigInt::from(1));
        assert_eq!(t.count(1, 0, 1), BigInt::from(1));
        assert_eq!(t.layer(1).total(), BigInt::from(2));
        assert_eq!(t.aggregate(Aggregate::Free).unwrap(), nums(&[1, 2, 6]));
    }

    #[test]
    fn diagonal_free() {
        assert_eq!(table(Model::Diagonal, 2).aggregate(Aggregate::Free).unwrap()[2], BigInt::from(4));
    }

    #[test]
    fn knight_lines() {
        let t = table(Model::Knight, 6);
        for n in 0..=6 {
            for (i, j, _) in t.layer(n).iter() {
                assert_eq!(i + j, 2 + n as i32);
            }
        }
    }

    #[test]
    fn start_and_endpoint_checks() {
        let spec = model_spec(Model::Square);
        assert!(count_walks(&spec.steps, (-1, 0), 3).is_err());
        let t = count_walks(&spec.steps, (0, 0), 3).unwrap();
        assert!(t.aggregate(Aggregate::Endpoint(4, 0)).is_err());
        assert!(t.aggregate(Aggregate::Endpoint(3, 0)).is_ok());
    }

    #[test]
    fn streaming_matches_table() {
        let spec = model_spec(Model::Kreweras);
        let t = count_walks(&spec.steps, spec.start, 12).unwrap();
        for kind in [Aggregate::Free, Aggregate::XAxis, Aggregate::Origin, Aggregate::Endpoint(1, 2)] {
            assert_eq!(stream_aggregate(&spec.steps, spec.start, 12, kind).unwrap(), t.aggregate(kind).unwrap());
        }
    }

    #[test]
    fn series_constant_and_linear_terms() {
        let s = table(Model::Kreweras, 4).series();
        assert_eq!(s.coeff_poly(0).unwrap(), LaurentPoly::one(Vars::XY));
        assert_eq!(s.coeff_poly(1).unwrap(), LaurentPoly::xy_pow(1, 1));
        let s = table(Model::Square, 4).series();
        assert_eq!(s.coeff_poly(1).unwrap(), LaurentPoly::from_int_terms(Vars::XY, &[((1, 0), 1), ((0, 1), 1)]));
        assert_eq!(s.order(), 4);
    }
}
