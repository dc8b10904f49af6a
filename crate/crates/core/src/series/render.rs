//! Text and JSON forms of truncated series.
//!
//! The text form reads like `2*t + (x + 2)*t^3 + O(t^5)`; it is produced by
//! `Display` and read back by [`TSeries::parse`]. The trailing `O(t^k)` is
//! mandatory and fixes the guaranteed order at `k - 1`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::laurent::{monomial_text, LaurentPoly, Vars};
use super::tseries::TSeries;
use crate::numerics::BigRat;
use crate::{Error, Result};

impl fmt::Display for TSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.iter() {
            if c.len() == 1 {
                let (&(i, j), coef) = c.terms().next().expect("one term");
                let neg = coef.is_negative();
                let abs = coef.abs();
                if first {
                    if neg {
                        write!(f, "-")?;
                    }
                } else {
                    write!(f, "{}", if neg { " - " } else { " + " })?;
                }
                let mono = monomial_text(&[('x', i), ('y', j), ('t', n)]);
                if mono.is_empty() {
                    write!(f, "{abs}")?;
                } else if abs.is_one() {
                    write!(f, "{mono}")?;
                } else {
                    write!(f, "{abs}*{mono}")?;
                }
            } else {
                if !first {
                    write!(f, " + ")?;
                }
                let tpow = monomial_text(&[('t', n)]);
                if tpow.is_empty() {
                    write!(f, "({c})")?;
                } else {
                    write!(f, "({c})*{tpow}")?;
                }
            }
            first = false;
        }
        if !first {
            write!(f, " + ")?;
        }
        write!(f, "O(t^{})", self.order() + 1)
    }
}

type Trivariate = BTreeMap<(i32, i32, i32), BigRat>;

fn tri_add(a: &mut Trivariate, b: &Trivariate, sign: i32) {
    for (e, c) in b {
        let entry = a.entry(*e).or_insert_with(BigRat::zero);
        if sign < 0 {
            *entry -= c;
        } else {
            *entry += c;
        }
    }
    a.retain(|_, c| !c.is_zero());
}

fn tri_mul(a: &Trivariate, b: &Trivariate) -> Trivariate {
    let mut out = Trivariate::new();
    for (&(n1, i1, j1), c1) in a {
        for (&(n2, i2, j2), c2) in b {
            *out.entry((n1 + n2, i1 + i2, j1 + j2)).or_insert_with(BigRat::zero) += c1 * c2;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    big_o: Option<i32>,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at byte {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| self.err("expected integer"))
    }

    fn natural_big(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| self.err("expected number"))
    }

    fn expr(&mut self) -> Result<Trivariate> {
        let mut acc = Trivariate::new();
        let mut sign = 1;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            sign = -1;
        }
        loop {
            if let Some(t) = self.term()? {
                tri_add(&mut acc, &t, sign);
            }
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    sign = 1;
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -1;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Option<Trivariate>> {
        let mut acc: Option<Trivariate> = None;
        loop {
            let f = self.factor()?;
            acc = match (acc, f) {
                (_, None) => return Ok(None),
                (None, Some(f)) => Some(f),
                (Some(a), Some(f)) => Some(tri_mul(&a, &f)),
            };
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok(acc);
            }
        }
    }

    /// `None` for the big-O marker.
    fn factor(&mut self) -> Result<Option<Trivariate>> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(Some(e))
            }
            Some(b'O') => {
                self.pos += 1;
                if self.peek() != Some(b'(') {
                    return Err(self.err("expected `(` after O"));
                }
                self.pos += 1;
                if self.peek() != Some(b't') {
                    return Err(self.err("expected t in O(...)"));
                }
                self.pos += 1;
                let k = if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.integer()? as i32
                } else {
                    1
                };
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                self.big_o = Some(k);
                Ok(None)
            }
            Some(c @ (b'x' | b'y' | b't')) => {
                self.pos += 1;
                let e = if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.integer()? as i32
                } else {
                    1
                };
                let key = match c {
                    b'x' => (0, e, 0),
                    b'y' => (0, 0, e),
                    _ => (e, 0, 0),
                };
                Ok(Some(Trivariate::from([(key, BigRat::one())])))
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.natural_big()?;
                let den = if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.natural_big()?
                } else {
                    BigInt::one()
                };
                if den.is_zero() {
                    return Err(self.err("zero denominator"));
                }
                Ok(Some(Trivariate::from([((0, 0, 0), BigRat::new(num, den))])))
            }
            _ => Err(self.err("unexpected token")),
        }
    }
}

impl TSeries {
    /// Parses the text form produced by `Display`.
    pub fn parse(text: &str, vars: Vars) -> Result<TSeries> {
        let mut p = Parser { src: text.as_bytes(), pos: 0, big_o: None };
        let poly = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("trailing input"));
        }
        let k = p.big_o.ok_or_else(|| Error::Parse("missing O(t^k) term".into()))?;
        build(vars, k - 1, poly.into_iter().map(|((n, i, j), c)| (n, i, j, c)))
    }
}

fn build(vars: Vars, order: i32, terms: impl Iterator<Item = (i32, i32, i32, BigRat)>) -> Result<TSeries> {
    let mut rows: BTreeMap<i32, LaurentPoly> = BTreeMap::new();
    for (n, i, j, c) in terms {
        if vars == Vars::X && j != 0 {
            return Err(Error::Parse("y exponent in a univariate series".into()));
        }
        if n > order {
            return Err(Error::Parse(format!("term t^{n} beyond the order O(t^{})", order + 1)));
        }
        rows.entry(n).or_insert_with(|| LaurentPoly::zero(vars)).add_term((i, j), c);
    }
    let start = rows.keys().next().copied().unwrap_or(order + 1);
    let coeffs = (start..=order).map(|n| rows.remove(&n).unwrap_or_else(|| LaurentPoly::zero(vars))).collect();
    Ok(TSeries::from_coeffs(vars, start, coeffs, order))
}

/// JSON form: every nonzero coefficient listed as `c * x^i y^j t^n`, with
/// `c` an exact decimal rational string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub vars: Vars,
    pub valuation: i32,
    pub order: i32,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub n: i32,
    pub i: i32,
    pub j: i32,
    pub c: String,
}

impl From<&TSeries> for SeriesJson {
    fn from(s: &TSeries) -> Self {
        let terms = s
            .iter()
            .flat_map(|(n, c)| c.terms().map(move |(&(i, j), v)| TermJson { n, i, j, c: v.to_string() }))
            .collect();
        SeriesJson { vars: s.vars(), valuation: s.valuation(), order: s.order(), terms }
    }
}

impl TryFrom<SeriesJson> for TSeries {
    type Error = Error;
    fn try_from(j: SeriesJson) -> Result<TSeries> {
        let terms = j
            .terms
            .into_iter()
            .map(|t| {
                t.c.parse::<BigRat>()
                    .map(|c| (t.n, t.i, t.j, c))
                    .map_err(|_| Error::Parse(format!("bad rational `{}`", t.c)))
            })
            .collect::<Result<Vec<_>>>()?;
        build(j.vars, j.order, terms.into_iter())
    }
}

/// JSON form of a Laurent polynomial: `{"vars": .., "terms": [{"i","j","c"}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vars,
    pub terms: Vec<PolyTermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyTermJson {
    pub i: i32,
    pub j: i32,
    pub c: String,
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson {
            vars: self.vars(),
            terms: self.terms().map(|(&(i, j), c)| PolyTermJson { i, j, c: c.to_string() }).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let j = PolyJson::deserialize(deserializer)?;
        let mut p = LaurentPoly::zero(j.vars);
        for t in j.terms {
            if j.vars == Vars::X && t.j != 0 {
                return Err(serde::de::Error::custom("y exponent in a univariate polynomial"));
            }
            let c = t.c.parse::<BigRat>().map_err(|_| serde::de::Error::custom(format!("bad rational `{}`", t.c)))?;
            p.add_term((t.i, t.j), c);
        }
        Ok(p)
    }
}

impl Serialize for TSeries {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesJson::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TSeries {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let j = SeriesJson::deserialize(deserializer)?;
        TSeries::try_from(j).map_err(serde::de::Error::custom)
    }
}
