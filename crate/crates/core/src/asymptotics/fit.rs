//! Growth-rate and exponent estimates for `a_n ~ c mu^n n^alpha`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::real::{Real, DISPLAY_DIGITS};
use crate::numerics::BigRat;
use crate::{Error, Result};

/// Fewest nonzero terms accepted by [`fit`].
pub const MIN_TERMS: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FitOptions {
    /// Subsampling step, taken together with the support period. Six kills
    /// the parity and mod-3 oscillations seen on the catalog models.
    pub stride: usize,
    /// Richardson depth for both the ratios and the exponents.
    pub depth: usize,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions { stride: 6, depth: 4 }
    }
}

/// One line of the extrapolation table.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableRow {
    pub n: usize,
    #[serde(with = "decimal_string")]
    pub a_n: BigInt,
    pub mu_n: Real,
    pub alpha_n: Option<Real>,
}

/// Estimate obtained from the terms with index at most `n_max`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WindowEstimate {
    pub n_max: usize,
    pub depth: usize,
    pub mu: Real,
    pub alpha: Real,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FitResult {
    pub mu: Real,
    pub alpha: Real,
    /// Largest index used.
    pub n_used: usize,
    pub terms_used: usize,
    /// Subsampled indices are `offset + step * k`.
    pub offset: usize,
    pub period: usize,
    pub step: usize,
    pub depth: usize,
    pub digits: usize,
    /// Estimates on the last quarter, half and all of the data.
    pub windows: Vec<WindowEstimate>,
    pub table: Vec<TableRow>,
}

/// Big integers as decimal strings, so JSON readers keep every digit.
pub(crate) mod decimal_string {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&n.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Fits with the default options.
pub fn fit(seq: &[BigInt], skip_zeros: bool) -> Result<FitResult> {
    fit_with(seq, skip_zeros, &FitOptions::default())
}

pub fn fit_with(seq: &[BigInt], skip_zeros: bool, opts: &FitOptions) -> Result<FitResult> {
    if opts.stride == 0 {
        return Err(Error::InvalidArgument("stride must be positive".into()));
    }
    let support: Vec<usize> = seq.iter().enumerate().filter(|(_, a)| !a.is_zero()).map(|(n, _)| n).collect();
    if support.len() < MIN_TERMS {
        return Err(Error::InvalidArgument(format!(
            "need at least {MIN_TERMS} nonzero terms, got {}",
            support.len()
        )));
    }
    if seq.iter().any(|a| a.sign() == num_bigint::Sign::Minus) {
        return Err(Error::InvalidArgument("counts must be nonnegative".into()));
    }
    let period = if skip_zeros {
        support.windows(2).fold(0, |g, w| g.gcd(&(w[1] - w[0])))
    } else {
        if support.len() != seq.len() {
            return Err(Error::InvalidArgument("sequence has zero terms; allow skipping them".into()));
        }
        1
    };
    let step = period.lcm(&opts.stride);
    let last = *support.last().expect("support is nonempty");

    // The progression through the last nonzero term, from its first index
    // after which no term vanishes.
    let residue = last % step;
    let mut indices: Vec<usize> = (0..=(last - residue) / step).map(|k| residue + step * k).collect();
    if let Some(z) = indices.iter().rposition(|&n| seq[n].is_zero()) {
        indices.drain(..=z);
    }
    if indices.first() == Some(&0) {
        // alpha needs positive indices
        indices.remove(0);
    }
    let terms: Vec<&BigInt> = indices.iter().map(|&n| &seq[n]).collect();
    let big_k = terms.len();
    if big_k < 6 {
        return Err(Error::InvalidArgument(format!(
            "only {big_k} terms left after subsampling with step {step}; supply a longer sequence"
        )));
    }

    let logs: Vec<Real> = terms.iter().map(|a| Real::ln_int(a).expect("positive term")).collect();
    let ratios: Vec<Real> = terms.windows(2).map(|w| Real::from_ratio(w[1], w[0])).collect();
    let est = Estimator { indices: indices.clone(), logs, ratios };

    let mut table = Vec::with_capacity(big_k);
    // a growth rate needs at least one ratio
    for k in 2..=big_k {
        let (mu_n, alpha_n) = est.at(k, opts.depth);
        table.push(TableRow { n: indices[k - 1], a_n: terms[k - 1].clone(), mu_n, alpha_n });
    }
    let mut windows = Vec::new();
    for k in [big_k / 4, big_k / 2, big_k] {
        if let (mu, Some(alpha)) = est.at(k, opts.depth) {
            windows.push(WindowEstimate { n_max: indices[k - 1], depth: est.depth_for(k, opts.depth), mu, alpha });
        }
    }
    let best = windows.last().cloned().expect("full window has an exponent");
    Ok(FitResult {
        mu: best.mu,
        alpha: best.alpha,
        n_used: last,
        terms_used: big_k,
        offset: residue,
        period,
        step,
        depth: best.depth,
        digits: DISPLAY_DIGITS,
        windows,
        table,
    })
}

/// The subsampled sequence `s_k = a_{n_k}` for `k = 1..=K`, stored 0-based.
struct Estimator {
    indices: Vec<usize>,
    logs: Vec<Real>,
    /// `s_{k+1} / s_k`.
    ratios: Vec<Real>,
}

/// Richardson extrapolation of `v(k0), ..., v(k0+m)` assuming an expansion
/// in powers of `1/k`: `sum_j (-1)^{m-j} (k0+j)^m v(k0+j) / (j! (m-j)!)`.
fn richardson(k0: usize, m: usize, v: impl Fn(usize) -> Real) -> Real {
    let mut acc = Real::zero();
    let mut fact = vec![BigInt::from(1)];
    for j in 1..=m {
        let next = &fact[j - 1] * j;
        fact.push(next);
    }
    for j in 0..=m {
        let k = BigInt::from(k0 + j);
        let mut w = BigRat::new(k.pow(m as u32), &fact[j] * &fact[m - j]);
        if (m - j) % 2 == 1 {
            w = -w;
        }
        acc = &acc + &v(k0 + j).mul_rat(&w);
    }
    acc
}

impl Estimator {
    fn n_of(&self, k: usize) -> usize {
        self.indices[k - 1]
    }

    fn step(&self) -> usize {
        self.indices[1] - self.indices[0]
    }

    fn depth_for(&self, k: usize, depth: usize) -> usize {
        depth.min((k / 2).saturating_sub(1))
    }

    /// `(mu, alpha)` from the first `k` subsampled terms.
    fn at(&self, k: usize, depth: usize) -> (Real, Option<Real>) {
        let m = depth.min(k.saturating_sub(2));
        let subsampled_mu = if k < 2 {
            None
        } else {
            // ratio index i (0-based) is s_{i+2}/s_{i+1}, centred on subsample index i+1
            let r = richardson(k - 1 - m, m, |i| self.ratios[i - 1].clone());
            Some(r).filter(Real::is_positive).or_else(|| Some(self.ratios[k - 2].clone()))
        };
        let ln_mu = match subsampled_mu {
            Some(mu) => mu.ln().expect("positive ratio").mul_rat(&BigRat::new(1.into(), self.step().into())),
            None => Real::zero(),
        };
        let mu = ln_mu.exp();
        let half = k / 2;
        if half < 1 {
            return (mu, None);
        }
        let m = self.depth_for(k, depth);
        let alpha = richardson(half - m, m, |j| self.alpha_raw(j, &ln_mu));
        (mu, Some(alpha))
    }

    /// `[ln(s_{2j}/s_j) - (n_{2j} - n_j) ln mu] / ln(n_{2j}/n_j)`.
    fn alpha_raw(&self, j: usize, ln_mu: &Real) -> Real {
        let (na, nb) = (self.n_of(j), self.n_of(2 * j));
        let num = &(&self.logs[2 * j - 1] - &self.logs[j - 1]) - &ln_mu.scale_int((nb - na) as i64);
        let den = Real::ln_ratio(&BigInt::from(nb), &BigInt::from(na)).expect("positive indices");
        &num / &den
    }
}
