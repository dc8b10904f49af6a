//! Long count sequences from the closed forms, for growth fits.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Row `C(m, 0..=m)`.
fn binomial_row(m: usize) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(m + 1);
    row.push(BigInt::one());
    for k in 1..=m {
        let next = &row[k - 1] * (m + 1 - k) / k;
        row.push(next);
    }
    row
}

fn exact_div(num: BigInt, den: usize) -> BigInt {
    let (q, r) = num.div_rem(&BigInt::from(den));
    debug_assert!(r.is_zero());
    q
}

/// Square-lattice walks ending on the x-axis, `n = 0..=max_n`:
/// `sum_k (n-2k+1) C(n+2,k+1) C(n+2,k) / ((n+1)(n+2))`.
pub fn square_x_axis(max_n: usize) -> Vec<BigInt> {
    (0..=max_n)
        .map(|n| {
            let row = binomial_row(n + 2);
            let s: BigInt = (0..=n / 2).map(|k| &row[k + 1] * &row[k] * (n + 1 - 2 * k)).sum();
            exact_div(s, (n + 1) * (n + 2))
        })
        .collect()
}

/// Square-lattice walks with free endpoint.
pub fn square_free(max_n: usize) -> Vec<BigInt> {
    (0..=max_n as i64).map(crate::closedforms::square_total).collect()
}

/// Diagonal-lattice walks ending on the x-axis (zero for odd `n`):
/// `C(n+1, n/2) / (n+1)^2 * sum_{i = n mod 2} (i+1) C(n+1, (n-i)/2)`.
pub fn diagonal_x_axis(max_n: usize) -> Vec<BigInt> {
    (0..=max_n)
        .map(|n| {
            if n % 2 == 1 {
                return BigInt::zero();
            }
            let row = binomial_row(n + 1);
            let s: BigInt = (0..=n).step_by(2).map(|i| &row[(n - i) / 2] * (i + 1)).sum();
            exact_div(s * &row[n / 2], (n + 1) * (n + 1))
        })
        .collect()
}

pub fn diagonal_free(max_n: usize) -> Vec<BigInt> {
    (0..=max_n as i64).map(crate::closedforms::diagonal_total).collect()
}

/// Kreweras walks ending on the x-axis, summing the axis formula over the
/// endpoints `(i, 0)` reachable at each length.
pub fn kreweras_x_axis(max_n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); max_n + 1];
    let mut central = BigInt::one(); // C(2i, i)
    for i in 0..=max_n / 2 {
        if i > 0 {
            central = central * (2 * (2 * i - 1)) / i;
        }
        // c = C(3n+2i, n), p4 = 4^n
        let mut c = BigInt::one();
        let mut p4 = BigInt::one();
        let mut n = 0;
        while 3 * n + 2 * i <= max_n {
            let num = &p4 * &central * &c * (2 * i + 1);
            out[3 * n + 2 * i] += exact_div(num, (n + i + 1) * (2 * n + 2 * i + 1));
            let m = 3 * n + 2 * i;
            c = c * ((m + 1) * (m + 2) * (m + 3)) / ((n + 1) * (2 * n + 2 * i + 1) * (2 * n + 2 * i + 2));
            p4 <<= 2;
            n += 1;
        }
    }
    out
}

/// Kreweras walks with free endpoint, from `f_m = 3 f_{m-1} - 2 A_{m-1}`
/// with `A` the x-axis counts: a walk can be prolonged in three ways,
/// except that West is forbidden on the y-axis and South on the x-axis,
/// and both axes carry the same number of walks.
pub fn kreweras_free(max_n: usize) -> Vec<BigInt> {
    let axis = kreweras_x_axis(max_n);
    let mut out = Vec::with_capacity(max_n + 1);
    out.push(BigInt::one());
    for m in 1..=max_n {
        let next = &out[m - 1] * 3 - &axis[m - 1] * 2;
        out.push(next);
    }
    out
}
