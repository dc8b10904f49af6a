//! Square and diagonal lattice walks.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::numerics::{binomial, binomial_half, BigRat};
use crate::series::{LaurentPoly, TSeries, Vars};

fn exact_quotient(num: BigInt, den: i64) -> BigInt {
    let (q, r) = num.div_rem(&BigInt::from(den));
    assert!(r.is_zero(), "closed form is integral");
    q
}

/// Walks of length `n` ending at `(i, j)`:
/// `(i+1)(j+1)/((n+1)(n+2)) C(n+2, (n+i-j+2)/2) C(n+2, (n-i-j)/2)`.
pub fn square_count(i: i64, j: i64, n: i64) -> BigInt {
    if i < 0 || j < 0 || n < 0 {
        return BigInt::zero();
    }
    let num = binomial_half(n + 2, n + i - j + 2) * binomial_half(n + 2, n - i - j) * ((i + 1) * (j + 1));
    exact_quotient(num, (n + 1) * (n + 2))
}

/// `C(n, floor(n/2)) C(n+1, ceil(n/2))`.
pub fn square_total(n: i64) -> BigInt {
    binomial(n, n / 2) * binomial(n + 1, (n + 1) / 2)
}

/// Shuffles of two Dyck prefixes of total length `n`:
/// `sum_{m} C(n, m) C(m, floor(m/2)) C(n-m, floor((n-m)/2))`.
pub fn square_shuffle_total(n: i64) -> BigInt {
    (0..=n).map(|m| binomial(n, m) * binomial(m, m / 2) * binomial(n - m, (n - m) / 2)).sum()
}

/// Diagonal-step walks of length `n` ending at `(i, j)`:
/// `(i+1)(j+1)/(n+1)^2 C(n+1, (n-i)/2) C(n+1, (n-j)/2)`.
pub fn diagonal_count(i: i64, j: i64, n: i64) -> BigInt {
    if i < 0 || j < 0 || n < 0 || i > n || j > n {
        return BigInt::zero();
    }
    let num = binomial_half(n + 1, n - i) * binomial_half(n + 1, n - j) * ((i + 1) * (j + 1));
    exact_quotient(num, (n + 1) * (n + 1))
}

/// `C(n, floor(n/2))^2`.
pub fn diagonal_total(n: i64) -> BigInt {
    let b = binomial(n, n / 2);
    &b * &b
}

/// The double sums for the vanishing kernel root `Y0` and for
/// `R(x) = t x Q(x, 0)` of square walks, through `t^order`.
pub fn square_kernel_expansions(order: i32) -> (TSeries, TSeries) {
    let order_i = order as i64;
    let mut y0 = vec![LaurentPoly::zero(Vars::X); order.max(0) as usize + 1];
    let mut r = y0.clone();
    for m in 0..=order_i {
        for i in -order_i..=order_i {
            // x^i t^{2m+|i|+1} / (2m+|i|+1) C(2m+|i|+1, m+|i|) C(2m+|i|+1, m)
            let a = i.abs();
            let n = 2 * m + a + 1;
            if n > order_i {
                continue;
            }
            let c = BigRat::new(binomial(n, m + a) * binomial(n, m), n.into());
            y0[n as usize].add_term((i as i32, 0), c);
        }
        for i in 0..=order_i {
            // x^{i+1} t^{2m+i+1} (i+1) / ((2m+i+1)(2m+i+2)) C(2m+i+2, m+i+1) C(2m+i+2, m)
            let n = 2 * m + i + 1;
            if n > order_i {
                break;
            }
            let num = binomial(n + 1, m + i + 1) * binomial(n + 1, m) * (i + 1);
            r[n as usize].add_term(((i + 1) as i32, 0), BigRat::new(num, (n * (n + 1)).into()));
        }
    }
    (TSeries::from_coeffs(Vars::X, 0, y0, order), TSeries::from_coeffs(Vars::X, 0, r, order))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(square_total(2), BigInt::from(6));
        assert_eq!(square_count(1, 0, 1), BigInt::from(1));
        assert_eq!(square_count(0, 0, 1), BigInt::zero());
        assert_eq!(square_count(0, 0, 2), BigInt::from(2));
        assert_eq!(diagonal_total(2), BigInt::from(4));
        assert_eq!(diagonal_count(0, 0, 2), BigInt::from(1));
        assert_eq!(diagonal_count(1, 0, 2), BigInt::zero());
    }

    #[test]
    fn shuffle_equals_total() {
        for n in 0..=30 {
            assert_eq!(square_shuffle_total(n), square_total(n), "n = {n}");
        }
    }

    #[test]
    fn expansions_start() {
        let (y0, r) = square_kernel_expansions(3);
        assert_eq!(y0.coeff_poly(1).unwrap(), LaurentPoly::one(Vars::X));
        assert_eq!(y0.coeff_poly(2).unwrap(), LaurentPoly::from_int_terms(Vars::X, &[((1, 0), 1), ((-1, 0), 1)]));
        assert_eq!(r.coeff(1, (1, 0)).unwrap(), BigRat::from_integer(1.into()));
    }
}
