//! Dense integer polynomials, coefficients stored lowest degree first.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Coefficients of `∏ (X^k - 1)` over the given exponents.
pub(crate) fn product_of_cyclic(exponents: &[usize]) -> Vec<BigInt> {
    let mut poly = vec![BigInt::one()];
    for &k in exponents {
        // Multiply in place by X^k - 1.
        let mut next = vec![BigInt::zero(); poly.len() + k];
        for (i, c) in poly.iter().enumerate() {
            next[i + k] += c;
            next[i] -= c;
        }
        poly = next;
    }
    poly
}

/// Exact quotient by `X - 1`, or `None` when the remainder `p(1)` is nonzero.
pub(crate) fn div_x_minus_one(poly: &[BigInt]) -> Option<Vec<BigInt>> {
    if poly.is_empty() {
        return Some(Vec::new());
    }
    // Synthetic division from the top coefficient down.
    let deg = poly.len() - 1;
    let mut quot = vec![BigInt::zero(); deg];
    let mut carry = BigInt::zero();
    for i in (1..=deg).rev() {
        carry += &poly[i];
        quot[i - 1] = carry.clone();
    }
    carry += &poly[0];
    carry.is_zero().then_some(quot)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn expand_and_divide() {
        assert_eq!(product_of_cyclic(&[2, 2]), ints(&[1, 0, -2, 0, 1]));
        assert_eq!(product_of_cyclic(&[3, 1]), ints(&[1, -1, 0, -1, 1]));
        assert_eq!(
            div_x_minus_one(&ints(&[1, 0, -2, 0, 1])),
            Some(ints(&[-1, -1, 1, 1]))
        );
        assert_eq!(div_x_minus_one(&ints(&[1, 1])), None);
    }
}
