//! Recover a cycle type ν from the hook-character values
//! `ξ_{n,n-1}(ν), ..., ξ_{n,n-⌊n/2⌋}(ν)`.
//!
//! These values are, up to sign, the low coefficients of
//! `q(X) = ∏ (X^{ν_i} - 1) / (X - 1)`. Multiplying back by `X - 1` gives
//! `∏ (X^{ν_i} - 1)` modulo `X^m`, `m = ⌊n/2⌋`; its constant term is the
//! parity of ℓ(ν). Normalized to `∏ (1 - X^{ν_i})`, the lowest nonzero
//! coefficient past the constant sits at the smallest part, so parts below
//! `m` peel off one at a time by dividing out `1 - X^s`. What remains is at
//! most two parts of size at least `m`, pinned down by the parity.
//!
//! For `n = 3` the single value `ξ_{3,2}` is the sign character, which does
//! not separate `(3)` from `(1,1,1)`; that prefix is reported as ambiguous.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::charvalues::xi_values;
use crate::partitions::Partition;
use crate::poly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassIdError {
    #[error("n must be at least 1")]
    ZeroN,
    #[error("S_{n} needs {expected} hook values, got {got}")]
    WrongLength {
        n: usize,
        expected: usize,
        got: usize,
    },
    #[error("values are not the hook-character values of any class: {0}")]
    NotAClass(String),
    #[error("values fit several classes: {}", .0.iter().map(|p| format!("({p})")).collect::<Vec<_>>().join(", "))]
    Ambiguous(Vec<Partition>),
}

/// Number of hook values consumed: `⌊n/2⌋`, or 1 when `n = 1`.
pub fn prefix_len(n: usize) -> usize {
    (n / 2).max(1)
}

/// Hook-character values ordered `ξ_{n,n-1}, ξ_{n,n-2}, ...`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct XiPrefix {
    n: usize,
    values: Vec<BigInt>,
}

impl XiPrefix {
    pub fn new(n: usize, values: Vec<BigInt>) -> Result<Self, ClassIdError> {
        if n == 0 {
            return Err(ClassIdError::ZeroN);
        }
        let expected = prefix_len(n);
        if values.len() != expected {
            return Err(ClassIdError::WrongLength {
                n,
                expected,
                got: values.len(),
            });
        }
        Ok(XiPrefix { n, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }
}

pub fn xi_prefix(nu: &Partition) -> XiPrefix {
    let n = nu.weight();
    assert!(n > 0, "the empty partition has no hook characters");
    let xi = xi_values(n, nu).expect("weights agree");
    let values = (1..=prefix_len(n)).map(|j| xi[n - j].clone()).collect();
    XiPrefix { n, values }
}

/// Coefficients of `∏ (X^{ν_i} - 1)`, highest degree first.
pub fn product_polynomial(nu: &Partition) -> Vec<BigInt> {
    let mut coeffs = poly::product_of_cyclic(nu.parts());
    coeffs.reverse();
    coeffs
}

/// Parts below `m` read off a truncated `∏ (1 - X^{ν_i})`, smallest first.
/// Each trace entry is `(s, r_s)` at the moment part `s` is recorded.
fn peel(
    mut series: Vec<BigInt>,
    budget: usize,
) -> Result<(Vec<usize>, Vec<(usize, BigInt)>), ClassIdError> {
    let m = series.len();
    let mut found = Vec::new();
    let mut trace = Vec::new();
    let mut used = 0usize;
    for s in 1..m {
        let mut first = true;
        while !series[s].is_zero() {
            if series[s].is_positive() {
                return Err(ClassIdError::NotAClass(format!(
                    "coefficient of X^{s} is positive after removing smaller parts"
                )));
            }
            used += s;
            if used > budget {
                return Err(ClassIdError::NotAClass(
                    "small parts exceed n".to_string(),
                ));
            }
            if first {
                trace.push((s, series[s].clone()));
                first = false;
            }
            found.push(s);
            // Divide by (1 - X^s) modulo X^m.
            for j in s..m {
                let prev = series[j - s].clone();
                series[j] += prev;
            }
        }
    }
    Ok((found, trace))
}

/// Multisets of parts, each at least `min_part`, summing to `total`.
fn large_part_candidates(total: usize, min_part: usize) -> Vec<Vec<usize>> {
    fn go(total: usize, min_part: usize, max_part: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if total == 0 {
            out.push(acc.clone());
            return;
        }
        for part in (min_part..=max_part.min(total)).rev() {
            acc.push(part);
            go(total - part, min_part, part, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(total, min_part.max(1), total, &mut Vec::new(), &mut out);
    out
}

pub fn class_from_xi_prefix(prefix: &XiPrefix) -> Result<Partition, ClassIdError> {
    let n = prefix.n;
    if n == 1 {
        return if prefix.values[0].is_one() {
            Ok(Partition::row(1))
        } else {
            Err(ClassIdError::NotAClass("ξ_{1,0} must be 1".to_string()))
        };
    }
    let m = n / 2;
    // q_j = (-1)^{n-1-j} ξ_{n,n-1-j}, the coefficient of X^j in q(X).
    let q: Vec<BigInt> = prefix
        .values
        .iter()
        .enumerate()
        .map(|(j, v)| if (n - 1 - j).is_multiple_of(2) { v.clone() } else { -v })
        .collect();
    // p(X) = (X - 1) q(X), truncated.
    let mut p: Vec<BigInt> = Vec::with_capacity(m);
    p.push(-&q[0]);
    for j in 1..m {
        p.push(&q[j - 1] - &q[j]);
    }
    let odd_length = if p[0].is_one() {
        false
    } else if (-&p[0]).is_one() {
        true
    } else {
        return Err(ClassIdError::NotAClass(format!(
            "constant term {} is not ±1",
            p[0]
        )));
    };
    let series: Vec<BigInt> = if odd_length {
        p.into_iter().map(|c| -c).collect()
    } else {
        p
    };

    let (small, _) = peel(series, n)?;
    let remaining = n - small.iter().sum::<usize>();
    let mut matches = Vec::new();
    for big in large_part_candidates(remaining, m) {
        if (small.len() + big.len()) % 2 != usize::from(odd_length) {
            continue;
        }
        let mut parts = small.clone();
        parts.extend(big);
        let candidate = Partition::from_cycle_lengths(parts);
        // Reject prefixes that only agree with the candidate on parity.
        if xi_prefix(&candidate) == *prefix {
            matches.push(candidate);
        }
    }
    match matches.len() {
        0 => Err(ClassIdError::NotAClass(format!(
            "no class with small parts {small:?} and {remaining} further boxes fits"
        ))),
        1 => Ok(matches.pop().unwrap()),
        _ => Err(ClassIdError::Ambiguous(matches)),
    }
}
