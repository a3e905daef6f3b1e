//! Brute-force checks of auxiliary facts about small character tables.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::Signed;

use crate::charvalues::{centralizer_order, CharTable};
use crate::partitions::Partition;

/// Values of `n` at which some non-hook shares a degree with a hook.
pub const HOOK_DEGREE_EXCEPTIONS: [usize; 5] = [6, 12, 15, 24, 35];

/// Classes `μ` on which every irreducible takes a value in `{0, 1, -1}`.
pub fn sign_partitions(table: &CharTable) -> Vec<Partition> {
    let d = table.dim();
    (0..d)
        .filter(|&j| (0..d).all(|i| table.value(i, j).abs() <= BigInt::from(1)))
        .map(|j| table.cols[j].clone())
        .collect()
}

/// Classes with `Σ_λ |χ_λ(μ)|² = n`, which is `z_μ = n`.
pub fn small_centralizer_classes(table: &CharTable) -> Vec<Partition> {
    let n = BigInt::from(table.n);
    table
        .cols
        .iter()
        .filter(|mu| centralizer_order(mu) == n)
        .cloned()
        .collect()
}

/// Classes satisfying both conditions: a sign partition with `Σ_λ |χ_λ(μ)|² = n`.
pub fn tight_sign_classes(table: &CharTable) -> Vec<Partition> {
    let small: BTreeSet<Partition> = small_centralizer_classes(table).into_iter().collect();
    sign_partitions(table)
        .into_iter()
        .filter(|mu| small.contains(mu))
        .collect()
}

pub fn expected_tight_sign_classes(n: usize) -> BTreeSet<Partition> {
    let mut set = BTreeSet::new();
    set.insert(Partition::row(n));
    let extra = match n {
        2 => Some(vec![1, 1]),
        4 => Some(vec![2, 1, 1]),
        6 => Some(vec![3, 2, 1]),
        _ => None,
    };
    if let Some(parts) = extra {
        set.insert(Partition::new(parts).unwrap());
    }
    set
}

/// Non-hook irreducibles whose degree is some `binom(n-1, k)`.
pub fn hook_degree_collisions(table: &CharTable) -> Vec<Partition> {
    let n = table.n;
    let hook_degrees: BTreeSet<BigInt> = (0..n)
        .map(|k| binomial(BigInt::from(n - 1), BigInt::from(k)))
        .collect();
    let identity = table
        .col_index(&Partition::column(n))
        .expect("identity class");
    (0..table.dim())
        .filter(|&i| !table.rows[i].is_hook())
        .filter(|&i| hook_degrees.contains(table.value(i, identity)))
        .map(|i| table.rows[i].clone())
        .collect()
}

/// Hooks whose degree differs from `binom(n-1, k)`; always empty for a correct table.
pub fn misplaced_hook_degrees(table: &CharTable) -> Vec<Partition> {
    let n = table.n;
    let identity = table
        .col_index(&Partition::column(n))
        .expect("identity class");
    (0..n)
        .filter_map(|k| {
            let hook = Partition::hook(n, k);
            let i = table.row_index(&hook)?;
            let want = binomial(BigInt::from(n - 1), BigInt::from(k));
            (table.value(i, identity) != &want).then_some(hook)
        })
        .collect()
}
