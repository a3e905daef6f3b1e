//! Integer partitions and the combinatorics built on their Young diagrams.
//!
//! A [`Partition`] labels both an irreducible character and a conjugacy class
//! (cycle type) of the symmetric group. Rows and columns of diagrams are
//! indexed from 1, so box `(i, j)` sits in row `i` and column `j`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("parts must be weakly decreasing: {0:?}")]
    NotDecreasing(Vec<usize>),
    #[error("parts must be positive: {0:?}")]
    ZeroPart(Vec<usize>),
    #[error("cannot parse partition {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("operation requires a nonempty partition")]
    Empty,
    #[error("box ({row}, {col}) is not in the diagram of {partition}")]
    BoxOutside {
        partition: Partition,
        row: usize,
        col: usize,
    },
    #[error("invalid Frobenius symbol: {0}")]
    InvalidSymbol(SymbolViolation),
}

/// A weakly decreasing sequence of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, PartitionError> {
        if parts.contains(&0) {
            return Err(PartitionError::ZeroPart(parts));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::NotDecreasing(parts));
        }
        Ok(Partition { parts })
    }

    /// Builds a cycle type from cycle lengths in any order; zero lengths are dropped.
    pub fn from_cycle_lengths(mut lengths: Vec<usize>) -> Self {
        lengths.retain(|&p| p > 0);
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts: lengths }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The one-row partition `(n)`.
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Partition { parts: vec![n] }
        }
    }

    /// The one-column partition `(1, 1, ..., 1)`.
    pub fn column(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    /// The hook `(n - k, 1, ..., 1)` with `k` trailing ones. Requires `k < n`.
    pub fn hook(n: usize, k: usize) -> Self {
        assert!(k < n, "hook (n-k, 1^k) needs k < n");
        let mut parts = vec![n - k];
        parts.extend(std::iter::repeat_n(1, k));
        Partition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<usize> {
        self.parts
    }

    /// Number of parts, ℓ(λ).
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    /// The `i`-th part, 1-based; zero past the last row.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    /// Number of parts equal to `size`.
    pub fn multiplicity(&self, size: usize) -> usize {
        self.parts.iter().filter(|&&p| p == size).count()
    }

    /// `(size, multiplicity)` pairs in decreasing order of size.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((size, m)) if *size == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    pub fn is_hook(&self) -> bool {
        self.parts.iter().skip(1).all(|&p| p == 1)
    }

    /// Appends ones until the weight reaches `n`. Returns `None` if the weight
    /// already exceeds `n`.
    pub fn padded_to(&self, n: usize) -> Option<Partition> {
        let w = self.weight();
        if w > n {
            return None;
        }
        let mut parts = self.parts.clone();
        parts.extend(std::iter::repeat_n(1, n - w));
        Some(Partition { parts })
    }

    pub fn contains_box(&self, row: usize, col: usize) -> bool {
        row >= 1 && col >= 1 && self.part(row) >= col
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(1);
        let parts = (1..=width)
            .map(|i| self.parts.iter().take_while(|&&p| p >= i).count())
            .collect();
        Partition { parts }
    }

    /// Length of the hook at box `(row, col)`.
    pub fn hook_length(&self, row: usize, col: usize) -> Result<usize, PartitionError> {
        if !self.contains_box(row, col) {
            return Err(PartitionError::BoxOutside {
                partition: self.clone(),
                row,
                col,
            });
        }
        let col_len = self.parts.iter().take_while(|&&p| p >= col).count();
        Ok(self.part(row) - col + col_len - row + 1)
    }

    /// All hook lengths, row by row.
    pub fn hook_lengths(&self) -> Vec<usize> {
        let conj = self.conjugate();
        let mut out = Vec::with_capacity(self.weight());
        for (r, &len) in self.parts.iter().enumerate() {
            for c in 0..len {
                out.push(len - c + conj.parts[c] - r - 1);
            }
        }
        out
    }

    /// Number of diagonal boxes, 𝔨(λ).
    pub fn diagonal_length(&self) -> usize {
        self.parts
            .iter()
            .enumerate()
            .take_while(|(i, &p)| p > *i)
            .count()
    }

    /// The subdiagram of boxes weakly south-east of `(i, i)`, re-anchored at `(1, 1)`.
    pub fn corner_subpartition(&self, i: usize) -> Partition {
        let parts = self
            .parts
            .iter()
            .skip(i.saturating_sub(1))
            .filter(|&&p| p >= i)
            .map(|&p| p - (i - 1))
            .collect();
        Partition { parts }
    }

    /// Sum of the contents `j - i` over all boxes.
    pub fn content_sum(&self) -> i64 {
        self.parts
            .iter()
            .enumerate()
            .map(|(r, &p)| {
                let p = p as i64;
                p * (p + 1) / 2 - (r as i64 + 1) * p
            })
            .sum()
    }

    pub fn principal_hook_data(&self) -> Result<PrincipalHookData, PartitionError> {
        if self.is_empty() {
            return Err(PartitionError::Empty);
        }
        let conj = self.conjugate();
        let k = self.diagonal_length();
        let mut data = PrincipalHookData::default();
        for i in 1..=k {
            let arm = self.part(i) - i;
            let leg = conj.part(i) - i;
            data.arms.push(arm);
            data.legs.push(leg);
            data.hooks.push(arm + leg + 1);
            data.contents.push(self.corner_subpartition(i).content_sum());
        }
        Ok(data)
    }

    pub fn to_frobenius(&self) -> Result<FrobeniusSymbol, PartitionError> {
        let data = self.principal_hook_data()?;
        Ok(FrobeniusSymbol {
            arms: data.arms.iter().map(|&a| a as i64).collect(),
            legs: data.legs.iter().map(|&b| b as i64).collect(),
        })
    }

    pub fn from_frobenius(symbol: &FrobeniusSymbol) -> Result<Partition, PartitionError> {
        symbol.check().map_err(PartitionError::InvalidSymbol)?;
        let k = symbol.len();
        let arms: Vec<usize> = symbol.arms.iter().map(|&a| a as usize).collect();
        let legs: Vec<usize> = symbol.legs.iter().map(|&b| b as usize).collect();
        let mut parts: Vec<usize> = (0..k).map(|i| arms[i] + i + 1).collect();
        // Rows below the diagonal block only meet the first k columns.
        let depth = legs.first().map_or(0, |&b| b + 1);
        for row in (k + 1)..=depth {
            parts.push((0..k).filter(|&j| legs[j] + j + 1 >= row).count());
        }
        Ok(Partition { parts })
    }

    /// The β-set `{λ_i + ℓ - i}` (first-column hook lengths), strictly decreasing.
    pub fn beta_set(&self) -> Vec<usize> {
        let len = self.len();
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &p)| p + len - 1 - i)
            .collect()
    }

    fn from_beta_set(beta: &[usize]) -> Partition {
        let len = beta.len();
        let parts = beta
            .iter()
            .enumerate()
            .map(|(i, &b)| b - (len - 1 - i))
            .filter(|&p| p > 0)
            .collect();
        Partition { parts }
    }

    /// All removals of a border strip with `length` boxes.
    ///
    /// Each entry is the remaining partition together with the strip's height
    /// (rows spanned minus one). Results are ordered by the row in which the
    /// strip starts, top row first.
    pub fn rim_hooks(&self, length: usize) -> Vec<(Partition, usize)> {
        if length == 0 || self.is_empty() {
            return Vec::new();
        }
        let beta = self.beta_set();
        let mut out = Vec::new();
        for (idx, &b) in beta.iter().enumerate() {
            if b < length {
                // β is decreasing, so no later entry can be shifted either.
                break;
            }
            let target = b - length;
            if beta.binary_search_by(|x| target.cmp(x)).is_ok() {
                continue;
            }
            let height = beta[idx + 1..].iter().take_while(|&&x| x > target).count();
            let mut shifted: Vec<usize> = beta.clone();
            shifted.remove(idx);
            let pos = shifted.partition_point(|&x| x > target);
            shifted.insert(pos, target);
            out.push((Partition::from_beta_set(&shifted), height));
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = PartitionError;

    /// Parses the comma-separated form, e.g. `4,3,1`. The empty string is the
    /// empty partition.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = trimmed
            .split(',')
            .map(|tok| {
                tok.trim().parse::<usize>().map_err(|e| PartitionError::Parse {
                    input: s.to_string(),
                    reason: e.to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Arms, legs, hook lengths and content sums along the main diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PrincipalHookData {
    pub arms: Vec<usize>,
    pub legs: Vec<usize>,
    pub hooks: Vec<usize>,
    /// `contents[i-1]` is the content sum of the corner subpartition λ(i, i).
    pub contents: Vec<i64>,
}

impl PrincipalHookData {
    pub fn k(&self) -> usize {
        self.hooks.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum SymbolViolation {
    #[error("arm and leg sequences have different lengths ({arms} vs {legs})")]
    LengthMismatch { arms: usize, legs: usize },
    #[error("arms are not strictly decreasing at position {0}")]
    ArmsNotDecreasing(usize),
    #[error("legs are not strictly decreasing at position {0}")]
    LegsNotDecreasing(usize),
    #[error("arm at position {0} is negative")]
    NegativeArm(usize),
    #[error("leg at position {0} is negative")]
    NegativeLeg(usize),
}

/// A pair `(a | b)` of integer sequences. Construction never fails; use
/// [`FrobeniusSymbol::check`] to see whether it encodes a partition.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FrobeniusSymbol {
    pub arms: Vec<i64>,
    pub legs: Vec<i64>,
}

impl FrobeniusSymbol {
    pub fn new(arms: Vec<i64>, legs: Vec<i64>) -> Self {
        FrobeniusSymbol { arms, legs }
    }

    pub fn len(&self) -> usize {
        self.arms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arms.is_empty()
    }

    pub fn check(&self) -> Result<(), SymbolViolation> {
        if self.arms.len() != self.legs.len() {
            return Err(SymbolViolation::LengthMismatch {
                arms: self.arms.len(),
                legs: self.legs.len(),
            });
        }
        fn strict(seq: &[i64]) -> Option<usize> {
            seq.windows(2).position(|w| w[0] <= w[1]).map(|i| i + 1)
        }
        if let Some(i) = strict(&self.arms) {
            return Err(SymbolViolation::ArmsNotDecreasing(i));
        }
        if let Some(i) = strict(&self.legs) {
            return Err(SymbolViolation::LegsNotDecreasing(i));
        }
        if let Some(i) = self.arms.iter().position(|&a| a < 0) {
            return Err(SymbolViolation::NegativeArm(i));
        }
        if let Some(i) = self.legs.iter().position(|&b| b < 0) {
            return Err(SymbolViolation::NegativeLeg(i));
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.check().is_ok()
    }

    /// `Σ (a_i + b_i + 1)`, the weight the symbol would encode.
    pub fn weight(&self) -> i64 {
        self.arms
            .iter()
            .zip(&self.legs)
            .map(|(a, b)| a + b + 1)
            .sum()
    }
}

impl fmt::Display for FrobeniusSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[i64]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "({} | {})", join(&self.arms), join(&self.legs))
    }
}

/// Iterator over the partitions of `n` in reverse lexicographic order,
/// starting from `(n)` and ending at `(1, ..., 1)`.
#[derive(Debug, Clone)]
pub struct Partitions {
    next: Option<Vec<usize>>,
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.next.take()?;
        let mut parts = current.clone();
        if let Some(i) = parts.iter().rposition(|&p| p > 1) {
            let v = parts[i] - 1;
            // The trailing ones plus the box taken from part i are
            // redistributed greedily in parts of size at most v.
            let mut remaining = parts.len() - i;
            parts.truncate(i);
            parts.push(v);
            while remaining > 0 {
                let take = remaining.min(v);
                parts.push(take);
                remaining -= take;
            }
            self.next = Some(parts);
        }
        Some(Partition { parts: current })
    }
}

pub fn enumerate_partitions(n: usize) -> Partitions {
    Partitions {
        next: Some(if n == 0 { Vec::new() } else { vec![n] }),
    }
}

/// Number of partitions of `n`, via Euler's pentagonal-number recurrence.
pub fn partition_count(n: usize) -> BigUint {
    partition_counts(n).pop().unwrap_or_else(BigUint::one)
}

/// `p_0, ..., p_n`.
pub fn partition_counts(n: usize) -> Vec<BigUint> {
    let mut p: Vec<BigUint> = Vec::with_capacity(n + 1);
    p.push(BigUint::one());
    for m in 1..=n {
        let mut plus = BigUint::zero();
        let mut minus = BigUint::zero();
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let g2 = k * (3 * k + 1) / 2;
            let acc = if k % 2 == 1 { &mut plus } else { &mut minus };
            *acc += &p[m - g1];
            if g2 <= m {
                *acc += &p[m - g2];
            }
        }
        p.push(plus - minus);
    }
    p
}

/// Hardy–Ramanujan leading term `exp(π √(2n/3)) / (4n√3)`.
pub fn asymptotic_count(n: usize) -> f64 {
    let n = n as f64;
    (2.0 * std::f64::consts::PI / 6f64.sqrt() * n.sqrt()).exp() / (4.0 * n * 3f64.sqrt())
}
