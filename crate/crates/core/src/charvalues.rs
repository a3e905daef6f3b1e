//! Exact character values of the symmetric group.
//!
//! Values are computed with the Murnaghan–Nakayama rule: strip rim hooks of
//! the largest remaining cycle length, signing each removal by its height.
//! Intermediate results are memoized on `(shape, remaining cycle type)`.

use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::json::exact;
use crate::partitions::{enumerate_partitions, Partition, PartitionError};
use crate::poly;

/// Largest `n` for which [`character_table`] materializes a full table.
pub const DEFAULT_TABLE_LIMIT: usize = 16;

/// Memo entries kept before the cache is cleared wholesale.
pub const DEFAULT_CACHE_BUDGET: usize = 1 << 21;

#[derive(Debug, Error)]
pub enum CharValueError {
    #[error("character {lambda} and class {mu} have different weights")]
    WeightMismatch { lambda: Partition, mu: Partition },
    #[error("n = {n} exceeds the table limit {limit}")]
    TableTooLarge { n: usize, limit: usize },
    #[error("n must be at least 1")]
    ZeroDegree,
    #[error("malformed table file: {0}")]
    BadTable(String),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

type MemoKey = (Vec<usize>, Vec<usize>);

/// Murnaghan–Nakayama evaluator with a bounded, thread-safe memo.
///
/// Concurrent callers share one cache; writes are serialized by a mutex and
/// the lock is never held across a recursive call.
#[derive(Debug)]
pub struct MnEvaluator {
    cache: Mutex<HashMap<MemoKey, BigInt>>,
    budget: usize,
    resets: AtomicUsize,
}

impl Default for MnEvaluator {
    fn default() -> Self {
        Self::with_budget(DEFAULT_CACHE_BUDGET)
    }
}

impl MnEvaluator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_budget(budget: usize) -> Self {
        MnEvaluator {
            cache: Mutex::new(HashMap::new()),
            budget: budget.max(1),
            resets: AtomicUsize::new(0),
        }
    }

    /// The evaluator shared by the free functions in this module.
    pub fn shared() -> &'static MnEvaluator {
        static SHARED: OnceLock<MnEvaluator> = OnceLock::new();
        SHARED.get_or_init(MnEvaluator::default)
    }

    pub fn value(&self, lambda: &Partition, mu: &Partition) -> Result<BigInt, CharValueError> {
        if lambda.weight() != mu.weight() {
            return Err(CharValueError::WeightMismatch {
                lambda: lambda.clone(),
                mu: mu.clone(),
            });
        }
        Ok(self.eval(lambda, mu.parts()))
    }

    pub fn cache_len(&self) -> usize {
        self.cache.lock().expect("memo poisoned").len()
    }

    /// How many times the cache overflowed its budget and was cleared.
    pub fn resets(&self) -> usize {
        self.resets.load(Ordering::Relaxed)
    }

    // `cycles` is weakly decreasing, so the head is always the largest part.
    fn eval(&self, lambda: &Partition, cycles: &[usize]) -> BigInt {
        let Some((&head, rest)) = cycles.split_first() else {
            return BigInt::one();
        };
        let key = (lambda.parts().to_vec(), cycles.to_vec());
        if let Some(v) = self.cache.lock().expect("memo poisoned").get(&key) {
            return v.clone();
        }
        let mut total = BigInt::zero();
        for (smaller, height) in lambda.rim_hooks(head) {
            let v = self.eval(&smaller, rest);
            if height % 2 == 0 {
                total += v;
            } else {
                total -= v;
            }
        }
        let mut cache = self.cache.lock().expect("memo poisoned");
        if cache.len() >= self.budget {
            cache.clear();
            self.resets.fetch_add(1, Ordering::Relaxed);
        }
        cache.insert(key, total.clone());
        total
    }
}

/// `χ_λ(μ)` for partitions of the same `n`.
pub fn character_value(lambda: &Partition, mu: &Partition) -> Result<BigInt, CharValueError> {
    MnEvaluator::shared().value(lambda, mu)
}

/// `n!` over the product of all hook lengths.
pub fn degree(lambda: &Partition) -> BigInt {
    let n = lambda.weight();
    let factorial: BigInt = (1..=n).map(BigInt::from).product();
    let hooks: BigInt = lambda.hook_lengths().into_iter().map(BigInt::from).product();
    factorial / hooks
}

/// `z_μ = ∏_j j^{m_j} m_j!`, the order of the centralizer of an element of type μ.
pub fn centralizer_order(mu: &Partition) -> BigInt {
    mu.multiplicities()
        .into_iter()
        .map(|(size, m)| {
            let fact: BigInt = (1..=m).map(BigInt::from).product();
            BigInt::from(size).pow(m as u32) * fact
        })
        .product()
}

/// Values `(ξ_{n,0}(ν), ..., ξ_{n,n-1}(ν))` of the hook characters
/// `ξ_{n,k} = χ_{(n-k, 1^k)}`, read off `∏ (X^{ν_i} - 1) / (X - 1)`.
pub fn xi_values(n: usize, nu: &Partition) -> Result<Vec<BigInt>, CharValueError> {
    if nu.weight() != n {
        return Err(CharValueError::WeightMismatch {
            lambda: Partition::row(n),
            mu: nu.clone(),
        });
    }
    if n == 0 {
        return Err(CharValueError::ZeroDegree);
    }
    let product = poly::product_of_cyclic(nu.parts());
    let quotient = poly::div_x_minus_one(&product).expect("X = 1 is a root of every factor");
    // quotient[j] is the coefficient of X^j; ξ_{n,k} sits at X^{n-1-k}.
    Ok((0..n)
        .map(|k| {
            let c = quotient[n - 1 - k].clone();
            if k % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect())
}

/// A full character table: `values[i][j] = χ_{rows[i]}(cols[j])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharTable {
    pub n: usize,
    pub rows: Vec<Partition>,
    pub cols: Vec<Partition>,
    pub values: Vec<Vec<BigInt>>,
}

pub fn character_table(n: usize) -> Result<CharTable, CharValueError> {
    character_table_with_limit(n, DEFAULT_TABLE_LIMIT)
}

pub fn character_table_with_limit(n: usize, limit: usize) -> Result<CharTable, CharValueError> {
    if n == 0 {
        return Err(CharValueError::ZeroDegree);
    }
    if n > limit {
        return Err(CharValueError::TableTooLarge { n, limit });
    }
    let labels: Vec<Partition> = enumerate_partitions(n).collect();
    let mn = MnEvaluator::shared();
    let values = labels
        .iter()
        .map(|lambda| {
            labels
                .iter()
                .map(|mu| mn.eval(lambda, mu.parts()))
                .collect()
        })
        .collect();
    Ok(CharTable {
        n,
        rows: labels.clone(),
        cols: labels,
        values,
    })
}

impl CharTable {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn value(&self, row: usize, col: usize) -> &BigInt {
        &self.values[row][col]
    }

    pub fn row_index(&self, lambda: &Partition) -> Option<usize> {
        self.rows.iter().position(|r| r == lambda)
    }

    pub fn col_index(&self, mu: &Partition) -> Option<usize> {
        self.cols.iter().position(|c| c == mu)
    }

    /// Header row of class labels; each following row is a character label
    /// then its values.
    pub fn write_csv<W: std::io::Write>(&self, out: W) -> Result<(), CharValueError> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["character".to_string()];
        header.extend(self.cols.iter().map(|c| c.to_string()));
        w.write_record(&header)?;
        for (label, row) in self.rows.iter().zip(&self.values) {
            let mut record = vec![label.to_string()];
            record.extend(row.iter().map(|v| v.to_string()));
            w.write_record(&record)?;
        }
        w.flush().map_err(csv::Error::from)?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv is utf-8")
    }

    pub fn read_csv<R: std::io::Read>(input: R) -> Result<CharTable, CharValueError> {
        let mut rdr = csv::ReaderBuilder::new().has_headers(false).from_reader(input);
        let mut records = rdr.records();
        let header = records
            .next()
            .ok_or_else(|| CharValueError::BadTable("empty file".into()))??;
        let cols = header
            .iter()
            .skip(1)
            .map(|s| s.parse::<Partition>())
            .collect::<Result<Vec<_>, _>>()?;
        let n = cols.first().map(Partition::weight).unwrap_or(0);
        if n == 0 || cols.iter().any(|c| c.weight() != n) {
            return Err(CharValueError::BadTable(
                "class labels must be partitions of one n >= 1".into(),
            ));
        }
        let mut rows = Vec::new();
        let mut values = Vec::new();
        for record in records {
            let record = record?;
            if record.len() != cols.len() + 1 {
                return Err(CharValueError::BadTable(format!(
                    "row has {} cells, expected {}",
                    record.len(),
                    cols.len() + 1
                )));
            }
            let label: Partition = record[0].parse()?;
            if label.weight() != n {
                return Err(CharValueError::BadTable(format!(
                    "character label {label} is not a partition of {n}"
                )));
            }
            let row = record
                .iter()
                .skip(1)
                .map(|s| {
                    s.trim()
                        .parse::<BigInt>()
                        .map_err(|e| CharValueError::BadTable(format!("{s:?}: {e}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(label);
            values.push(row);
        }
        Ok(CharTable {
            n,
            rows,
            cols,
            values,
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "rows": self.rows,
            "cols": self.cols,
            "values": self
                .values
                .iter()
                .map(|row| row.iter().map(exact).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }

    /// Pairs `(j, k)` of columns where `Σ_λ χ_λ(μ_j) χ_λ(μ_k) ≠ z_{μ_j} δ_{jk}`.
    pub fn orthogonality_defects(&self) -> Vec<(usize, usize)> {
        let d = self.dim();
        let mut bad = Vec::new();
        for j in 0..d {
            for k in j..d {
                let inner: BigInt = (0..d)
                    .map(|i| &self.values[i][j] * &self.values[i][k])
                    .sum();
                let expected = if j == k {
                    centralizer_order(&self.cols[j])
                } else {
                    BigInt::zero()
                };
                if inner != expected {
                    bad.push((j, k));
                }
            }
        }
        bad
    }
}

/// Quotient of an exact division; `None` on a remainder or a zero divisor.
pub(crate) fn exact_div(value: &BigInt, divisor: &BigInt) -> Option<BigInt> {
    if divisor.is_zero() {
        return None;
    }
    let (q, r) = value.div_rem(divisor);
    r.is_zero().then_some(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    /// Character of S_3 computed from the permutation matrices: the standard
    /// representation is the permutation character minus the trivial one.
    fn s3_standard_by_matrices(cycle: &Partition) -> i64 {
        let perms: [[usize; 3]; 6] = [
            [0, 1, 2],
            [1, 0, 2],
            [0, 2, 1],
            [2, 1, 0],
            [1, 2, 0],
            [2, 0, 1],
        ];
        let cycle_type = |perm: &[usize; 3]| {
            let mut seen = [false; 3];
            let mut lens = Vec::new();
            for s in 0..3 {
                if !seen[s] {
                    let mut len = 0;
                    let mut x = s;
                    while !seen[x] {
                        seen[x] = true;
                        x = perm[x];
                        len += 1;
                    }
                    lens.push(len);
                }
            }
            Partition::from_cycle_lengths(lens)
        };
        let perm = perms.iter().find(|g| &cycle_type(g) == cycle).unwrap();
        let fixed = (0..3).filter(|&i| perm[i] == i).count() as i64;
        fixed - 1
    }

    #[test]
    fn mn_examples() {
        assert_eq!(character_value(&p("2,1"), &p("1,1,1")).unwrap(), big(2));
        assert_eq!(character_value(&p("2,1"), &p("3")).unwrap(), big(-1));
        assert_eq!(character_value(&p("4,3,1"), &p("8")).unwrap(), big(0));
        for mu in enumerate_partitions(3) {
            assert_eq!(
                character_value(&p("2,1"), &mu).unwrap(),
                big(s3_standard_by_matrices(&mu))
            );
        }
        assert!(matches!(
            character_value(&p("2,1"), &p("2")),
            Err(CharValueError::WeightMismatch { .. })
        ));
    }

    #[test]
    fn degrees() {
        assert_eq!(degree(&p("4,3,1")), big(70));
        assert_eq!(degree(&p("9")), big(1));
        assert_eq!(degree(&p("2,2")), big(2));
    }

    #[test]
    fn centralizers() {
        assert_eq!(centralizer_order(&p("1,1,1")), big(6));
        assert_eq!(centralizer_order(&p("3")), big(3));
        assert_eq!(centralizer_order(&p("2,2")), big(8));
    }

    #[test]
    fn xi_examples() {
        let v: Vec<BigInt> = [1, -1, -1, 1].iter().map(|&x| big(x)).collect();
        assert_eq!(xi_values(4, &p("2,2")).unwrap(), v);
        for n in 1..10usize {
            let row = xi_values(n, &Partition::row(n)).unwrap();
            let alt: Vec<BigInt> = (0..n).map(|k| big(if k % 2 == 0 { 1 } else { -1 })).collect();
            assert_eq!(row, alt);
            let id = xi_values(n, &Partition::column(n)).unwrap();
            let binoms: Vec<BigInt> = (0..n)
                .map(|k| num_integer::binomial(big(n as i64 - 1), big(k as i64)))
                .collect();
            assert_eq!(id, binoms);
        }
        assert!(xi_values(5, &p("2,2")).is_err());
    }

    #[test]
    fn small_tables() {
        let t1 = character_table(1).unwrap();
        assert_eq!(t1.values, vec![vec![big(1)]]);
        let t3 = character_table(3).unwrap();
        let id = t3.col_index(&p("1,1,1")).unwrap();
        let degs: Vec<BigInt> = (0..3).map(|i| t3.value(i, id).clone()).collect();
        assert_eq!(degs, vec![big(1), big(2), big(1)]);
        let t4 = character_table(4).unwrap();
        let r = t4.row_index(&p("3,1")).unwrap();
        let c = t4.col_index(&p("2,2")).unwrap();
        assert_eq!(t4.value(r, c), &big(-1));
        assert_eq!(t4.value(r, c), &xi_values(4, &p("2,2")).unwrap()[1]);
        assert!(matches!(
            character_table(17),
            Err(CharValueError::TableTooLarge { n: 17, limit: 16 })
        ));
        assert!(character_table_with_limit(5, 4).is_err());
    }

    #[test]
    fn csv_round_trip() {
        let t = character_table(5).unwrap();
        let text = t.to_csv_string();
        assert!(text.starts_with("character,5,\"4,1\""));
        let back = CharTable::read_csv(text.as_bytes()).unwrap();
        assert_eq!(back, t);
        assert!(CharTable::read_csv("character,2\n2,1,1\n".as_bytes()).is_err());
    }

    #[test]
    fn bounded_cache_resets_without_changing_values() {
        let tiny = MnEvaluator::with_budget(8);
        for lambda in enumerate_partitions(7) {
            for mu in enumerate_partitions(7) {
                assert_eq!(
                    tiny.value(&lambda, &mu).unwrap(),
                    character_value(&lambda, &mu).unwrap()
                );
            }
        }
        assert!(tiny.resets() > 0);
        assert!(tiny.cache_len() <= 8);
    }

    #[test]
    fn concurrent_callers_agree() {
        let shapes: Vec<Partition> = enumerate_partitions(10).collect();
        let local = MnEvaluator::new();
        let expected: Vec<BigInt> = shapes
            .iter()
            .map(|l| local.value(l, &p("3,3,2,1,1")).unwrap())
            .collect();
        let shared = MnEvaluator::new();
        std::thread::scope(|s| {
            for _ in 0..4 {
                s.spawn(|| {
                    for (l, e) in shapes.iter().zip(&expected) {
                        assert_eq!(&shared.value(l, &p("3,3,2,1,1")).unwrap(), e);
                    }
                });
            }
        });
    }

    #[test]
    fn sign_twist_and_degree_identity() {
        for n in 1..=12usize {
            for lambda in enumerate_partitions(n) {
                let conj = lambda.conjugate();
                assert_eq!(
                    degree(&lambda),
                    character_value(&lambda, &Partition::column(n)).unwrap()
                );
                for mu in enumerate_partitions(n) {
                    let v = character_value(&lambda, &mu).unwrap();
                    let twisted = if (n - mu.len()) % 2 == 0 { v } else { -v };
                    assert_eq!(twisted, character_value(&conj, &mu).unwrap());
                }
            }
        }
    }
}
