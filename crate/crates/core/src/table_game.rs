//! The covered character table game.
//!
//! A character table of `S_n` is shown with its rows and columns in a hidden
//! order and every entry covered. Entries are uncovered one at a time until
//! each row is known as some `χ_λ` and each column as some class. For
//! `n ≥ 7` the strategy locates the hook characters through the trivial,
//! standard and degree-(n-1) columns and rows, reads every class off the
//! hook values with [`class_from_xi_prefix`], then identifies every row with
//! [`identify_character`] once columns are labelled.
//!
//! Scan orders are fixed: rows top to bottom and columns left to right in
//! hidden-index order, so query counts are reproducible for a given seed.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_xoshiro::SplitMix64;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::char_id::{
    identify_character, CharacterOracle, IdentifyError, OracleError, Outcome, ValueSource,
};
use crate::charvalues::{character_table, CharTable, CharValueError, MnEvaluator, DEFAULT_TABLE_LIMIT};
use crate::class_id::{class_from_xi_prefix, XiPrefix};
use crate::partitions::{enumerate_partitions, partition_count, Partition};

#[derive(Debug, Error)]
pub enum GameError {
    #[error("S_{0} tables have automorphisms; rows and columns cannot be identified")]
    Unidentifiable(usize),
    #[error("n must be at least 1")]
    ZeroN,
    #[error("table is not a character table of S_n: {0}")]
    Corrupt(String),
    #[error(transparent)]
    Table(#[from] CharValueError),
    #[error(transparent)]
    Identify(#[from] IdentifyError),
}

fn corrupt(msg: impl Into<String>) -> GameError {
    GameError::Corrupt(msg.into())
}

#[derive(Debug, Clone)]
enum Entries {
    Table(Arc<CharTable>),
    /// Entries computed on request, for tables too large to materialize.
    OnDemand { labels: Arc<Vec<Partition>> },
}

/// A character table with hidden row and column permutations.
#[derive(Debug, Clone)]
pub struct CoveredTable {
    n: usize,
    entries: Entries,
    /// Hidden row index -> canonical row index.
    row_perm: Vec<usize>,
    col_perm: Vec<usize>,
    uncovered: HashMap<(usize, usize), BigInt>,
}

impl CoveredTable {
    /// Shuffles the canonical table of `S_n` with a seeded SplitMix64
    /// generator (rows first, then columns, each by Fisher–Yates).
    pub fn shuffled(n: usize, seed: u64) -> Result<Self, GameError> {
        if n == 0 {
            return Err(GameError::ZeroN);
        }
        let entries = if n <= DEFAULT_TABLE_LIMIT {
            Entries::Table(Arc::new(character_table(n)?))
        } else {
            Entries::OnDemand {
                labels: Arc::new(enumerate_partitions(n).collect()),
            }
        };
        let dim = match &entries {
            Entries::Table(t) => t.dim(),
            Entries::OnDemand { labels } => labels.len(),
        };
        let mut rng = SplitMix64::seed_from_u64(seed);
        let mut row_perm: Vec<usize> = (0..dim).collect();
        let mut col_perm: Vec<usize> = (0..dim).collect();
        row_perm.shuffle(&mut rng);
        col_perm.shuffle(&mut rng);
        Ok(CoveredTable {
            n,
            entries,
            row_perm,
            col_perm,
            uncovered: HashMap::new(),
        })
    }

    /// Covers `table` with explicit permutations (hidden index -> canonical index).
    pub fn with_permutations(table: CharTable, row_perm: Vec<usize>, col_perm: Vec<usize>) -> Self {
        assert_eq!(row_perm.len(), table.dim());
        assert_eq!(col_perm.len(), table.dim());
        CoveredTable {
            n: table.n,
            entries: Entries::Table(Arc::new(table)),
            row_perm,
            col_perm,
            uncovered: HashMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `p_n`, the number of rows and of columns.
    pub fn dim(&self) -> usize {
        self.row_perm.len()
    }

    /// Uncovers entry `(row, col)`; repeats are free.
    pub fn query(&mut self, row: usize, col: usize) -> BigInt {
        if let Some(v) = self.uncovered.get(&(row, col)) {
            return v.clone();
        }
        let (r, c) = (self.row_perm[row], self.col_perm[col]);
        let value = match &self.entries {
            Entries::Table(t) => t.value(r, c).clone(),
            Entries::OnDemand { labels } => MnEvaluator::shared()
                .value(&labels[r], &labels[c])
                .expect("labels are partitions of n"),
        };
        self.uncovered.insert((row, col), value.clone());
        value
    }

    pub fn known(&self, row: usize, col: usize) -> Option<&BigInt> {
        self.uncovered.get(&(row, col))
    }

    pub fn query_count(&self) -> usize {
        self.uncovered.len()
    }

    fn label(&self, canonical: usize) -> &Partition {
        match &self.entries {
            Entries::Table(t) => &t.rows[canonical],
            Entries::OnDemand { labels } => &labels[canonical],
        }
    }

    /// Answer key for a hidden row. Only used to check a finished game.
    pub fn hidden_row_label(&self, row: usize) -> &Partition {
        self.label(self.row_perm[row])
    }

    pub fn hidden_col_label(&self, col: usize) -> &Partition {
        self.label(self.col_perm[col])
    }
}

/// Step 1: uncover whole rows until one is not linear; its unique largest
/// entry sits in the identity column.
pub fn locate_identity_column(t: &mut CoveredTable) -> Result<usize, GameError> {
    let dim = t.dim();
    for i in 0..dim {
        let row: Vec<BigInt> = (0..dim).map(|j| t.query(i, j)).collect();
        if row.iter().all(|v| v.abs().is_one()) {
            continue;
        }
        let max = row.iter().max().expect("nonempty row");
        let winners: Vec<usize> = (0..dim).filter(|&j| &row[j] == max).collect();
        return match winners.as_slice() {
            [a] => Ok(*a),
            _ => Err(corrupt(format!("row {i} has no unique largest entry"))),
        };
    }
    Err(corrupt("every row is linear"))
}

/// Step 2: read the identity column and return the two rows of degree `n - 1`.
pub fn locate_degree_rows(t: &mut CoveredTable, a: usize) -> Result<(usize, usize), GameError> {
    let target = BigInt::from(t.n() - 1);
    let rows: Vec<usize> = (0..t.dim()).filter(|&i| t.query(i, a) == target).collect();
    match rows.as_slice() {
        [r, s] => Ok((*r, *s)),
        _ => Err(corrupt(format!(
            "{} rows have degree n-1, expected 2",
            rows.len()
        ))),
    }
}

/// Positions found in step 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BasicColumns {
    /// Row of `ξ_1 = χ_{(n-1,1)}`.
    pub standard_row: usize,
    /// Row of `ξ_{n-2} = χ_{(2,1^{n-2})}`.
    pub partner_row: usize,
    /// Column of the class of `(1 2)`.
    pub transposition: usize,
    /// Column of the class of `(1 2 3)`.
    pub three_cycle: usize,
    /// Column of the class of `(1 2)(3 4)`.
    pub double_transposition: usize,
}

/// Step 3. On the degree-(n-1) rows the values are `±(fix(μ) - 1)`, so the
/// classes `(2,1^{n-2})`, `(3,1^{n-3})` and the pair `(4,1^{n-4})`,
/// `(2,2,1^{n-4})` show up as the absolute values `n-3`, `n-4`, `n-5`. When a
/// single target is missing and a single column is left, that column is taken
/// without uncovering it.
pub fn locate_basic_columns(
    t: &mut CoveredTable,
    a: usize,
    (r, s): (usize, usize),
) -> Result<BasicColumns, GameError> {
    let n = t.n();
    let dim = t.dim();
    let (want_b, want_c, want_e) = (BigInt::from(n - 3), BigInt::from(n - 4), BigInt::from(n - 5));
    let mut b: Option<usize> = None;
    let mut c: Option<usize> = None;
    let mut e: Vec<usize> = Vec::new();
    let candidates: Vec<usize> = (0..dim).filter(|&j| j != a).collect();
    for (pos, &j) in candidates.iter().enumerate() {
        let missing = usize::from(b.is_none()) + usize::from(c.is_none()) + (2 - e.len());
        if missing == 0 {
            break;
        }
        if missing == 1 && candidates.len() - pos == 1 {
            if b.is_none() {
                b = Some(j);
            } else if c.is_none() {
                c = Some(j);
            } else {
                e.push(j);
            }
            break;
        }
        let v = t.query(r, j).abs();
        if v == want_b && b.is_none() {
            b = Some(j);
        } else if v == want_c && c.is_none() {
            c = Some(j);
        } else if v == want_e && e.len() < 2 {
            e.push(j);
        }
    }
    let (Some(b), Some(c), [e3, e4]) = (b, c, e.as_slice()) else {
        return Err(corrupt("degree n-1 row lacks the values n-3, n-4, n-5, n-5"));
    };
    let (e3, e4) = (*e3, *e4);
    let positive = |t: &CoveredTable, j: usize| t.known(r, j).map(|v| v.is_positive());
    let r_is_standard = match positive(t, b) {
        Some(p) => p,
        // b was deduced, so both n-5 entries are uncovered: equal signs only on ξ_1.
        None => match (positive(t, e3), positive(t, e4)) {
            (Some(true), Some(true)) => true,
            (Some(x), Some(y)) if x != y => false,
            _ => return Err(corrupt("cannot tell ξ_1 from ξ_{n-2}")),
        },
    };
    let (standard_row, partner_row) = if r_is_standard { (r, s) } else { (s, r) };
    // On ξ_{n-2} the class (2,2,1^{n-4}) is positive and (4,1^{n-4}) negative.
    let double_transposition = if partner_row == r {
        let seen = if t.known(r, e3).is_some() { e3 } else { e4 };
        let other = if seen == e3 { e4 } else { e3 };
        if t.query(r, seen).is_positive() {
            seen
        } else {
            other
        }
    } else if t.query(partner_row, e3).is_positive() {
        e3
    } else {
        e4
    };
    Ok(BasicColumns {
        standard_row,
        partner_row,
        transposition: b,
        three_cycle: c,
        double_transposition,
    })
}

/// Step 4: rows with `χ(1) = 4χ((1 2 3)) - 3χ((1 2)(3 4))` are exactly the
/// hooks. The two degree-(n-1) rows are hooks already and are not re-tested.
pub fn locate_hook_rows(
    t: &mut CoveredTable,
    a: usize,
    c: usize,
    d: usize,
    known_hooks: &[usize],
) -> Result<Vec<usize>, GameError> {
    let n = t.n();
    let mut hooks = Vec::with_capacity(n);
    for i in 0..t.dim() {
        if hooks.len() == n {
            break;
        }
        if known_hooks.contains(&i) {
            hooks.push(i);
            continue;
        }
        let lhs = t.query(i, a);
        let rhs = BigInt::from(4) * t.query(i, c) - BigInt::from(3) * t.query(i, d);
        if lhs == rhs {
            hooks.push(i);
        }
    }
    if hooks.len() < n {
        return Err(corrupt(format!("found {} hook rows, expected {n}", hooks.len())));
    }
    Ok(hooks)
}

/// Step 5: order the hook rows as `ξ_0, ..., ξ_{n-1}` by the strictly
/// decreasing content sum `binom(n,2) χ((1 2)) / χ(1)`. Rows of `ξ_1` and
/// `ξ_{n-2}` are already placed, so only the other `n - 2` are uncovered.
pub fn order_hook_rows(
    t: &mut CoveredTable,
    hooks: &[usize],
    a: usize,
    basic: &BasicColumns,
) -> Result<Vec<usize>, GameError> {
    let n = t.n();
    let pairs = BigInt::from(n * (n - 1) / 2);
    let mut others: Vec<(BigRational, usize)> = hooks
        .iter()
        .copied()
        .filter(|&i| i != basic.standard_row && i != basic.partner_row)
        .map(|i| {
            let f = BigRational::new(&pairs * t.query(i, basic.transposition), t.query(i, a));
            (f, i)
        })
        .collect();
    if others.len() != n - 2 {
        return Err(corrupt("hook rows do not include both degree n-1 rows"));
    }
    others.sort_by(|x, y| y.0.cmp(&x.0));
    if others.windows(2).any(|w| w[0].0 == w[1].0) {
        return Err(corrupt("two hook rows share a content sum"));
    }
    if others[0].0 != BigRational::from_integer(pairs) {
        return Err(corrupt("no trivial character among the hook rows"));
    }
    let rows: Vec<usize> = others.into_iter().map(|(_, i)| i).collect();
    let mut order = Vec::with_capacity(n);
    order.push(rows[0]);
    order.push(basic.standard_row);
    order.extend_from_slice(&rows[1..n - 3]);
    order.push(basic.partner_row);
    order.push(rows[n - 3]);
    Ok(order)
}

/// Label every column from the `⌊n/2⌋` rows `ξ_{n-1}, ..., ξ_{n-⌊n/2⌋}`.
/// `hook_order[k]` is the row of `ξ_k`.
pub fn identify_classes(
    t: &mut CoveredTable,
    hook_order: &[usize],
) -> Result<Vec<Partition>, GameError> {
    let n = t.n();
    let rows: Vec<usize> = (1..=n / 2).map(|j| hook_order[n - j]).collect();
    let mut labels = Vec::with_capacity(t.dim());
    for col in 0..t.dim() {
        let values = rows.iter().map(|&i| t.query(i, col)).collect();
        let prefix = XiPrefix::new(n, values).map_err(|e| corrupt(e.to_string()))?;
        labels.push(class_from_xi_prefix(&prefix).map_err(|e| corrupt(format!("column {col}: {e}")))?);
    }
    ensure_bijection(&labels, "column")?;
    Ok(labels)
}

/// A hidden row read through labelled columns.
struct CoveredRow<'a> {
    table: &'a mut CoveredTable,
    row: usize,
    columns: &'a HashMap<Partition, usize>,
}

impl ValueSource for CoveredRow<'_> {
    fn n(&self) -> usize {
        self.table.n()
    }

    fn evaluate(&mut self, mu: &Partition) -> Result<BigInt, OracleError> {
        let col = *self
            .columns
            .get(mu)
            .ok_or_else(|| OracleError::UnknownClass(mu.clone()))?;
        Ok(self.table.query(self.row, col))
    }
}

/// Identify every row once all columns carry class labels.
pub fn identify_characters(
    t: &mut CoveredTable,
    col_labels: &[Partition],
) -> Result<Vec<Partition>, GameError> {
    let columns: HashMap<Partition, usize> = col_labels
        .iter()
        .cloned()
        .enumerate()
        .map(|(j, c)| (c, j))
        .collect();
    let mut labels = Vec::with_capacity(t.dim());
    for row in 0..t.dim() {
        let mut oracle = CharacterOracle::new(CoveredRow {
            table: t,
            row,
            columns: &columns,
        });
        let id = identify_character(&mut oracle)?;
        match id.outcome {
            Outcome::Irreducible(lambda) => labels.push(lambda),
            Outcome::NotIrreducible(why) => {
                return Err(corrupt(format!("row {row} is not irreducible: {why}")))
            }
        }
    }
    ensure_bijection(&labels, "row")?;
    Ok(labels)
}

fn ensure_bijection(labels: &[Partition], what: &str) -> Result<(), GameError> {
    let distinct: HashSet<&Partition> = labels.iter().collect();
    if distinct.len() != labels.len() {
        return Err(corrupt(format!("two {what}s received the same label")));
    }
    Ok(())
}

/// Row and column assignments making the fully uncovered table equal to the
/// canonical one. More than one solution means the table has automorphisms.
pub fn brute_force_solutions(
    t: &mut CoveredTable,
    canonical: &CharTable,
) -> Vec<(Vec<Partition>, Vec<Partition>)> {
    let dim = t.dim();
    let grid: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| (0..dim).map(|j| t.query(i, j)).collect())
        .collect();
    let canonical_rows: HashMap<&Vec<BigInt>, usize> =
        canonical.values.iter().enumerate().map(|(i, r)| (r, i)).collect();
    let mut solutions = Vec::new();
    // perm[j] = canonical column for hidden column j.
    let mut perm: Vec<usize> = (0..dim).collect();
    permutations(&mut perm, 0, &mut |perm| {
        let mut inverse = vec![0; dim];
        for (j, &cj) in perm.iter().enumerate() {
            inverse[cj] = j;
        }
        let mut rows = Vec::with_capacity(dim);
        for hidden in &grid {
            let reordered: Vec<BigInt> = inverse.iter().map(|&j| hidden[j].clone()).collect();
            match canonical_rows.get(&reordered) {
                Some(&i) => rows.push(canonical.rows[i].clone()),
                None => return,
            }
        }
        let cols = perm.iter().map(|&c| canonical.cols[c].clone()).collect();
        solutions.push((rows, cols));
    });
    solutions
}

fn permutations(items: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, visit);
        items.swap(k, i);
    }
}

/// Entries uncovered by each phase.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct StepCounts {
    pub identity_column: usize,
    pub degree_rows: usize,
    pub basic_columns: usize,
    pub hook_rows: usize,
    pub hook_order: usize,
    pub classes: usize,
    pub characters: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// Hook location, class reconstruction, then character identification.
    HookSearch,
    /// Uncover everything and match against the canonical table.
    BruteForce,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameResult {
    pub n: usize,
    pub p_n: usize,
    pub seed: u64,
    pub strategy: Strategy,
    /// Label assigned to each hidden row.
    pub row_labels: Vec<Partition>,
    pub col_labels: Vec<Partition>,
    pub uncovered: usize,
    pub bound: BigUint,
    pub fraction: BigRational,
    pub steps: StepCounts,
    /// Whether every label matches the hidden permutations.
    pub ok: bool,
}

impl GameResult {
    pub fn fraction_f64(&self) -> f64 {
        self.fraction.to_f64().unwrap_or(f64::NAN)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "p_n": self.p_n,
            "seed": self.seed,
            "strategy": self.strategy,
            "uncovered": self.uncovered,
            "bound": crate::json::exact(&BigInt::from(self.bound.clone())),
            "fraction": self.fraction_f64(),
            "fraction_exact": self.fraction.to_string(),
            "steps": self.steps,
            "ok": self.ok,
        })
    }
}

/// `⌊n/2⌋ p_n + 7 p_n + n` entries for the classes plus `n p_n` for the characters.
pub fn uncovering_bound(n: usize) -> BigUint {
    let p = partition_count(n);
    &p * BigUint::from(n / 2 + 7 + n) + BigUint::from(n)
}

/// [`uncovering_bound`] divided by the table size `p_n²`.
pub fn bound_fraction(n: usize) -> BigRational {
    let p = BigInt::from(partition_count(n));
    BigRational::new(BigInt::from(uncovering_bound(n)), &p * &p)
}

pub fn play_game(n: usize, seed: u64) -> Result<GameResult, GameError> {
    if n == 0 {
        return Err(GameError::ZeroN);
    }
    if n == 4 || n == 6 {
        return Err(GameError::Unidentifiable(n));
    }
    let mut t = CoveredTable::shuffled(n, seed)?;
    let mut steps = StepCounts::default();
    let (strategy, row_labels, col_labels) = if n <= 5 {
        let canonical = character_table(n)?;
        let mut solutions = brute_force_solutions(&mut t, &canonical);
        if solutions.len() != 1 {
            return Err(GameError::Unidentifiable(n));
        }
        let (rows, cols) = solutions.pop().unwrap();
        steps.classes = t.query_count();
        (Strategy::BruteForce, rows, cols)
    } else {
        let mut mark = 0;
        let mut tick = |t: &CoveredTable, slot: &mut usize| {
            *slot = t.query_count() - mark;
            mark = t.query_count();
        };
        let a = locate_identity_column(&mut t)?;
        tick(&t, &mut steps.identity_column);
        let degree_rows = locate_degree_rows(&mut t, a)?;
        tick(&t, &mut steps.degree_rows);
        let basic = locate_basic_columns(&mut t, a, degree_rows)?;
        tick(&t, &mut steps.basic_columns);
        let hooks = locate_hook_rows(
            &mut t,
            a,
            basic.three_cycle,
            basic.double_transposition,
            &[degree_rows.0, degree_rows.1],
        )?;
        tick(&t, &mut steps.hook_rows);
        let order = order_hook_rows(&mut t, &hooks, a, &basic)?;
        tick(&t, &mut steps.hook_order);
        let cols = identify_classes(&mut t, &order)?;
        tick(&t, &mut steps.classes);
        let rows = identify_characters(&mut t, &cols)?;
        tick(&t, &mut steps.characters);
        (Strategy::HookSearch, rows, cols)
    };
    let ok = (0..t.dim()).all(|i| &row_labels[i] == t.hidden_row_label(i))
        && (0..t.dim()).all(|j| &col_labels[j] == t.hidden_col_label(j));
    let p_n = t.dim();
    let uncovered = t.query_count();
    Ok(GameResult {
        n,
        p_n,
        seed,
        strategy,
        row_labels,
        col_labels,
        uncovered,
        bound: uncovering_bound(n),
        fraction: BigRational::new(BigInt::from(uncovered), BigInt::from(p_n * p_n)),
        steps,
        ok,
    })
}

/// Play every `(n, seed)` pair in parallel, skipping `n = 4, 6`. Results come
/// back sorted by `(n, seed)`.
pub fn play_many(
    n_range: std::ops::RangeInclusive<usize>,
    seeds: &[u64],
) -> Vec<Result<GameResult, GameError>> {
    let jobs: Vec<(usize, u64)> = n_range
        .filter(|&n| n != 4 && n != 6)
        .flat_map(|n| seeds.iter().map(move |&s| (n, s)))
        .collect();
    jobs.into_par_iter().map(|(n, s)| play_game(n, s)).collect()
}
