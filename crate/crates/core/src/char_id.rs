//! Identify an irreducible character of `S_n` from adaptively queried values.
//!
//! The procedure reads off the principal hook lengths from where the values
//! `χ([h_1, ..., h_{u-1}, m])` first become nonzero, recovers the content sums
//! of the corner subdiagrams from the values at transposition-like classes,
//! and solves for the arm lengths. The result is a symbol `(a | b)` that is
//! the Frobenius symbol of λ whenever `χ = χ_λ`. A symbol that fails to be
//! the Frobenius symbol of a partition of `n` proves the character reducible.
//!
//! Square-bracket cycle types `[ν]` are padded with ones up to `n`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::charvalues::{exact_div, CharTable, MnEvaluator};
use crate::partitions::{FrobeniusSymbol, Partition, SymbolViolation};

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("class {mu} is not a cycle type of S_{n}")]
    WeightMismatch { n: usize, mu: Partition },
    #[error("no column is labelled {0}")]
    UnknownClass(Partition),
    #[error("protocol error: {0}")]
    Protocol(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Error)]
pub enum IdentifyError {
    #[error("value at the identity is {0}, not a positive degree")]
    NotACharacter(BigInt),
    #[error("every value χ([{prefix}, m]) in the search range was zero")]
    SearchExhausted { prefix: Partition },
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Something that can evaluate a class function of `S_n` on a cycle type.
pub trait ValueSource {
    fn n(&self) -> usize;
    fn evaluate(&mut self, cycle_type: &Partition) -> Result<BigInt, OracleError>;
}

impl<S: ValueSource + ?Sized> ValueSource for &mut S {
    fn n(&self) -> usize {
        (**self).n()
    }

    fn evaluate(&mut self, cycle_type: &Partition) -> Result<BigInt, OracleError> {
        (**self).evaluate(cycle_type)
    }
}

impl<S: ValueSource + ?Sized> ValueSource for Box<S> {
    fn n(&self) -> usize {
        (**self).n()
    }

    fn evaluate(&mut self, cycle_type: &Partition) -> Result<BigInt, OracleError> {
        (**self).evaluate(cycle_type)
    }
}

/// `χ_λ` evaluated by the Murnaghan–Nakayama rule.
#[derive(Debug, Clone)]
pub struct Irreducible {
    lambda: Partition,
}

impl Irreducible {
    pub fn new(lambda: Partition) -> Self {
        Irreducible { lambda }
    }
}

impl ValueSource for Irreducible {
    fn n(&self) -> usize {
        self.lambda.weight()
    }

    fn evaluate(&mut self, mu: &Partition) -> Result<BigInt, OracleError> {
        MnEvaluator::shared()
            .value(&self.lambda, mu)
            .map_err(|_| OracleError::WeightMismatch {
                n: self.n(),
                mu: mu.clone(),
            })
    }
}

/// A pointwise sum of irreducible characters (with repetition allowed).
#[derive(Debug, Clone)]
pub struct SumOfIrreducibles {
    n: usize,
    constituents: Vec<Partition>,
}

impl SumOfIrreducibles {
    /// All constituents must be partitions of the same nonzero `n`.
    pub fn new(constituents: Vec<Partition>) -> Option<Self> {
        let n = constituents.first()?.weight();
        if n == 0 || constituents.iter().any(|c| c.weight() != n) {
            return None;
        }
        Some(SumOfIrreducibles { n, constituents })
    }
}

impl ValueSource for SumOfIrreducibles {
    fn n(&self) -> usize {
        self.n
    }

    fn evaluate(&mut self, mu: &Partition) -> Result<BigInt, OracleError> {
        let mut total = BigInt::zero();
        for lambda in &self.constituents {
            total += MnEvaluator::shared()
                .value(lambda, mu)
                .map_err(|_| OracleError::WeightMismatch {
                    n: self.n,
                    mu: mu.clone(),
                })?;
        }
        Ok(total)
    }
}

/// One row of a labelled character table.
#[derive(Debug, Clone)]
pub struct TableRow<'a> {
    table: &'a CharTable,
    row: usize,
    columns: HashMap<&'a Partition, usize>,
}

impl<'a> TableRow<'a> {
    pub fn new(table: &'a CharTable, row: usize) -> Self {
        let columns = table.cols.iter().enumerate().map(|(j, c)| (c, j)).collect();
        TableRow {
            table,
            row,
            columns,
        }
    }
}

impl ValueSource for TableRow<'_> {
    fn n(&self) -> usize {
        self.table.n
    }

    fn evaluate(&mut self, mu: &Partition) -> Result<BigInt, OracleError> {
        let j = self
            .columns
            .get(mu)
            .ok_or_else(|| OracleError::UnknownClass(mu.clone()))?;
        Ok(self.table.value(self.row, *j).clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QueryRecord {
    pub cycle_type: Partition,
    #[serde(serialize_with = "crate::json::serialize_exact")]
    pub value: BigInt,
}

/// Query front-end: validates cycle types, logs answers, and serves repeat
/// queries from the log without counting them again.
#[derive(Debug)]
pub struct CharacterOracle<S> {
    source: S,
    log: Vec<QueryRecord>,
    seen: HashMap<Partition, usize>,
}

impl<S: ValueSource> CharacterOracle<S> {
    pub fn new(source: S) -> Self {
        CharacterOracle {
            source,
            log: Vec::new(),
            seen: HashMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.source.n()
    }

    pub fn query(&mut self, mu: &Partition) -> Result<BigInt, OracleError> {
        if let Some(&i) = self.seen.get(mu) {
            return Ok(self.log[i].value.clone());
        }
        if mu.weight() != self.n() {
            return Err(OracleError::WeightMismatch {
                n: self.n(),
                mu: mu.clone(),
            });
        }
        let value = self.source.evaluate(mu)?;
        self.seen.insert(mu.clone(), self.log.len());
        self.log.push(QueryRecord {
            cycle_type: mu.clone(),
            value: value.clone(),
        });
        Ok(value)
    }

    /// `χ([prefix])`: the prefix padded with ones to weight `n`. The caller
    /// guarantees `prefix` is weakly decreasing with weight at most `n`.
    fn query_bracket(&mut self, prefix: &[usize]) -> Result<BigInt, OracleError> {
        let mu = Partition::from_cycle_lengths(prefix.to_vec())
            .padded_to(self.n())
            .expect("bracket prefix fits inside n");
        self.query(&mu)
    }

    /// Number of distinct cycle types queried so far.
    pub fn queries_made(&self) -> usize {
        self.log.len()
    }

    pub fn log(&self) -> &[QueryRecord] {
        &self.log
    }

    pub fn into_source(self) -> S {
        self.source
    }
}

/// Where the search for the next principal hook length starts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SearchStart {
    /// `min(h_{u-1} - 2, r_{u-1} - h_{u-1})` where `r_{u-1}` is the number of
    /// boxes not covered by `h_1, ..., h_{u-2}`.
    #[default]
    RemainingSize,
    /// `min(h_{u-1} - 2, n_{u-1} - h_{u-1})` where `n_{u-1}` is the previous
    /// search start. Kept for comparison: the range can come out empty, as
    /// it does for λ = (3,3,3).
    PreviousStart,
}

/// Principal hook lengths `h` and the nonzero values `d` that located them.
/// `d[0]` is the degree and `d[u]` is `χ([h_1, ..., h_u])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HookScan {
    pub h: Vec<usize>,
    pub d: Vec<BigInt>,
}

pub fn run_hd<S: ValueSource>(oracle: &mut CharacterOracle<S>) -> Result<HookScan, IdentifyError> {
    run_hd_with(oracle, SearchStart::default())
}

pub fn run_hd_with<S: ValueSource>(
    oracle: &mut CharacterOracle<S>,
    start_rule: SearchStart,
) -> Result<HookScan, IdentifyError> {
    let n = oracle.n();
    let degree = oracle.query(&Partition::column(n))?;
    if !degree.is_positive() {
        return Err(IdentifyError::NotACharacter(degree));
    }
    let mut h: Vec<usize> = Vec::new();
    let mut d = vec![degree];
    let mut start = n;
    loop {
        let covered: usize = h.iter().sum();
        if let Some(&last) = h.last() {
            if covered == n || last <= 2 {
                break;
            }
            let bound = match start_rule {
                SearchStart::RemainingSize => n - (covered - last),
                SearchStart::PreviousStart => start,
            };
            start = (last - 2).min(bound.saturating_sub(last));
        }
        let mut prefix = h.clone();
        prefix.push(0);
        let mut found = None;
        for m in (1..=start).rev() {
            *prefix.last_mut().unwrap() = m;
            let v = oracle.query_bracket(&prefix)?;
            if !v.is_zero() {
                found = Some((m, v));
                break;
            }
        }
        let Some((m, v)) = found else {
            return Err(IdentifyError::SearchExhausted {
                prefix: Partition::from_cycle_lengths(h),
            });
        };
        h.push(m);
        d.push(v);
    }
    Ok(HookScan { h, d })
}

/// Content sums recovered from `χ([h_1, ..., h_{i-1}, 2])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ContentScan {
    Exact(Vec<BigInt>),
    /// `numerator / divisor` at 0-based position `index` was not an integer,
    /// so the character cannot be irreducible.
    Inexact {
        index: usize,
        numerator: BigInt,
        divisor: BigInt,
    },
}

pub fn run_c<S: ValueSource>(
    oracle: &mut CharacterOracle<S>,
    scan: &HookScan,
) -> Result<ContentScan, IdentifyError> {
    let n = oracle.n();
    let k = scan.h.len();
    let mut c = Vec::with_capacity(k);
    for i in 0..k {
        if i + 1 == k && scan.h[i] == 1 {
            c.push(BigInt::zero());
            continue;
        }
        let remaining = n - scan.h[..i].iter().sum::<usize>();
        let mut prefix = scan.h[..i].to_vec();
        prefix.push(2);
        let value = oracle.query_bracket(&prefix)?;
        let numerator = binomial(BigInt::from(remaining), BigInt::from(2)) * value;
        match exact_div(&numerator, &scan.d[i]) {
            Some(q) => c.push(q),
            None => {
                return Ok(ContentScan::Inexact {
                    index: i,
                    numerator,
                    divisor: scan.d[i].clone(),
                })
            }
        }
    }
    Ok(ContentScan::Exact(c))
}

/// Which binomial term the arm recursion uses for the gap `h_i - h_{i+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ArmRecursion {
    /// `binom(h_i - h_{i+1} + 1, 2)`, which recovers the arms of every partition.
    #[default]
    Corrected,
    /// `binom(h_i - h_{i+1}, 2)`; fails already on (2,2).
    AsPrinted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SymbolDefect {
    /// The arm at this 0-based position is not an integer.
    NonIntegralArm(usize),
    Frobenius(SymbolViolation),
    WeightMismatch { weight: BigRational, n: usize },
}

impl fmt::Display for SymbolDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymbolDefect::NonIntegralArm(i) => write!(f, "arm {} is not an integer", i + 1),
            SymbolDefect::Frobenius(v) => write!(f, "{v}"),
            SymbolDefect::WeightMismatch { weight, n } => {
                write!(f, "symbol has weight {weight}, expected {n}")
            }
        }
    }
}

/// The symbol `(a | b)` attached to a character, with the data it came from.
/// Arms and legs are kept as exact rationals so that defects stay visible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharSymbol {
    pub n: usize,
    pub h: Vec<usize>,
    pub d: Vec<BigInt>,
    pub c: Vec<BigInt>,
    pub a: Vec<BigRational>,
    pub b: Vec<BigRational>,
    pub weight: BigRational,
    pub defect: Option<SymbolDefect>,
}

impl CharSymbol {
    pub fn k(&self) -> usize {
        self.h.len()
    }

    pub fn is_valid(&self) -> bool {
        self.defect.is_none()
    }

    /// The integer symbol, when every arm and leg is an integer.
    pub fn frobenius(&self) -> Option<FrobeniusSymbol> {
        let ints = |v: &[BigRational]| -> Option<Vec<i64>> {
            v.iter()
                .map(|x| if x.is_integer() { x.to_integer().to_i64() } else { None })
                .collect()
        };
        Some(FrobeniusSymbol::new(ints(&self.a)?, ints(&self.b)?))
    }
}

fn choose2(x: &BigRational) -> BigRational {
    x * (x - BigRational::one()) / BigRational::from_integer(BigInt::from(2))
}

fn rat(v: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(v.into())
}

pub fn symbol_from_hc(n: usize, h: &[usize], c: &[BigInt], d: &[BigInt]) -> CharSymbol {
    symbol_from_hc_with(n, h, c, d, ArmRecursion::Corrected)
}

pub fn symbol_from_hc_with(
    n: usize,
    h: &[usize],
    c: &[BigInt],
    d: &[BigInt],
    recursion: ArmRecursion,
) -> CharSymbol {
    let k = h.len();
    assert_eq!(c.len(), k, "one content sum per hook");
    let hr: Vec<BigRational> = h.iter().map(|&x| rat(x)).collect();
    let cr: Vec<BigRational> = c.iter().cloned().map(rat).collect();
    let mut a = vec![BigRational::zero(); k];
    if k > 0 {
        a[k - 1] = (&cr[k - 1] + choose2(&hr[k - 1])) / &hr[k - 1];
    }
    let shift = match recursion {
        ArmRecursion::Corrected => BigRational::one(),
        ArmRecursion::AsPrinted => BigRational::zero(),
    };
    for i in (0..k.saturating_sub(1)).rev() {
        let next = &a[i + 1];
        let gap = &hr[i] - &hr[i + 1];
        let outer_leg = &hr[i + 1] - next;
        let bracket = &cr[i] - &cr[i + 1] - choose2(&(next + BigRational::one()))
            + choose2(&outer_leg)
            + choose2(&(&gap + &shift))
            + (&outer_leg - BigRational::one()) * &gap;
        a[i] = next + bracket / &hr[i];
    }
    let b: Vec<BigRational> = a
        .iter()
        .zip(&hr)
        .map(|(ai, hi)| hi - ai - BigRational::one())
        .collect();
    let weight = a
        .iter()
        .zip(&b)
        .fold(BigRational::zero(), |acc, (x, y)| acc + x + y + BigRational::one());

    let mut symbol = CharSymbol {
        n,
        h: h.to_vec(),
        d: d.to_vec(),
        c: c.to_vec(),
        a,
        b,
        weight,
        defect: None,
    };
    symbol.defect = if let Some(i) = symbol.a.iter().position(|x| !x.is_integer()) {
        Some(SymbolDefect::NonIntegralArm(i))
    } else {
        match symbol.frobenius().map(|s| s.check()) {
            Some(Err(v)) => Some(SymbolDefect::Frobenius(v)),
            // Arms too large for i64 cannot belong to a partition of a realistic n.
            None => Some(SymbolDefect::NonIntegralArm(0)),
            Some(Ok(())) if symbol.weight != rat(n) => Some(SymbolDefect::WeightMismatch {
                weight: symbol.weight.clone(),
                n,
            }),
            Some(Ok(())) => None,
        }
    };
    symbol
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rejection {
    InexactContent {
        index: usize,
        numerator: BigInt,
        divisor: BigInt,
    },
    Symbol(SymbolDefect),
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::InexactContent {
                index,
                numerator,
                divisor,
            } => write!(
                f,
                "content sum {} = {numerator}/{divisor} is not an integer",
                index + 1
            ),
            Rejection::Symbol(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Irreducible(Partition),
    NotIrreducible(Rejection),
}

/// Everything one identification run produced.
///
/// A returned partition is guaranteed correct only for irreducible inputs;
/// a reducible character may still produce a valid-looking symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Identification {
    pub outcome: Outcome,
    pub scan: HookScan,
    pub contents: ContentScan,
    pub symbol: Option<CharSymbol>,
    pub queries: usize,
}

impl Identification {
    pub fn partition(&self) -> Option<&Partition> {
        match &self.outcome {
            Outcome::Irreducible(p) => Some(p),
            Outcome::NotIrreducible(_) => None,
        }
    }
}

pub fn identify_character<S: ValueSource>(
    oracle: &mut CharacterOracle<S>,
) -> Result<Identification, IdentifyError> {
    let scan = run_hd(oracle)?;
    let contents = run_c(oracle, &scan)?;
    let (outcome, symbol) = match &contents {
        ContentScan::Inexact {
            index,
            numerator,
            divisor,
        } => (
            Outcome::NotIrreducible(Rejection::InexactContent {
                index: *index,
                numerator: numerator.clone(),
                divisor: divisor.clone(),
            }),
            None,
        ),
        ContentScan::Exact(c) => {
            let symbol = symbol_from_hc(oracle.n(), &scan.h, c, &scan.d);
            let outcome = match (&symbol.defect, symbol.frobenius()) {
                (None, Some(frob)) => Outcome::Irreducible(
                    Partition::from_frobenius(&frob).expect("valid symbol"),
                ),
                (Some(defect), _) => Outcome::NotIrreducible(Rejection::Symbol(defect.clone())),
                (None, None) => unreachable!("a valid symbol has integer entries"),
            };
            (outcome, Some(symbol))
        }
    };
    Ok(Identification {
        outcome,
        scan,
        contents,
        symbol,
        queries: oracle.queries_made(),
    })
}

/// Upper bound on the distinct values one run queries, given the last
/// principal hook length: `n - h_k + 3` when `h_k >= 3`, otherwise `n`.
pub fn query_upper_bound(n: usize, last_hook: usize) -> usize {
    if last_hook >= 3 {
        n + 3 - last_hook
    } else {
        n
    }
}

/// Identify `χ_λ` through the Murnaghan–Nakayama oracle.
pub fn identify_irreducible(lambda: &Partition) -> Result<Identification, IdentifyError> {
    identify_character(&mut CharacterOracle::new(Irreducible::new(lambda.clone())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charvalues::degree;
    use crate::partitions::enumerate_partitions;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn oracle(s: &str) -> CharacterOracle<Irreducible> {
        CharacterOracle::new(Irreducible::new(p(s)))
    }

    fn sum_oracle(parts: &[&str]) -> CharacterOracle<SumOfIrreducibles> {
        CharacterOracle::new(SumOfIrreducibles::new(parts.iter().map(|s| p(s)).collect()).unwrap())
    }

    #[test]
    fn hook_scan_of_431() {
        let mut o = oracle("4,3,1");
        let scan = run_hd(&mut o).unwrap();
        assert_eq!(scan.h, vec![6, 2]);
        assert_eq!(scan.d, ints(&[70, 1, 1]));
        let asked: Vec<(String, BigInt)> = o
            .log()
            .iter()
            .map(|r| (r.cycle_type.to_string(), r.value.clone()))
            .collect();
        assert_eq!(
            asked,
            vec![
                ("1,1,1,1,1,1,1,1".to_string(), BigInt::from(70)),
                ("8".to_string(), BigInt::from(0)),
                ("7,1".to_string(), BigInt::from(0)),
                ("6,1,1".to_string(), BigInt::from(1)),
                ("6,2".to_string(), BigInt::from(1)),
            ]
        );
        let c = run_c(&mut o, &scan).unwrap();
        assert_eq!(c, ContentScan::Exact(ints(&[4, 1])));
        assert_eq!(o.queries_made(), 6);
        assert_eq!(o.log()[5].cycle_type, p("2,1,1,1,1,1,1"));
        assert_eq!(o.log()[5].value, BigInt::from(10));
    }

    #[test]
    fn trivial_character() {
        for n in 1..12 {
            let mut o = CharacterOracle::new(Irreducible::new(Partition::row(n)));
            let id = identify_character(&mut o).unwrap();
            assert_eq!(id.scan.h, vec![n]);
            assert_eq!(id.scan.d, ints(&[1, 1]));
            assert_eq!(
                id.contents,
                ContentScan::Exact(vec![BigInt::from(n * (n - 1) / 2)])
            );
            assert_eq!(id.partition(), Some(&Partition::row(n)));
            if n >= 3 {
                assert_eq!(id.queries, 3);
            }
        }
    }

    #[test]
    fn square_contents_use_convention() {
        let mut o = oracle("2,2");
        let scan = run_hd(&mut o).unwrap();
        assert_eq!(scan.h, vec![3, 1]);
        assert_eq!(run_c(&mut o, &scan).unwrap(), ContentScan::Exact(ints(&[0, 0])));
    }

    #[test]
    fn reducible_sum_is_rejected() {
        let mut o = sum_oracle(&["2,1", "3"]);
        let scan = run_hd(&mut o).unwrap();
        assert_eq!(scan.h, vec![2]);
        assert_eq!(scan.d, ints(&[3, 1]));
        let id = identify_character(&mut sum_oracle(&["2,1", "3"])).unwrap();
        let symbol = id.symbol.as_ref().unwrap();
        assert_eq!(symbol.a, vec![rat(1)]);
        assert_eq!(symbol.b, vec![rat(0)]);
        assert_eq!(
            id.outcome,
            Outcome::NotIrreducible(Rejection::Symbol(SymbolDefect::WeightMismatch {
                weight: rat(2),
                n: 3
            }))
        );
    }

    #[test]
    fn non_character_is_an_error() {
        struct Negative;
        impl ValueSource for Negative {
            fn n(&self) -> usize {
                3
            }
            fn evaluate(&mut self, _: &Partition) -> Result<BigInt, OracleError> {
                Ok(BigInt::from(-1))
            }
        }
        let err = run_hd(&mut CharacterOracle::new(Negative)).unwrap_err();
        assert!(matches!(err, IdentifyError::NotACharacter(_)));
    }

    #[test]
    fn symbol_examples() {
        let s = symbol_from_hc(8, &[6, 2], &ints(&[4, 1]), &ints(&[70, 1, 1]));
        assert!(s.is_valid());
        assert_eq!(s.frobenius().unwrap(), FrobeniusSymbol::new(vec![3, 1], vec![2, 0]));
        assert_eq!(s.weight, rat(8));

        let s = symbol_from_hc(4, &[3, 1], &ints(&[0, 0]), &ints(&[2, 1, 1]));
        assert_eq!(s.frobenius().unwrap(), FrobeniusSymbol::new(vec![1, 0], vec![1, 0]));

        let s = symbol_from_hc(3, &[2], &ints(&[1]), &ints(&[3, 1]));
        assert!(!s.is_valid());
    }

    #[test]
    fn printed_recursion_breaks_round_trip() {
        let s = symbol_from_hc_with(4, &[3, 1], &ints(&[0, 0]), &[], ArmRecursion::AsPrinted);
        assert_eq!(s.a[0], BigRational::new(BigInt::from(1), BigInt::from(3)));
        assert_eq!(s.defect, Some(SymbolDefect::NonIntegralArm(0)));
        let s = symbol_from_hc_with(8, &[6, 2], &ints(&[4, 1]), &[], ArmRecursion::AsPrinted);
        assert!(!s.is_valid());
    }

    #[test]
    fn previous_start_rule_misses_last_hook() {
        let err = run_hd_with(&mut oracle("3,3,3"), SearchStart::PreviousStart).unwrap_err();
        assert!(matches!(err, IdentifyError::SearchExhausted { .. }));
        let scan = run_hd(&mut oracle("3,3,3")).unwrap();
        assert_eq!(scan.h, vec![5, 3, 1]);
    }

    #[test]
    fn repeated_queries_are_not_counted() {
        let mut o = oracle("3,2");
        let a = o.query(&p("2,2,1")).unwrap();
        let b = o.query(&p("2,2,1")).unwrap();
        assert_eq!(a, b);
        assert_eq!(o.queries_made(), 1);
        assert!(matches!(
            o.query(&p("2,2")),
            Err(OracleError::WeightMismatch { .. })
        ));
    }

    #[test]
    fn query_bounds() {
        assert_eq!(query_upper_bound(8, 2), 8);
        assert_eq!(query_upper_bound(8, 8), 3);
        assert_eq!(query_upper_bound(1, 1), 1);
    }

    #[test]
    fn table_backed_oracle() {
        let t = crate::charvalues::character_table(6).unwrap();
        for (i, label) in t.rows.iter().enumerate() {
            let id = identify_character(&mut CharacterOracle::new(TableRow::new(&t, i))).unwrap();
            assert_eq!(id.partition(), Some(label));
        }
    }

    #[test]
    fn round_trip_and_bounds_to_14() {
        for n in 1..=14 {
            for lambda in enumerate_partitions(n) {
                let mut o = oracle(&lambda.to_string());
                let id = identify_character(&mut o).unwrap();
                assert_eq!(id.partition(), Some(&lambda), "n = {n}");
                let geo = lambda.principal_hook_data().unwrap();
                assert_eq!(id.scan.h, geo.hooks);
                let ContentScan::Exact(c) = &id.contents else {
                    panic!("irreducible contents are integral");
                };
                assert_eq!(c, &geo.contents.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>());
                for (i, di) in id.scan.d.iter().enumerate() {
                    let corner = lambda.corner_subpartition(i + 1);
                    let expected = if corner.is_empty() { BigInt::one() } else { degree(&corner) };
                    assert_eq!(di.abs(), expected);
                }
                assert!(id.queries <= n);
                assert!(id.queries <= query_upper_bound(n, *geo.hooks.last().unwrap()));
            }
        }
    }

    #[test]
    fn query_logs_are_deterministic() {
        for lambda in enumerate_partitions(9) {
            let mut a = oracle(&lambda.to_string());
            let mut b = oracle(&lambda.to_string());
            identify_character(&mut a).unwrap();
            identify_character(&mut b).unwrap();
            assert_eq!(a.log(), b.log());
        }
    }
}
