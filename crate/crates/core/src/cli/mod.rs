//! The `symchar` command line.
//!
//! Exit codes: 0 success, 1 verification or identification failure,
//! 2 usage error, 3 protocol error.

pub mod external;
pub mod verify;

use std::collections::BTreeSet;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::char_id::{
    identify_character, CharacterOracle, IdentifyError, Identification, Irreducible, OracleError,
    Outcome, SumOfIrreducibles, TableRow, ValueSource,
};
use crate::charvalues::{
    character_table_with_limit, character_value, degree, xi_values, CharTable, CharValueError,
    DEFAULT_TABLE_LIMIT,
};
use crate::class_id::{class_from_xi_prefix, ClassIdError, XiPrefix};
use crate::json::exact;
use crate::partitions::{Partition, PartitionError};
use crate::table_game::{play_game, play_many, GameError, GameResult};
use external::ExternalOracle;

#[derive(Debug, Parser)]
#[command(name = "symchar", version, about = "Characters and classes of symmetric groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate χ_λ(μ).
    Eval {
        #[arg(long)]
        lambda: Partition,
        #[arg(long)]
        mu: Partition,
    },
    /// Degree χ_λ(1).
    Degree {
        #[arg(long)]
        lambda: Partition,
    },
    /// Hook character values ξ_{n,0}(ν), ..., ξ_{n,n-1}(ν).
    Xi {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        nu: Partition,
    },
    /// Full character table; CSV to stdout unless an output path is given.
    Table {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_TABLE_LIMIT)]
        limit: usize,
    },
    /// Identify an irreducible character from a few of its values.
    IdentifyChar(IdentifyCharArgs),
    /// Recover a cycle type from ξ_{n,n-1}, ..., ξ_{n,n-⌊n/2⌋}.
    IdentifyClass {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        xi: Vec<BigInt>,
    },
    /// Play the covered table game once.
    TableGame {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Play many games and write one CSV row per game.
    Stats {
        #[arg(long)]
        n_from: usize,
        #[arg(long)]
        n_to: usize,
        /// Seeds 0..K are used.
        #[arg(long, default_value_t = 5)]
        seeds: u64,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Brute-force checks on character tables.
    Verify {
        check: Check,
        #[arg(long)]
        max_n: usize,
    },
}

#[derive(Debug, Args)]
#[group(skip)]
#[command(group(ArgGroup::new("mode").required(true).multiple(false)))]
pub struct IdentifyCharArgs {
    #[arg(long)]
    pub n: usize,
    /// Answer queries with χ_λ.
    #[arg(long, group = "mode")]
    pub simulate: Option<Partition>,
    /// Answer queries with a sum of irreducibles, e.g. "2,1+3".
    #[arg(long, group = "mode")]
    pub simulate_sum: Option<String>,
    /// Answer queries from a row of a CSV table written by `table`.
    #[arg(long, group = "mode", requires = "row")]
    pub table_file: Option<PathBuf>,
    /// Row label within the table file.
    #[arg(long)]
    pub row: Option<Partition>,
    #[arg(long, group = "mode")]
    pub oracle: Option<OracleMode>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleMode {
    /// Queries on stdout, answers on stdin.
    External,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Check {
    SignPartitions,
    HookDegrees,
    Orthogonality,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Check(String),
    Protocol(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Check(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Protocol(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Check(m) | Failure::Protocol(m) => m,
        }
    }
}

impl From<PartitionError> for Failure {
    fn from(e: PartitionError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<CharValueError> for Failure {
    fn from(e: CharValueError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<IdentifyError> for Failure {
    fn from(e: IdentifyError) -> Self {
        match e {
            IdentifyError::Oracle(OracleError::Protocol(_) | OracleError::Io(_)) => {
                Failure::Protocol(e.to_string())
            }
            IdentifyError::Oracle(OracleError::WeightMismatch { .. } | OracleError::UnknownClass(_)) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Check(e.to_string()),
        }
    }
}

impl From<GameError> for Failure {
    fn from(e: GameError) -> Self {
        match e {
            GameError::ZeroN | GameError::Table(_) => Failure::Usage(e.to_string()),
            _ => Failure::Check(e.to_string()),
        }
    }
}

type CmdResult = Result<(), Failure>;

/// Parse `std::env::args` and run; returns the process exit code.
pub fn run() -> i32 {
    run_from(std::env::args_os())
}

pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match execute(cli.command, &mut out) {
        Ok(()) => 0,
        Err(f) => {
            let _ = out.flush();
            eprintln!("error: {}", f.message());
            f.code()
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> CmdResult {
    match command {
        Command::Eval { lambda, mu } => {
            writeln!(out, "{}", character_value(&lambda, &mu)?)?;
        }
        Command::Degree { lambda } => {
            writeln!(out, "{}", degree(&lambda))?;
        }
        Command::Xi { n, nu } => {
            let values = xi_values(n, &nu)?;
            writeln!(out, "{}", join(&values))?;
        }
        Command::Table {
            n,
            csv,
            json,
            limit,
        } => cmd_table(n, csv, json, limit, out)?,
        Command::IdentifyChar(args) => cmd_identify_char(args, out)?,
        Command::IdentifyClass { n, xi } => cmd_identify_class(n, xi, out)?,
        Command::TableGame { n, seed, json } => cmd_table_game(n, seed, json, out)?,
        Command::Stats {
            n_from,
            n_to,
            seeds,
            csv,
        } => cmd_stats(n_from, n_to, seeds, csv, out)?,
        Command::Verify { check, max_n } => cmd_verify(check, max_n, out)?,
    }
    Ok(())
}

fn join<T: ToString>(values: &[T]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn require_n(n: usize) -> CmdResult {
    if n == 0 {
        return Err(Failure::Usage("n must be at least 1".into()));
    }
    Ok(())
}

fn write_json(path: &PathBuf, value: &Value) -> CmdResult {
    let mut f = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut f, value).map_err(io::Error::from)?;
    writeln!(f)?;
    f.flush()?;
    Ok(())
}

fn cmd_table(
    n: usize,
    csv: Option<PathBuf>,
    json: Option<PathBuf>,
    limit: usize,
    out: &mut dyn Write,
) -> CmdResult {
    require_n(n)?;
    let table = character_table_with_limit(n, limit)?;
    if let Some(path) = &csv {
        table.write_csv(BufWriter::new(File::create(path)?))?;
    }
    if let Some(path) = &json {
        write_json(path, &table.to_json())?;
    }
    if csv.is_none() && json.is_none() {
        out.write_all(table.to_csv_string().as_bytes())?;
    }
    Ok(())
}

fn identification_json(n: usize, id: &Identification, log: Value) -> Value {
    let (result, reason) = match &id.outcome {
        Outcome::Irreducible(lambda) => (lambda.to_string(), Value::Null),
        Outcome::NotIrreducible(why) => ("NOT_IRREDUCIBLE".to_string(), json!(why.to_string())),
    };
    json!({
        "n": n,
        "result": result,
        "irreducible": id.partition().is_some(),
        "reason": reason,
        "principal_hooks": id.scan.h,
        "queries": id.queries,
        "log": log,
    })
}

fn result_line(id: &Identification) -> String {
    match id.partition() {
        Some(lambda) => format!("RESULT {lambda}"),
        None => "RESULT NOT_IRREDUCIBLE".to_string(),
    }
}

fn finish<S: ValueSource>(
    n: usize,
    mut oracle: CharacterOracle<S>,
    out: &mut dyn Write,
) -> CmdResult {
    let id = identify_character(&mut oracle)?;
    let log = serde_json::to_value(oracle.log()).expect("log serializes");
    writeln!(out, "{}", result_line(&id))?;
    writeln!(out, "{}", identification_json(n, &id, log))?;
    Ok(())
}

fn check_weight(n: usize, lambda: &Partition) -> CmdResult {
    if lambda.weight() != n {
        return Err(Failure::Usage(format!("{lambda} is not a partition of {n}")));
    }
    Ok(())
}

fn cmd_identify_char(args: IdentifyCharArgs, out: &mut dyn Write) -> CmdResult {
    let n = args.n;
    require_n(n)?;
    if let Some(lambda) = args.simulate {
        check_weight(n, &lambda)?;
        return finish(n, CharacterOracle::new(Irreducible::new(lambda)), out);
    }
    if let Some(spec) = args.simulate_sum {
        let parts = spec
            .split('+')
            .map(|s| s.trim().parse::<Partition>())
            .collect::<Result<Vec<_>, _>>()?;
        for p in &parts {
            check_weight(n, p)?;
        }
        let source = SumOfIrreducibles::new(parts)
            .ok_or_else(|| Failure::Usage("empty sum".into()))?;
        return finish(n, CharacterOracle::new(source), out);
    }
    if let Some(path) = args.table_file {
        let table = CharTable::read_csv(File::open(&path)?)?;
        if table.n != n {
            return Err(Failure::Usage(format!("table file is for S_{}", table.n)));
        }
        let label = args.row.expect("clap enforces --row");
        let row = table
            .row_index(&label)
            .ok_or_else(|| Failure::Usage(format!("no row labelled {label}")))?;
        return finish(n, CharacterOracle::new(TableRow::new(&table, row)), out);
    }
    // External peer: queries and the final lines share stdout.
    let stdin = io::stdin();
    let mut oracle = CharacterOracle::new(ExternalOracle::new(n, stdin.lock(), &mut *out));
    let id = identify_character(&mut oracle)?;
    let log = serde_json::to_value(oracle.log()).expect("log serializes");
    drop(oracle);
    writeln!(out, "{}", result_line(&id))?;
    writeln!(out, "{}", identification_json(n, &id, log))?;
    out.flush()?;
    Ok(())
}

fn cmd_identify_class(n: usize, xi: Vec<BigInt>, out: &mut dyn Write) -> CmdResult {
    require_n(n)?;
    let prefix = XiPrefix::new(n, xi.clone()).map_err(|e| Failure::Usage(e.to_string()))?;
    let class = class_from_xi_prefix(&prefix).map_err(|e| match e {
        ClassIdError::ZeroN | ClassIdError::WrongLength { .. } => Failure::Usage(e.to_string()),
        _ => Failure::Check(e.to_string()),
    })?;
    writeln!(out, "{class}")?;
    let record = json!({
        "n": n,
        "xi": xi.iter().map(exact).collect::<Vec<_>>(),
        "class": class.to_string(),
    });
    writeln!(out, "{record}")?;
    Ok(())
}

fn cmd_table_game(n: usize, seed: u64, json: Option<PathBuf>, out: &mut dyn Write) -> CmdResult {
    let game = play_game(n, seed)?;
    report_game(&game, out)?;
    if let Some(path) = &json {
        write_json(path, &game.to_json())?;
    }
    if !game.ok {
        return Err(Failure::Check("labels disagree with the hidden table".into()));
    }
    Ok(())
}

fn report_game(g: &GameResult, out: &mut dyn Write) -> io::Result<()> {
    writeln!(out, "n = {}, p_n = {}, seed = {}", g.n, g.p_n, g.seed)?;
    writeln!(
        out,
        "uncovered {} of {} entries ({:.4}), bound {}",
        g.uncovered,
        g.p_n * g.p_n,
        g.fraction_f64(),
        g.bound
    )?;
    let s = &g.steps;
    writeln!(
        out,
        "steps: identity column {}, degree rows {}, basic columns {}, hook rows {}, hook order {}, classes {}, characters {}",
        s.identity_column, s.degree_rows, s.basic_columns, s.hook_rows, s.hook_order, s.classes, s.characters
    )?;
    writeln!(out, "all rows and columns identified: {}", if g.ok { "yes" } else { "NO" })
}

fn cmd_stats(
    n_from: usize,
    n_to: usize,
    seeds: u64,
    csv: Option<PathBuf>,
    out: &mut dyn Write,
) -> CmdResult {
    require_n(n_from)?;
    if n_to < n_from {
        return Err(Failure::Usage("--n-to is smaller than --n-from".into()));
    }
    let seed_list: Vec<u64> = (0..seeds).collect();
    let results = play_many(n_from..=n_to, &seed_list);
    let sink: Box<dyn Write + '_> = match &csv {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(&mut *out),
    };
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(["n", "p_n", "uncovered", "bound", "fraction", "seed"])
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let mut failures = Vec::new();
    for r in results {
        let g = r?;
        if !g.ok {
            failures.push(format!("n={} seed={}", g.n, g.seed));
        }
        w.write_record([
            g.n.to_string(),
            g.p_n.to_string(),
            g.uncovered.to_string(),
            g.bound.to_string(),
            format!("{:.6}", g.fraction_f64()),
            g.seed.to_string(),
        ])
        .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    w.flush()?;
    if !failures.is_empty() {
        return Err(Failure::Check(format!("misidentified: {}", failures.join(", "))));
    }
    Ok(())
}

fn labels(set: &BTreeSet<Partition>) -> String {
    set.iter()
        .map(|p| format!("({p})"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_verify(check: Check, max_n: usize, out: &mut dyn Write) -> CmdResult {
    require_n(max_n)?;
    if max_n > DEFAULT_TABLE_LIMIT {
        return Err(Failure::Usage(format!(
            "--max-n {max_n} exceeds the table limit {DEFAULT_TABLE_LIMIT}"
        )));
    }
    let mut bad = Vec::new();
    match check {
        Check::SignPartitions => {
            for n in 1..=max_n {
                let t = character_table_with_limit(n, DEFAULT_TABLE_LIMIT)?;
                let signs = verify::sign_partitions(&t).len();
                let got: BTreeSet<_> = verify::tight_sign_classes(&t).into_iter().collect();
                let want = verify::expected_tight_sign_classes(n);
                writeln!(out, "n={n}: {signs} sign partitions, qualifying {}", labels(&got))?;
                if got != want {
                    bad.push(format!("n={n}: found {}, expected {}", labels(&got), labels(&want)));
                }
            }
        }
        Check::HookDegrees => {
            for n in 7..=max_n {
                let t = character_table_with_limit(n, DEFAULT_TABLE_LIMIT)?;
                for hook in verify::misplaced_hook_degrees(&t) {
                    bad.push(format!("n={n}: hook {hook} has the wrong degree"));
                }
                let collisions: BTreeSet<_> = verify::hook_degree_collisions(&t).into_iter().collect();
                let known = verify::HOOK_DEGREE_EXCEPTIONS.contains(&n);
                match (known, collisions.is_empty()) {
                    (true, false) => writeln!(out, "n={n}: known exception, skipped ({})", labels(&collisions))?,
                    (true, true) => writeln!(out, "n={n}: listed as an exception but no collision found")?,
                    (false, true) => writeln!(out, "n={n}: pass")?,
                    (false, false) => writeln!(out, "n={n}: new exception ({})", labels(&collisions))?,
                }
            }
        }
        Check::Orthogonality => {
            for n in 1..=max_n {
                let t = character_table_with_limit(n, DEFAULT_TABLE_LIMIT)?;
                let defects = t.orthogonality_defects();
                writeln!(out, "n={n}: {}", if defects.is_empty() { "pass" } else { "FAIL" })?;
                for (j, k) in defects {
                    bad.push(format!("n={n}: columns ({}) and ({})", t.cols[j], t.cols[k]));
                }
            }
        }
    }
    if !bad.is_empty() {
        for line in &bad {
            writeln!(out, "counterexample: {line}")?;
        }
        return Err(Failure::Check(format!("{} counterexamples", bad.len())));
    }
    writeln!(out, "pass")?;
    Ok(())
}

