//! Line protocol for an oracle living in another process.
//!
//! ```text
//! tool -> peer   Q <cycle type>        e.g. "Q 3,1,1"
//! peer -> tool   A <signed integer>    e.g. "A -2"
//! tool -> peer   RESULT <partition | NOT_IRREDUCIBLE>
//! tool -> peer   <one-line JSON summary>
//! ```
//!
//! Surrounding whitespace on a reply is ignored. Anything else, including
//! end of input, is a protocol error.

use std::io::{BufRead, Write};

use num_bigint::BigInt;

use crate::char_id::{OracleError, ValueSource};
use crate::partitions::Partition;

pub struct ExternalOracle<R, W> {
    n: usize,
    input: R,
    output: W,
}

impl<R: BufRead, W: Write> ExternalOracle<R, W> {
    pub fn new(n: usize, input: R, output: W) -> Self {
        ExternalOracle { n, input, output }
    }

    pub fn into_output(self) -> W {
        self.output
    }
}

pub fn parse_answer(line: &str) -> Result<BigInt, OracleError> {
    let bad = || OracleError::Protocol(format!("expected `A <integer>`, got {line:?}"));
    let rest = line.trim().strip_prefix("A ").ok_or_else(bad)?;
    rest.trim().parse().map_err(|_| bad())
}

impl<R: BufRead, W: Write> ValueSource for ExternalOracle<R, W> {
    fn n(&self) -> usize {
        self.n
    }

    fn evaluate(&mut self, mu: &Partition) -> Result<BigInt, OracleError> {
        writeln!(self.output, "Q {mu}")?;
        self.output.flush()?;
        let mut line = String::new();
        if self.input.read_line(&mut line)? == 0 {
            return Err(OracleError::Protocol("peer closed the stream".into()));
        }
        parse_answer(&line)
    }
}
