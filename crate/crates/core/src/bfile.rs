//! OEIS b-file reading and comparison.
//!
//! A b-file is ASCII text with one `n a(n)` pair per line. Blank lines and
//! lines starting with `#` are ignored.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BfileError {
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("cannot read b-file: {0}")]
    Io(#[from] std::io::Error),
}

pub fn parse_bfile(text: &str) -> Result<BTreeMap<usize, BigInt>, BfileError> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |reason: String| BfileError::Malformed { line: i + 1, reason };
        let mut parts = line.split_whitespace();
        let (Some(n), Some(v), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(bad(format!("expected `n value`, found `{line}`")));
        };
        let n: usize = n.parse().map_err(|_| bad(format!("bad index `{n}`")))?;
        let v: BigInt = v.parse().map_err(|_| bad(format!("bad value `{v}`")))?;
        if out.insert(n, v).is_some() {
            return Err(bad(format!("index {n} repeated")));
        }
    }
    Ok(out)
}

pub fn read_bfile(path: &Path) -> Result<BTreeMap<usize, BigInt>, BfileError> {
    parse_bfile(&std::fs::read_to_string(path)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Comparison {
    Match { from: usize, to: usize },
    Mismatch { index: usize, expected: String, actual: String },
    NoOverlap,
}

impl Comparison {
    pub fn is_match(&self) -> bool {
        matches!(self, Comparison::Match { .. })
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Comparison::Match { from, to } => write!(f, "MATCH over [{from}..{to}]"),
            Comparison::Mismatch { index, expected, actual } => {
                write!(f, "MISMATCH at n={index}: b-file has {expected}, computed {actual}")
            }
            Comparison::NoOverlap => write!(f, "NO-OVERLAP"),
        }
    }
}

/// Compares `computed[n]` for `n` in `offset..` against the b-file entries
/// with the same index.
pub fn compare(computed: &[BigInt], offset: usize, bfile: &BTreeMap<usize, BigInt>) -> Comparison {
    let mut range: Option<(usize, usize)> = None;
    for (i, actual) in computed.iter().enumerate() {
        let n = offset + i;
        let Some(expected) = bfile.get(&n) else { continue };
        if expected != actual {
            return Comparison::Mismatch { index: n, expected: expected.to_string(), actual: actual.to_string() };
        }
        range = Some(range.map_or((n, n), |(a, _)| (a, n)));
    }
    match range {
        Some((from, to)) => Comparison::Match { from, to },
        None => Comparison::NoOverlap,
    }
}
