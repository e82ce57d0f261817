//! Normal ordering in the Heisenberg–Weyl algebra `[a, a†] = 1`.
//!
//! Operators are parsed into linear combinations of words over `{a, a†}`
//! ([`OperatorExpr`]) and reduced to combinations of normal monomials
//! `(a†)^i a^j` ([`NormalFormOperator`]). Two independent reductions are
//! provided: [`normal_order`] rewrites `a a† -> a† a + 1` until no inversion
//! is left, and [`multiply_normal`] multiplies normal monomials in closed form
//!
//! ```text
//! a^j (a†)^k = sum_m C(j,m) C(k,m) m! (a†)^{k-m} a^{j-m}
//! ```
//!
//! Powers of homogeneous operators yield generalized Stirling numbers.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::egf::{binomial_row, factorial, EgfError, EgfSeries};
use crate::rings::{ExactScalar, Poly};
use crate::sfd::CheckReport;

/// Default bound on the number of words a power expansion may produce.
pub const DEFAULT_WORD_LIMIT: u128 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HwError {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("exponent at position {pos} must be a positive integer, found `{found}`")]
    BadExponent { pos: usize, found: String },
    #[error("operator is not homogeneous: excesses {0:?}")]
    Inhomogeneous(Vec<i64>),
    #[error("the zero operator has no excess")]
    ZeroOperator,
    #[error("normal form of the power {n} has term (ad)^{i} a^{j} outside the shape for excess {excess}")]
    ExtractionMismatch { n: usize, i: u32, j: u32, excess: i64 },
    #[error("word `{0}` does not contain exactly one annihilation")]
    NotOneAnnihilation(String),
    #[error("power expansion needs {words} words, above the limit {limit}")]
    Blowup { words: String, limit: u128 },
    #[error(transparent)]
    Division(#[from] EgfError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    /// `a†`
    Create,
    /// `a`
    Annihilate,
}

/// Word over `{a†, a}`; the empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BosonWord(Vec<Letter>);

impl BosonWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        BosonWord(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn count(&self, l: Letter) -> usize {
        self.0.iter().filter(|&&x| x == l).count()
    }

    /// `(a†)^i a^j`.
    pub fn normal(i: u32, j: u32) -> Self {
        let mut v = vec![Letter::Create; i as usize];
        v.extend(std::iter::repeat_n(Letter::Annihilate, j as usize));
        BosonWord(v)
    }

    pub fn concat(&self, other: &BosonWord) -> BosonWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        BosonWord(v)
    }

    /// Positions `p` with `a` at `p` and `a†` at `p + 1`.
    fn inversions(&self) -> impl DoubleEndedIterator<Item = usize> + '_ {
        self.0
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] == Letter::Annihilate && w[1] == Letter::Create)
            .map(|(p, _)| p)
    }
}

impl fmt::Display for BosonWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<&str> = self
            .0
            .iter()
            .map(|l| match l {
                Letter::Create => "ad",
                Letter::Annihilate => "a",
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Linear combination of words, no zero coefficients stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OperatorExpr {
    terms: BTreeMap<BosonWord, ExactScalar>,
}

fn add_into<K: Ord>(map: &mut BTreeMap<K, ExactScalar>, k: K, c: ExactScalar) {
    if c.is_zero() {
        return;
    }
    match map.entry(k) {
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += &c;
            if e.get().is_zero() {
                e.remove();
            }
        }
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
    }
}

impl OperatorExpr {
    pub fn zero() -> Self {
        OperatorExpr::default()
    }

    pub fn identity() -> Self {
        OperatorExpr::word(BosonWord::default())
    }

    pub fn word(w: BosonWord) -> Self {
        OperatorExpr::term(w, ExactScalar::one())
    }

    pub fn term(w: BosonWord, c: ExactScalar) -> Self {
        let mut terms = BTreeMap::new();
        add_into(&mut terms, w, c);
        OperatorExpr { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BosonWord, &ExactScalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &OperatorExpr) -> OperatorExpr {
        let mut terms = self.terms.clone();
        for (w, c) in &other.terms {
            add_into(&mut terms, w.clone(), c.clone());
        }
        OperatorExpr { terms }
    }

    pub fn scale(&self, c: &ExactScalar) -> OperatorExpr {
        let mut terms = BTreeMap::new();
        for (w, a) in &self.terms {
            add_into(&mut terms, w.clone(), a * c);
        }
        OperatorExpr { terms }
    }

    /// Product by concatenation of words, no commutation applied.
    pub fn mul(&self, other: &OperatorExpr) -> OperatorExpr {
        let mut terms = BTreeMap::new();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                add_into(&mut terms, u.concat(v), a * b);
            }
        }
        OperatorExpr { terms }
    }

    /// Concatenation power; refuses when `len^n` exceeds `limit`.
    pub fn pow(&self, n: u32, limit: u128) -> Result<OperatorExpr, HwError> {
        check_blowup(self.len(), n, limit)?;
        let mut acc = OperatorExpr::identity();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        Ok(acc)
    }
}

fn check_blowup(words: usize, n: u32, limit: u128) -> Result<(), HwError> {
    match (words as u128).checked_pow(n) {
        Some(w) if w <= limit => Ok(()),
        Some(w) => Err(HwError::Blowup { words: w.to_string(), limit }),
        None => Err(HwError::Blowup { words: format!("{words}^{n}"), limit }),
    }
}

impl fmt::Display for OperatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_linear(f, self.terms.iter(), |w| (*w).clone().to_string(), |w| w.is_empty())
    }
}

fn write_linear<'a, K: 'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a K, &'a ExactScalar)>,
    show: impl Fn(&K) -> String,
    is_unit: impl Fn(&K) -> bool,
) -> fmt::Result {
    let mut any = false;
    for (k, c) in terms {
        let neg = c.is_negative();
        match (any, neg) {
            (false, true) => write!(f, "-")?,
            (false, false) => {}
            (true, true) => write!(f, " - ")?,
            (true, false) => write!(f, " + ")?,
        }
        any = true;
        let a = c.abs();
        if is_unit(k) {
            write!(f, "{a}")?;
        } else {
            write!(f, "{a}*{}", show(k))?;
        }
    }
    if !any {
        write!(f, "0")?;
    }
    Ok(())
}

/// `sum beta_{i,j} (a†)^i a^j`, keyed by `(i, j)`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct NormalFormOperator {
    terms: BTreeMap<(u32, u32), ExactScalar>,
}

impl NormalFormOperator {
    pub fn zero() -> Self {
        NormalFormOperator::default()
    }

    pub fn identity() -> Self {
        NormalFormOperator::monomial(0, 0, ExactScalar::one())
    }

    pub fn monomial(i: u32, j: u32, c: ExactScalar) -> Self {
        let mut terms = BTreeMap::new();
        add_into(&mut terms, (i, j), c);
        NormalFormOperator { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), ExactScalar)>) -> Self {
        let mut out = BTreeMap::new();
        for (k, c) in terms {
            add_into(&mut out, k, c);
        }
        NormalFormOperator { terms: out }
    }

    pub fn coefficient(&self, i: u32, j: u32) -> ExactScalar {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(ExactScalar::zero)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&(u32, u32), &ExactScalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &NormalFormOperator) -> NormalFormOperator {
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            add_into(&mut terms, *k, c.clone());
        }
        NormalFormOperator { terms }
    }

    pub fn scale(&self, c: &ExactScalar) -> NormalFormOperator {
        NormalFormOperator::from_terms(self.terms.iter().map(|(k, a)| (*k, a * c)))
    }

    /// The same element as a linear combination of normal words.
    pub fn to_expr(&self) -> OperatorExpr {
        let mut out = OperatorExpr::zero();
        for (&(i, j), c) in &self.terms {
            out = out.add(&OperatorExpr::term(BosonWord::normal(i, j), c.clone()));
        }
        out
    }

    /// Distinct values of `i - j` over the support.
    pub fn excesses(&self) -> BTreeSet<i64> {
        self.terms.keys().map(|&(i, j)| i as i64 - j as i64).collect()
    }
}

/// `c*(ad)^i*a^j` terms from the largest `(i, j)` down.
impl fmt::Display for NormalFormOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_linear(
            f,
            self.terms.iter().rev(),
            |&(i, j)| match (i, j) {
                (0, j) => format!("a^{j}"),
                (i, 0) => format!("(ad)^{i}"),
                (i, j) => format!("(ad)^{i}*a^{j}"),
            },
            |&(i, j)| i == 0 && j == 0,
        )
    }
}

/// Which inversion the rewriting oracle resolves first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RewriteStrategy {
    Leftmost,
    Rightmost,
}

/// Rewrites `a a† -> a† a + 1` to a fixpoint, leftmost inversion first.
pub fn normal_order(expr: &OperatorExpr) -> NormalFormOperator {
    normal_order_with(expr, RewriteStrategy::Leftmost)
}

/// Each rewrite removes one inversion or two letters, so this terminates.
pub fn normal_order_with(expr: &OperatorExpr, strategy: RewriteStrategy) -> NormalFormOperator {
    let mut work: BTreeMap<BosonWord, ExactScalar> = expr.terms.clone();
    let mut out = BTreeMap::new();
    while let Some((w, c)) = work.pop_first() {
        let pos = match strategy {
            RewriteStrategy::Leftmost => w.inversions().next(),
            RewriteStrategy::Rightmost => w.inversions().next_back(),
        };
        match pos {
            None => {
                let i = w.count(Letter::Create) as u32;
                let j = w.count(Letter::Annihilate) as u32;
                add_into(&mut out, (i, j), c);
            }
            Some(p) => {
                let mut swapped = w.0.clone();
                swapped.swap(p, p + 1);
                let mut contracted = w.0.clone();
                contracted.drain(p..p + 2);
                add_into(&mut work, BosonWord(swapped), c.clone());
                add_into(&mut work, BosonWord(contracted), c);
            }
        }
    }
    NormalFormOperator { terms: out }
}

/// Product of normal forms via the closed-form reordering of `a^j (a†)^k`.
pub fn multiply_normal(u: &NormalFormOperator, v: &NormalFormOperator) -> NormalFormOperator {
    let mut out = BTreeMap::new();
    for (&(i, j), c1) in &u.terms {
        for (&(k, l), c2) in &v.terms {
            let base = c1 * c2;
            let row_j = binomial_row(j as usize);
            let row_k = binomial_row(k as usize);
            for m in 0..=j.min(k) {
                let weight: BigInt = &row_j[m as usize] * &row_k[m as usize] * factorial(m as usize);
                add_into(&mut out, (i + k - m, j + l - m), &base * &ExactScalar::from_integer(weight));
            }
        }
    }
    NormalFormOperator { terms: out }
}

/// `Normal(omega^n)` through repeated closed-form products.
pub fn power_normal(omega: &OperatorExpr, n: u32, limit: u128) -> Result<NormalFormOperator, HwError> {
    check_blowup(omega.len(), n, limit)?;
    let base = normal_order(omega);
    let mut acc = NormalFormOperator::identity();
    for _ in 0..n {
        acc = multiply_normal(&acc, &base);
    }
    Ok(acc)
}

/// The common `i - j` of every term of `Normal(omega)`.
pub fn excess(omega: &OperatorExpr) -> Result<i64, HwError> {
    let normal = normal_order(omega);
    let es = normal.excesses();
    match es.len() {
        0 => Err(HwError::ZeroOperator),
        1 => Ok(*es.iter().next().expect("one")),
        _ => Err(HwError::Inhomogeneous(es.into_iter().collect())),
    }
}

/// Generalized Stirling numbers `S_omega(n, k)` for `n <= n_max`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StirlingTable {
    pub excess: i64,
    pub rows: BTreeMap<usize, BTreeMap<usize, ExactScalar>>,
}

impl StirlingTable {
    pub fn get(&self, n: usize, k: usize) -> ExactScalar {
        self.rows.get(&n).and_then(|r| r.get(&k)).cloned().unwrap_or_else(ExactScalar::zero)
    }

    pub fn max_n(&self) -> usize {
        self.rows.keys().next_back().copied().unwrap_or(0)
    }

    pub fn max_k(&self) -> usize {
        self.rows.values().flat_map(|r| r.keys().next_back()).copied().max().unwrap_or(0)
    }

    /// Column `k` as an exponential series in `x`: `sum_n S(n, k) x^n/n!`.
    pub fn column(&self, k: usize) -> EgfSeries {
        EgfSeries::from_fn(self.max_n(), |n| Poly::constant(self.get(n, k)))
    }

    /// `n,k,value` lines for every stored entry, with a header.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,k,value\n");
        for (n, row) in &self.rows {
            for (k, v) in row {
                s.push_str(&format!("{n},{k},{v}\n"));
            }
        }
        s
    }

    /// One line per row, `n: S(n,0) S(n,1) ... S(n,kmax)`.
    pub fn to_triangle(&self) -> String {
        let mut s = String::new();
        for (n, row) in &self.rows {
            let top = row.keys().next_back().copied().unwrap_or(0);
            let cells: Vec<String> = (0..=top).map(|k| self.get(*n, k).to_string()).collect();
            s.push_str(&format!("{n}: {}\n", cells.join(" ")));
        }
        s
    }
}

/// Reads `S_omega(n, k)` off `Normal(omega^n)`: at `(ne + k, k)` when the
/// excess `e` is nonnegative, at `(k, k + n|e|)` otherwise. Every term of
/// the normal form must land in one of those slots.
pub fn gen_stirling(omega: &OperatorExpr, n_max: usize, limit: u128) -> Result<StirlingTable, HwError> {
    let e = excess(omega)?;
    check_blowup(omega.len(), n_max as u32, limit)?;
    let base = normal_order(omega);
    let mut power = NormalFormOperator::identity();
    let mut rows = BTreeMap::new();
    for n in 0..=n_max {
        if n > 0 {
            power = multiply_normal(&power, &base);
        }
        let shift = n as i64 * e.abs();
        let mut row = BTreeMap::new();
        for (&(i, j), c) in power.terms() {
            let (k, other, expected) = if e >= 0 { (j, i, j as i64 + shift) } else { (i, j, i as i64 + shift) };
            if other as i64 != expected {
                return Err(HwError::ExtractionMismatch { n, i, j, excess: e });
            }
            row.insert(k as usize, c.clone());
        }
        rows.insert(n, row);
    }
    Ok(StirlingTable { excess: e, rows })
}

/// With one annihilation per word, `T(x, y) = sum S(n,k) x^n/n! y^k`
/// factors as `g(x) exp(y A(x))`. Here `g` is the `y^0` column and
/// `A = T_1 / g`; the check compares every column `2 <= k <= order` with
/// `g A^k / k!` up to `x^order`.
pub fn verify_one_annihilation(omega: &OperatorExpr, order: usize, limit: u128) -> Result<CheckReport, HwError> {
    if let Some((w, _)) = omega.terms().find(|(w, _)| w.count(Letter::Annihilate) != 1) {
        return Err(HwError::NotOneAnnihilation(w.to_string()));
    }
    let table = gen_stirling(omega, order, limit)?;
    let g = table.column(0);
    let a = table.column(1).div(&g)?;
    let axiom = format!("one-annihilation-factorization[{omega}]");
    let mut checked = 0;
    for k in 2..=order {
        let inv = ExactScalar::new(1, factorial(k)).expect("k! > 0");
        let predicted = g.mul(&a.pow(k as u32)).scale(&Poly::constant(inv));
        let actual = table.column(k);
        for n in 0..=order {
            checked += 1;
            if predicted.coeff(n) != actual.coeff(n) {
                return Ok(CheckReport::fail(
                    axiom,
                    format!("S({n},{k}) = {} but g A^{k}/{k}! gives {}", actual.coeff(n), predicted.coeff(n)),
                    checked,
                ));
            }
        }
    }
    Ok(CheckReport::pass(axiom, checked))
}

/// Parses sums of products of `a`, `ad` (also `a+` or `a†`) and
/// parenthesized subexpressions, each optionally raised to a positive
/// power. A term may start with a rational coefficient, optionally followed
/// by `*`. `a+` only means `a†` when the `+` touches the `a`.
pub fn parse_operator(text: &str) -> Result<OperatorExpr, HwError> {
    let mut p = Parser { chars: text.chars().collect(), pos: 0 };
    let expr = p.sum()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error(format!("unexpected `{}`", p.chars[p.pos])));
    }
    Ok(expr)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error(&self, message: impl Into<String>) -> HwError {
        HwError::Syntax { pos: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<OperatorExpr, HwError> {
        let mut acc = OperatorExpr::zero();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    ExactScalar::one()
                }
                Some('-') | Some('\u{2212}') => {
                    self.pos += 1;
                    -ExactScalar::one()
                }
                _ if first => ExactScalar::one(),
                _ => return Ok(acc),
            };
            first = false;
            let t = self.term()?;
            acc = acc.add(&t.scale(&sign));
        }
    }

    fn term(&mut self) -> Result<OperatorExpr, HwError> {
        let mut coeff = ExactScalar::one();
        let mut has_coeff = false;
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            coeff = self.rational()?;
            has_coeff = true;
            if self.peek() == Some('*') {
                self.pos += 1;
                if !self.starts_factor() {
                    return Err(self.error("expected a factor after `*`"));
                }
            }
        }
        if !self.starts_factor() {
            if has_coeff {
                return Ok(OperatorExpr::identity().scale(&coeff));
            }
            return Err(match self.peek() {
                Some(c) => self.error(format!("expected a term, found `{c}`")),
                None => self.error("expected a term, found end of input"),
            });
        }
        let product = self.product()?;
        Ok(product.scale(&coeff))
    }

    fn starts_factor(&mut self) -> bool {
        matches!(self.peek(), Some('a') | Some('('))
    }

    fn product(&mut self) -> Result<OperatorExpr, HwError> {
        let mut acc = self.factor()?;
        loop {
            if self.peek() == Some('*') {
                self.pos += 1;
                if !self.starts_factor() {
                    return Err(self.error("expected a factor after `*`"));
                }
            } else if !self.starts_factor() {
                return Ok(acc);
            }
            let f = self.factor()?;
            acc = acc.mul(&f);
        }
    }

    fn factor(&mut self) -> Result<OperatorExpr, HwError> {
        let base = match self.peek() {
            Some('a') => {
                self.pos += 1;
                match self.chars.get(self.pos) {
                    Some('d') | Some('+') | Some('\u{2020}') => {
                        self.pos += 1;
                        OperatorExpr::word(BosonWord(vec![Letter::Create]))
                    }
                    Some(c) if c.is_alphanumeric() => return Err(self.error(format!("unknown symbol `a{c}`"))),
                    _ => OperatorExpr::word(BosonWord(vec![Letter::Annihilate])),
                }
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                inner
            }
            Some(c) => return Err(self.error(format!("expected a factor, found `{c}`"))),
            None => return Err(self.error("expected a factor, found end of input")),
        };
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let mut lit = String::new();
            if matches!(self.chars.get(self.pos), Some('-') | Some('+')) {
                lit.push(self.chars[self.pos]);
                self.pos += 1;
            }
            while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                lit.push(self.chars[self.pos]);
                self.pos += 1;
            }
            let n: u32 = match lit.parse::<i64>() {
                Ok(n) if n > 0 && lit.chars().all(|c| c.is_ascii_digit()) => {
                    u32::try_from(n).map_err(|_| HwError::BadExponent { pos: start, found: lit.clone() })?
                }
                _ => return Err(HwError::BadExponent { pos: start, found: lit }),
            };
            return base.pow(n, DEFAULT_WORD_LIMIT);
        }
        Ok(base)
    }

    fn rational(&mut self) -> Result<ExactScalar, HwError> {
        let start = self.pos;
        let mut lit = String::new();
        while self.pos < self.chars.len() && (self.chars[self.pos].is_ascii_digit() || self.chars[self.pos] == '/') {
            lit.push(self.chars[self.pos]);
            self.pos += 1;
        }
        lit.parse().map_err(|_| HwError::Syntax { pos: start, message: format!("bad coefficient `{lit}`") })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn op(s: &str) -> OperatorExpr {
        parse_operator(s).unwrap()
    }

    fn w(s: &str) -> BosonWord {
        BosonWord(
            s.chars()
                .map(|c| match c {
                    'D' => Letter::Create,
                    'A' => Letter::Annihilate,
                    _ => panic!("{c}"),
                })
                .collect(),
        )
    }

    fn nf(terms: &[((u32, u32), i64)]) -> NormalFormOperator {
        NormalFormOperator::from_terms(terms.iter().map(|&(k, c)| (k, ExactScalar::from(c))))
    }

    #[test]
    fn parsing() {
        assert_eq!(op("ad a"), OperatorExpr::word(w("DA")));
        assert_eq!(op("a ad"), OperatorExpr::word(w("AD")));
        assert_eq!(op("a† a"), op("a+ a"));
        assert_eq!(op("a†a"), OperatorExpr::word(w("DA")));
        let e = op("(ad)^2 a + 3 ad");
        assert_eq!(e.len(), 2);
        assert_eq!(e.terms().map(|(_, c)| c.to_string()).collect::<Vec<_>>(), vec!["3", "1"]);
        assert_eq!(op("2*ad*a - 1/2"), op("2 ad a - 1/2*(ad a)^1 + 1/2 ad a - 1/2"));
        assert_eq!(op("(ad a)^2"), OperatorExpr::word(w("DADA")));
        assert_eq!(op("ad a - ad a"), OperatorExpr::zero());
        assert_eq!(op("(a + ad)^2").len(), 4);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_operator("a^0"), Err(HwError::BadExponent { pos: 2, .. })));
        assert!(matches!(parse_operator("a^-1"), Err(HwError::BadExponent { .. })));
        assert!(matches!(parse_operator("ab"), Err(HwError::Syntax { pos: 1, .. })));
        assert!(matches!(parse_operator("ad +"), Err(HwError::Syntax { pos: 4, .. })));
        assert!(matches!(parse_operator("(ad a"), Err(HwError::Syntax { .. })));
        assert!(matches!(parse_operator("x"), Err(HwError::Syntax { pos: 0, .. })));
        assert!(matches!(parse_operator(""), Err(HwError::Syntax { .. })));
        assert!(matches!(parse_operator("3*"), Err(HwError::Syntax { .. })));
    }

    #[test]
    fn rewriting_examples() {
        assert_eq!(normal_order(&OperatorExpr::word(w("AD"))), nf(&[((1, 1), 1), ((0, 0), 1)]));
        assert_eq!(normal_order(&OperatorExpr::word(w("DA"))), nf(&[((1, 1), 1)]));
        assert_eq!(normal_order(&OperatorExpr::word(w("DAD"))), nf(&[((2, 1), 1), ((1, 0), 1)]));
        assert_eq!(normal_order(&OperatorExpr::word(w("AAD"))), nf(&[((1, 2), 1), ((0, 1), 2)]));
    }

    #[test]
    fn printer_and_round_trip() {
        let n = normal_order(&op("a ad"));
        assert_eq!(n.to_string(), "1*(ad)^1*a^1 + 1");
        assert_eq!(normal_order(&op(&n.to_string())), n);
        let m = nf(&[((2, 0), -3), ((0, 2), 1), ((0, 0), -1)]);
        assert_eq!(m.to_string(), "-3*(ad)^2 + 1*a^2 - 1");
        assert_eq!(normal_order(&op(&m.to_string())), m);
        assert_eq!(NormalFormOperator::zero().to_string(), "0");
        assert_eq!(op("3 ad a + a").to_string(), "3*ad a + 1*a");
    }

    #[test]
    fn closed_form_products() {
        let n = nf(&[((1, 1), 1)]);
        assert_eq!(multiply_normal(&n, &n), nf(&[((2, 2), 1), ((1, 1), 1)]));
        assert_eq!(multiply_normal(&NormalFormOperator::identity(), &n), n);
        assert_eq!(multiply_normal(&n, &NormalFormOperator::identity()), n);
        assert_eq!(multiply_normal(&n, &NormalFormOperator::zero()), NormalFormOperator::zero());
    }

    #[test]
    fn powers() {
        let number = op("ad a");
        let limit = DEFAULT_WORD_LIMIT;
        assert_eq!(power_normal(&number, 2, limit).unwrap(), nf(&[((2, 2), 1), ((1, 1), 1)]));
        assert_eq!(power_normal(&number, 3, limit).unwrap(), nf(&[((3, 3), 1), ((2, 2), 3), ((1, 1), 1)]));
        assert_eq!(power_normal(&op("ad ad a + a"), 0, limit).unwrap(), NormalFormOperator::identity());
        assert!(matches!(power_normal(&op("a + ad"), 30, limit), Err(HwError::Blowup { .. })));
        assert!(matches!(op("a + ad").pow(25, limit), Err(HwError::Blowup { .. })));
    }

    #[test]
    fn excess_values() {
        assert_eq!(excess(&op("ad a")), Ok(0));
        assert_eq!(excess(&op("ad ad a")), Ok(1));
        assert_eq!(excess(&op("ad a a")), Ok(-1));
        assert_eq!(excess(&op("ad a + a")), Err(HwError::Inhomogeneous(vec![-1, 0])));
        assert_eq!(excess(&OperatorExpr::zero()), Err(HwError::ZeroOperator));
    }

    #[test]
    fn stirling_extraction() {
        let t = gen_stirling(&op("ad a"), 4, DEFAULT_WORD_LIMIT).unwrap();
        assert_eq!(t.get(4, 2), ExactScalar::from(7));
        assert_eq!(t.get(0, 0), ExactScalar::one());
        let t = gen_stirling(&op("ad ad a"), 2, DEFAULT_WORD_LIMIT).unwrap();
        assert_eq!(t.get(2, 1), ExactScalar::from(2));
        assert_eq!(t.get(2, 2), ExactScalar::from(1));
        assert_eq!(t.excess, 1);
        let t = gen_stirling(&op("ad a a"), 3, DEFAULT_WORD_LIMIT).unwrap();
        assert_eq!(t.excess, -1);
        assert_eq!(t.get(0, 0), ExactScalar::one());
        assert!(gen_stirling(&op("ad a + a"), 3, DEFAULT_WORD_LIMIT).is_err());
        let csv = gen_stirling(&op("ad a"), 2, DEFAULT_WORD_LIMIT).unwrap().to_csv();
        assert_eq!(csv, "n,k,value\n0,0,1\n1,1,1\n2,1,1\n2,2,1\n");
    }

    #[test]
    fn one_annihilation() {
        for s in ["ad a", "ad ad a", "ad a ad"] {
            let r = verify_one_annihilation(&op(s), 6, DEFAULT_WORD_LIMIT).unwrap();
            assert!(r.passed(), "{s}: {r}");
        }
        assert_eq!(
            verify_one_annihilation(&op("ad a + (ad a)^2"), 6, DEFAULT_WORD_LIMIT),
            Err(HwError::NotOneAnnihilation("ad a ad a".into()))
        );
    }

    fn word_strategy(max_len: usize) -> impl Strategy<Value = BosonWord> {
        prop::collection::vec(prop::bool::ANY, 0..=max_len).prop_map(|v| {
            BosonWord(v.into_iter().map(|b| if b { Letter::Create } else { Letter::Annihilate }).collect())
        })
    }

    fn expr_strategy() -> impl Strategy<Value = OperatorExpr> {
        prop::collection::vec((word_strategy(5), -3i64..4), 0..4).prop_map(|ts| {
            ts.into_iter()
                .fold(OperatorExpr::zero(), |acc, (w, c)| acc.add(&OperatorExpr::term(w, ExactScalar::from(c))))
        })
    }

    proptest! {
        #[test]
        fn strategies_agree(word in word_strategy(10)) {
            let e = OperatorExpr::word(word);
            prop_assert_eq!(normal_order_with(&e, RewriteStrategy::Leftmost), normal_order_with(&e, RewriteStrategy::Rightmost));
        }

        #[test]
        fn closed_form_matches_rewriting(u in expr_strategy(), v in expr_strategy()) {
            let fast = multiply_normal(&normal_order(&u), &normal_order(&v));
            prop_assert_eq!(fast, normal_order(&u.mul(&v)));
        }

        #[test]
        fn normal_order_is_linear(u in expr_strategy(), v in expr_strategy(), a in -3i64..4, b in -3i64..4) {
            let (a, b) = (ExactScalar::from(a), ExactScalar::from(b));
            let lhs = normal_order(&u.scale(&a).add(&v.scale(&b)));
            let rhs = normal_order(&u).scale(&a).add(&normal_order(&v).scale(&b));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn product_is_associative(u in expr_strategy(), v in expr_strategy(), x in expr_strategy()) {
            let (nu, nv, nx) = (normal_order(&u), normal_order(&v), normal_order(&x));
            prop_assert_eq!(
                multiply_normal(&multiply_normal(&nu, &nv), &nx),
                multiply_normal(&nu, &multiply_normal(&nv, &nx))
            );
        }

        #[test]
        fn printer_round_trips(u in expr_strategy()) {
            let n = normal_order(&u);
            prop_assert_eq!(normal_order(&parse_operator(&n.to_string()).unwrap()), n.clone());
            prop_assert_eq!(parse_operator(&u.to_string()).unwrap(), u);
        }
    }
}
