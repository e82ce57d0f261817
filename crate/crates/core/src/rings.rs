//! Exact coefficient arithmetic.
//!
//! [`ExactScalar`] is an arbitrary-precision rational kept in lowest terms and
//! [`Poly`] is a commutative multivariate polynomial over it. Every series
//! coefficient and every statistic value in this crate lives in `Poly`;
//! scalars embed as constant polynomials.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("variable `{0}` has no value in the assignment")]
    MissingVariable(String),
    #[error("cannot parse `{text}`: {reason}")]
    Parse { text: String, reason: String },
    #[error("division by zero")]
    DivisionByZero,
}

/// Rational number in lowest terms with a positive denominator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactScalar(BigRational);

impl ExactScalar {
    pub fn new(numerator: impl Into<BigInt>, denominator: impl Into<BigInt>) -> Result<Self, RingError> {
        let d = denominator.into();
        if d.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        Ok(ExactScalar(BigRational::new(numerator.into(), d)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        ExactScalar(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        ExactScalar(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactScalar(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// The integer value, when the denominator is 1.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.to_integer())
    }

    pub fn recip(&self) -> Result<Self, RingError> {
        if self.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        Ok(ExactScalar(self.0.recip()))
    }

    pub fn pow(&self, exp: u32) -> Self {
        ExactScalar(Pow::pow(&self.0, exp))
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        ExactScalar(self.0.abs())
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        ExactScalar::from_integer(n)
    }
}

impl From<BigInt> for ExactScalar {
    fn from(n: BigInt) -> Self {
        ExactScalar::from_integer(n)
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for ExactScalar {
    type Err = RingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| RingError::Parse { text: s.to_string(), reason: reason.to_string() };
        let t = s.trim().replace('\u{2212}', "-");
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t.as_str(), "1"),
        };
        let n: BigInt = num.parse().map_err(|_| err("bad numerator"))?;
        let d: BigInt = den.parse().map_err(|_| err("bad denominator"))?;
        ExactScalar::new(n, d)
    }
}

macro_rules! scalar_binop {
    ($tr:ident, $method:ident, $op:tt) => {
        impl $tr for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                ExactScalar(self.0 $op rhs.0)
            }
        }
        impl<'a> $tr<&'a ExactScalar> for &'a ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &'a ExactScalar) -> ExactScalar {
                ExactScalar(&self.0 $op &rhs.0)
            }
        }
    };
}

scalar_binop!(Add, add, +);
scalar_binop!(Sub, sub, -);
scalar_binop!(Mul, mul, *);

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar(-self.0)
    }
}

impl AddAssign<&ExactScalar> for ExactScalar {
    fn add_assign(&mut self, rhs: &ExactScalar) {
        self.0 += &rhs.0;
    }
}

impl Serialize for ExactScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExactScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Power product of named variables; absent variables have exponent zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(BTreeMap<String, u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(BTreeMap::new())
    }

    pub fn var(name: &str) -> Self {
        Monomial::var_pow(name, 1)
    }

    pub fn var_pow(name: &str, exp: u32) -> Self {
        let mut m = BTreeMap::new();
        if exp > 0 {
            m.insert(name.to_string(), exp);
        }
        Monomial(m)
    }

    pub fn from_exponents<'a>(pairs: impl IntoIterator<Item = (&'a str, u32)>) -> Self {
        let mut m = BTreeMap::new();
        for (v, e) in pairs {
            if e > 0 {
                *m.entry(v.to_string()).or_insert(0) += e;
            }
        }
        Monomial(m)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, var: &str) -> u32 {
        self.0.get(var).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn vars(&self) -> impl Iterator<Item = (&str, u32)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = self.0.clone();
        for (v, e) in &other.0 {
            *m.entry(v.clone()).or_insert(0) += e;
        }
        Monomial(m)
    }
}

/// Lexicographic order with variables ranked by name: the exponent of the
/// alphabetically first variable decides, then the next one.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.0.iter().peekable();
        let mut b = other.0.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match ea.cmp(eb) {
                        Ordering::Equal => {
                            a.next();
                            b.next();
                        }
                        o => return o,
                    },
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, e) in &self.0 {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Multivariate polynomial with exact rational coefficients.
///
/// No zero coefficient is ever stored, so structural equality is algebraic
/// equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, ExactScalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(ExactScalar::one())
    }

    pub fn constant(c: ExactScalar) -> Self {
        Poly::term(Monomial::one(), c)
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Poly::constant(ExactScalar::from_integer(n))
    }

    pub fn var(name: &str) -> Self {
        Poly::term(Monomial::var(name), ExactScalar::one())
    }

    pub fn monomial(m: Monomial) -> Self {
        Poly::term(m, ExactScalar::one())
    }

    pub fn term(m: Monomial, c: ExactScalar) -> Self {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// `Some(c)` when the polynomial has no variables.
    pub fn as_constant(&self) -> Option<ExactScalar> {
        match self.terms.len() {
            0 => Some(ExactScalar::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    /// Integer value of a constant polynomial.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_constant().and_then(|c| c.to_integer())
    }

    pub fn coefficient(&self, m: &Monomial) -> ExactScalar {
        self.terms.get(m).cloned().unwrap_or_else(ExactScalar::zero)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &ExactScalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn variables(&self) -> Vec<String> {
        let mut vs: Vec<String> = self.terms.keys().flat_map(|m| m.vars().map(|(v, _)| v.to_string())).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn add_term(&mut self, m: Monomial, c: ExactScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += &c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn scale(&self, c: &ExactScalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn scale_int(&self, n: &BigInt) -> Poly {
        self.scale(&ExactScalar::from_integer(n.clone()))
    }

    pub fn pow(&self, exp: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Exact value under a full assignment of the occurring variables.
    pub fn eval(&self, assignment: &BTreeMap<String, ExactScalar>) -> Result<ExactScalar, RingError> {
        let mut total = ExactScalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.vars() {
                let x = assignment.get(v).ok_or_else(|| RingError::MissingVariable(v.to_string()))?;
                t = &t * &x.pow(e);
            }
            total += &t;
        }
        Ok(total)
    }

    /// Substitutes polynomials for some variables; the rest stay symbolic.
    pub fn substitute(&self, assignment: &BTreeMap<String, Poly>) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            let mut rest = Vec::new();
            for (v, e) in m.vars() {
                match assignment.get(v) {
                    Some(p) => t = &t * &p.pow(e),
                    None => rest.push((v, e)),
                }
            }
            t = &t * &Poly::monomial(Monomial::from_exponents(rest));
            out = &out + &t;
        }
        out
    }
}

impl From<ExactScalar> for Poly {
    fn from(c: ExactScalar) -> Self {
        Poly::constant(c)
    }
}

impl From<i64> for Poly {
    fn from(n: i64) -> Self {
        Poly::integer(n)
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        self += &rhs;
        self
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

/// Terms from the largest monomial down, e.g. `y^3 + 3*y^2 + 4*y`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

impl FromStr for Poly {
    type Err = RingError;

    /// Accepts the printed form plus `·` for `*` and `−` for `-`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: String| RingError::Parse { text: s.to_string(), reason };
        let norm: String = s
            .chars()
            .map(|c| match c {
                '\u{2212}' => '-',
                '\u{00b7}' => '*',
                c => c,
            })
            .filter(|c| !c.is_whitespace())
            .collect();
        if norm.is_empty() {
            return Err(err("empty input".into()));
        }
        let chars: Vec<char> = norm.chars().collect();
        let mut pos = 0;
        let mut out = Poly::zero();
        while pos < chars.len() {
            let mut sign = ExactScalar::one();
            if chars[pos] == '+' || chars[pos] == '-' {
                if chars[pos] == '-' {
                    sign = -sign;
                }
                pos += 1;
            } else if pos != 0 {
                return Err(err(format!("expected `+` or `-` at offset {pos}")));
            }
            let mut coeff = ExactScalar::one();
            let mut mono = Monomial::one();
            let mut expect_factor = true;
            let mut saw_factor = false;
            while pos < chars.len() && expect_factor {
                let c = chars[pos];
                if c.is_ascii_digit() {
                    let start = pos;
                    while pos < chars.len() && (chars[pos].is_ascii_digit() || chars[pos] == '/') {
                        pos += 1;
                    }
                    let lit: String = chars[start..pos].iter().collect();
                    coeff = &coeff * &lit.parse::<ExactScalar>()?;
                } else if is_ident_start(c) {
                    let start = pos;
                    while pos < chars.len() && is_ident_char(chars[pos]) {
                        pos += 1;
                    }
                    let name: String = chars[start..pos].iter().collect();
                    let mut e = 1u32;
                    if pos < chars.len() && chars[pos] == '^' {
                        pos += 1;
                        let es = pos;
                        while pos < chars.len() && chars[pos].is_ascii_digit() {
                            pos += 1;
                        }
                        let lit: String = chars[es..pos].iter().collect();
                        e = lit.parse().map_err(|_| err(format!("bad exponent at offset {es}")))?;
                    }
                    mono = mono.mul(&Monomial::var_pow(&name, e));
                } else {
                    return Err(err(format!("unexpected `{c}` at offset {pos}")));
                }
                saw_factor = true;
                expect_factor = pos < chars.len() && chars[pos] == '*';
                if expect_factor {
                    pos += 1;
                }
            }
            if !saw_factor || expect_factor {
                return Err(err(format!("incomplete term at offset {pos}")));
            }
            out.add_term(mono, &sign * &coeff);
        }
        Ok(out)
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
