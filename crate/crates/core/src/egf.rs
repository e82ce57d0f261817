//! Truncated exponential generating series.
//!
//! Coefficients are stored in the `z^n/n!` basis: `coeffs[n]` is `n!` times
//! the ordinary coefficient of `z^n`. Products are therefore binomial
//! convolutions and integral inputs stay integral.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rgs::{block_sizes, RestrictedGrowth};
use crate::rings::{ExactScalar, Poly};

/// Truncation order used by the partition-sum paths.
pub const DEFAULT_ORACLE_ORDER: usize = 8;
/// Truncation order used by the recurrence paths.
pub const DEFAULT_RECURRENCE_ORDER: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EgfError {
    #[error("exponential needs a zero constant term, found {0}")]
    NonZeroConstant(String),
    #[error("logarithm needs constant term 1, found {0}")]
    NonUnitConstant(String),
    #[error("division needs an invertible scalar constant term, found {0}")]
    NonInvertibleConstant(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SeriesRepr", into = "SeriesRepr")]
pub struct EgfSeries {
    coeffs: Vec<Poly>,
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    order: usize,
    coeffs: Vec<Poly>,
}

impl From<EgfSeries> for SeriesRepr {
    fn from(s: EgfSeries) -> Self {
        SeriesRepr { order: s.order(), coeffs: s.coeffs }
    }
}

impl TryFrom<SeriesRepr> for EgfSeries {
    type Error = String;
    fn try_from(r: SeriesRepr) -> Result<Self, String> {
        if r.coeffs.len() != r.order + 1 {
            return Err(format!("order {} needs {} coefficients, found {}", r.order, r.order + 1, r.coeffs.len()));
        }
        Ok(EgfSeries { coeffs: r.coeffs })
    }
}

/// Row `n` of Pascal's triangle.
pub fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 0..n {
        let next = &row[k] * BigInt::from(n - k) / BigInt::from(k + 1);
        row.push(next);
    }
    row
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

impl EgfSeries {
    /// Series with the given coefficients; must contain at least `c_0`.
    pub fn new(coeffs: Vec<Poly>) -> Self {
        assert!(!coeffs.is_empty(), "a series carries at least its constant term");
        EgfSeries { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Poly) -> Self {
        EgfSeries { coeffs: (0..=order).map(f).collect() }
    }

    pub fn from_integers<I: Into<BigInt>>(values: impl IntoIterator<Item = I>) -> Self {
        EgfSeries::new(values.into_iter().map(|v| Poly::integer(v.into())).collect())
    }

    pub fn zero(order: usize) -> Self {
        EgfSeries::from_fn(order, |_| Poly::zero())
    }

    /// The multiplicative identity `(1, 0, 0, ...)`.
    pub fn one(order: usize) -> Self {
        EgfSeries::from_fn(order, |n| if n == 0 { Poly::one() } else { Poly::zero() })
    }

    /// `e^z`, all coefficients 1.
    pub fn exp_z(order: usize) -> Self {
        EgfSeries::from_fn(order, |_| Poly::one())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &Poly {
        &self.coeffs[n]
    }

    pub fn truncate(&self, order: usize) -> EgfSeries {
        EgfSeries { coeffs: self.coeffs[..=order.min(self.order())].to_vec() }
    }

    /// Coefficients as integers, when every one of them is an integer constant.
    pub fn as_integers(&self) -> Option<Vec<BigInt>> {
        self.coeffs.iter().map(Poly::as_integer).collect()
    }

    pub fn add(&self, other: &EgfSeries) -> EgfSeries {
        let n = self.order().min(other.order());
        EgfSeries::from_fn(n, |k| &self.coeffs[k] + &other.coeffs[k])
    }

    pub fn sub(&self, other: &EgfSeries) -> EgfSeries {
        let n = self.order().min(other.order());
        EgfSeries::from_fn(n, |k| &self.coeffs[k] - &other.coeffs[k])
    }

    pub fn neg(&self) -> EgfSeries {
        EgfSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, c: &Poly) -> EgfSeries {
        EgfSeries { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Adds `c` to the constant term.
    pub fn add_constant(&self, c: &Poly) -> EgfSeries {
        let mut out = self.clone();
        out.coeffs[0] = &out.coeffs[0] + c;
        out
    }

    /// Binomial convolution `(fg)_n = sum_k C(n,k) f_k g_{n-k}`.
    pub fn mul(&self, other: &EgfSeries) -> EgfSeries {
        let n = self.order().min(other.order());
        EgfSeries::from_fn(n, |m| {
            let row = binomial_row(m);
            let mut acc = Poly::zero();
            for (k, c) in row.iter().enumerate() {
                let t = &self.coeffs[k] * &other.coeffs[m - k];
                acc += &t.scale_int(c);
            }
            acc
        })
    }

    pub fn pow(&self, k: u32) -> EgfSeries {
        let mut acc = EgfSeries::one(self.order());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Quotient `self / other`; the divisor's constant term must be a nonzero scalar.
    pub fn div(&self, other: &EgfSeries) -> Result<EgfSeries, EgfError> {
        let lead = other.coeffs[0]
            .as_constant()
            .filter(|c| !c.is_zero())
            .ok_or_else(|| EgfError::NonInvertibleConstant(other.coeffs[0].to_string()))?;
        let inv = lead.recip().expect("nonzero");
        let n = self.order().min(other.order());
        let mut q: Vec<Poly> = Vec::with_capacity(n + 1);
        for m in 0..=n {
            let row = binomial_row(m);
            let mut acc = self.coeffs[m].clone();
            for (k, qk) in q.iter().enumerate() {
                acc = &acc - &(qk * &other.coeffs[m - k]).scale_int(&row[k]);
            }
            q.push(acc.scale(&inv));
        }
        Ok(EgfSeries { coeffs: q })
    }

    fn require_zero_constant(&self) -> Result<(), EgfError> {
        if self.coeffs[0].is_zero() {
            Ok(())
        } else {
            Err(EgfError::NonZeroConstant(self.coeffs[0].to_string()))
        }
    }

    /// `e^f` through the recurrence `a_{n+1} = sum_k C(n,k) f_{k+1} a_{n-k}`.
    pub fn exp(&self) -> Result<EgfSeries, EgfError> {
        self.require_zero_constant()?;
        let order = self.order();
        let mut a = vec![Poly::one()];
        for n in 0..order {
            let row = binomial_row(n);
            let mut acc = Poly::zero();
            for (k, c) in row.iter().enumerate() {
                let f = &self.coeffs[k + 1];
                if f.is_zero() {
                    continue;
                }
                acc += &(f * &a[n - k]).scale_int(c);
            }
            a.push(acc);
        }
        Ok(EgfSeries { coeffs: a })
    }

    /// `e^f` as the partition sum `a_n = sum over set partitions of [1..n] of
    /// the product of f_{|block|}`. Cost grows like the Bell numbers.
    pub fn exp_partition(&self) -> Result<EgfSeries, EgfError> {
        self.exp_partition_counted().map(|(s, _)| s)
    }

    /// Same as [`EgfSeries::exp_partition`], also returning how many
    /// partitions were visited for each `n`.
    pub fn exp_partition_counted(&self) -> Result<(EgfSeries, Vec<usize>), EgfError> {
        self.require_zero_constant()?;
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        let mut counts = Vec::with_capacity(self.coeffs.len());
        for n in 0..=self.order() {
            let mut acc = Poly::zero();
            let mut visited = 0;
            for s in RestrictedGrowth::new(n) {
                visited += 1;
                let mut prod = Poly::one();
                for size in block_sizes(&s) {
                    prod = &prod * &self.coeffs[size];
                    if prod.is_zero() {
                        break;
                    }
                }
                acc += &prod;
            }
            coeffs.push(acc);
            counts.push(visited);
        }
        Ok((EgfSeries { coeffs }, counts))
    }

    /// Inverse of [`EgfSeries::exp`]: the unique `f` with `f_0 = 0` and `e^f = self`.
    pub fn log(&self) -> Result<EgfSeries, EgfError> {
        if !self.coeffs[0].is_one() {
            return Err(EgfError::NonUnitConstant(self.coeffs[0].to_string()));
        }
        let order = self.order();
        let mut f = vec![Poly::zero()];
        for n in 0..order {
            let row = binomial_row(n);
            let mut acc = self.coeffs[n + 1].clone();
            for (k, c) in row.iter().enumerate().take(n) {
                let t = &f[k + 1] * &self.coeffs[n - k];
                acc = &acc - &t.scale_int(c);
            }
            f.push(acc);
        }
        Ok(EgfSeries { coeffs: f })
    }

    /// Ordinary coefficient `[z^n]`, i.e. `c_n / n!`.
    pub fn ordinary_coeff(&self, n: usize) -> Poly {
        let inv = ExactScalar::new(1, factorial(n)).expect("n! > 0");
        self.coeffs[n].scale(&inv)
    }
}

impl fmt::Display for EgfSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}
