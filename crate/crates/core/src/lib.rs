//! Exact exponential-formula computations over labelled structures.
//!
//! - [`rings`]: rationals and multivariate polynomials
//! - [`egf`]: truncated exponential generating series, `exp` and `log`
//! - [`sfd`]: structure families with a partial direct sum, axiom checkers
//! - [`families`]: graphs, endofunctions and set partitions
//! - [`statistics`]: multiplicative statistics, class sums, the exponential formula
//! - [`hw`]: normal ordering of boson operators, generalized Stirling numbers
//! - [`cache`], [`bfile`]: coefficient cache and OEIS b-file comparison

pub mod bfile;
pub mod cache;
pub mod egf;
pub mod families;
pub mod hw;
pub mod rgs;
pub mod rings;
pub mod sfd;
pub mod statistics;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Ring(#[from] rings::RingError),
    #[error(transparent)]
    Egf(#[from] egf::EgfError),
    #[error(transparent)]
    Sfd(#[from] sfd::SfdError),
    #[error(transparent)]
    Feature(#[from] families::FeatureError),
    #[error(transparent)]
    Hw(#[from] hw::HwError),
    #[error(transparent)]
    Bfile(#[from] bfile::BfileError),
    #[error("invalid statistic `{0}`: {1}")]
    Statistic(String, String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
