use thiserror::Error;

use crate::scalar::Backend;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("cannot parse scalar {text:?}: {reason}")]
    Syntax { text: String, reason: &'static str },

    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),

    #[error("mixed backends: {0} and {1}")]
    MixedBackends(Backend, Backend),

    #[error("operation requires an exact backend, got {0}")]
    NotExact(Backend),

    #[error("tolerance must be zero for the {0} backend")]
    ToleranceOnExact(Backend),

    #[error("invalid tolerance {0}")]
    InvalidTolerance(f64),

    #[error("h and n must be positive (h = {h}, n = {n})")]
    InvalidShape { h: u32, n: usize },

    #[error("|X(h={h}, n={n})| overflows 64 bits")]
    CountOverflow { h: u32, n: usize },

    #[error("compositions come from different spaces: (h={0}, n={1}) vs (h={2}, n={3})")]
    ShapeMismatch(u32, usize, u32, usize),

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("empty vector")]
    EmptyVector,

    #[error("vector is not a B_{h}-vector")]
    NotBh { h: u32 },

    #[error("no pair of distinct compositions exists for n = 1")]
    NoDistinctPairs,

    #[error("fewer than two distinct sums: every h-fold sum coincides")]
    Degenerate,

    #[error("{what} must be positive")]
    NonPositive { what: &'static str },

    #[error("{needed} sums exceed the budget of {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },

    #[error("precondition failed: {0}")]
    Precondition(&'static str),

    #[error("sampled point lies outside the requested ball")]
    SampleOutsideBall,

    #[error("internal error: {0}")]
    Internal(String),
}
