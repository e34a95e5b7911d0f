use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),

    #[error("rank must be at least 2 (and at most 64), got {0}")]
    InvalidRank(usize),

    #[error("invalid window {0:?}: {1}")]
    InvalidWindow(Vec<i64>, &'static str),

    #[error("simple reflection index {index} out of range for n = {n}")]
    InvalidSimpleRef { index: usize, n: usize },

    #[error("root ({0}, {1}) is not a root of GL_n")]
    InvalidRoot(usize, usize),

    #[error("element {0} has a nonzero translation part")]
    NotFinite(String),

    #[error("arrow along s{s} would increase length from {from} to {to}")]
    IncreasingLength { s: usize, from: usize, to: usize },

    #[error("search budget of {0} nodes exceeded")]
    BudgetExceeded(usize),

    #[error("element {0} is not a minimal length representative of its W_0-coset")]
    NotMinCosetRep(String),

    #[error("stratum label (k, l) = ({k}, {l}) is out of range for n = {n}")]
    InvalidLabel { n: usize, k: usize, l: usize },

    #[error("operation {op} does not apply to stratum ({k}, {l}) at n = {n}")]
    NotApplicable {
        op: &'static str,
        n: usize,
        k: usize,
        l: usize,
    },

    #[error("{op} refuses n = {n} (limit {limit})")]
    TooLarge {
        op: &'static str,
        n: usize,
        limit: usize,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parahoric guard failed: {0}")]
    ParahoricGuard(String),
}

pub type Result<T> = std::result::Result<T, Error>;
