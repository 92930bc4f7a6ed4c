use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("level n must be at least 1 (got {0})")]
    InvalidLevel(u32),

    #[error("weight must be nonnegative (got {0})")]
    NegativeWeight(i64),

    #[error("character is not symmetric under w -> -w (weight {0})")]
    NotSymmetric(i64),

    #[error("{what} {value} out of range [{lo}, {hi}]")]
    OutOfRange {
        what: &'static str,
        value: u64,
        lo: u64,
        hi: u64,
    },

    #[error("negative leading coefficient at weight {weight}: not a tilting character")]
    NegativeLeadingCoefficient { weight: i64 },

    #[error("{op} is not supported for p = {p}")]
    UnsupportedPrime { p: u64, op: &'static str },

    #[error("Ver_{{{p}^{n}}} has {simples} simple objects, above the bound {bound}")]
    BoundExceeded { p: u64, n: u32, simples: u64, bound: u64 },
}

impl Error {
    pub(crate) fn out_of_range(what: &'static str, value: u64, lo: u64, hi: u64) -> Self {
        Error::OutOfRange { what, value, lo, hi }
    }
}
