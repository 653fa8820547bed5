use num_bigint::BigUint;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrimeModulus(BigUint),

    #[error("polynomial must be monic with degree at least 1")]
    NonMonicPolynomial,

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("lattice basis rows are linearly dependent")]
    DependentRows,

    #[error("LLL parameter delta must satisfy 1/4 < delta < 1, got {0}")]
    BadDelta(String),

    /// The reduced lattice vector failed the Howgrave-Graham test at the
    /// requested radius. `certified_x` is the largest radius found (by
    /// halving) at which the test passes with the same parameters, or zero.
    #[error("radius not certified with m = {m}, t_extra = {t_extra}; largest certified radius is {certified_x}")]
    BoundNotCertified {
        certified_x: BigUint,
        m: usize,
        t_extra: usize,
    },

    #[error("search cap {cap} exceeded")]
    CapExceeded { cap: u64 },

    #[error("argument {value} below the validity threshold {min}")]
    DomainTooSmall { value: u64, min: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
