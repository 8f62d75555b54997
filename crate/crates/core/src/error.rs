use thiserror::Error;

/// Errors raised while validating parameters or running the decomposition
/// pipelines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("p = 2 is not supported: only odd primes have trivial Schur indices here")]
    EvenPrime,

    #[error("invalid exponent: {0}")]
    InvalidExponent(String),

    #[error("{value} is not coprime to {p}")]
    NotCoprime { value: i64, p: u64 },

    #[error("r = {r} is not congruent to 1 mod {p}: its order mod {p}^{n} is not a power of {p}")]
    NotPPowerOrder { r: u64, p: u64, n: u32 },

    #[error("r = 1 mod {p}^{n} gives an abelian group; use abelian mode")]
    AbelianPresentation { p: u64, n: u32 },

    #[error("r has order {p}^{s} but b has order {p}^{m}: need s <= m")]
    OrderExceedsM { p: u64, s: u32, m: u32 },

    #[error("p-adic valuation of zero is undefined")]
    ZeroValuation,

    #[error("modulus must be at least 2")]
    TrivialModulus,

    #[error("group order {order} exceeds the bound {bound}")]
    SizeBound { order: u128, bound: u64 },

    #[error("cannot combine elements of Q(zeta_{left}^k) and Q(zeta_{right}^k)")]
    PrimeMismatch { left: u64, right: u64 },

    #[error("character list is incomplete: sum of squared degrees {got} != |G| = {expected}")]
    IncompleteCharacters { got: u128, expected: u128 },

    #[error("malformed decomposition text: {0}")]
    Parse(String),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

/// Coarse classification used to pick process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Validation,
    SizeBound,
    Internal,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::SizeBound { .. } => ErrorKind::SizeBound,
            Error::Inconsistent(_) | Error::IncompleteCharacters { .. } => ErrorKind::Internal,
            _ => ErrorKind::Validation,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
