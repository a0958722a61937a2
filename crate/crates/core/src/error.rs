use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("group mismatch: Z_{left} vs Z_{right}")]
    GroupMismatch { left: u32, right: u32 },

    #[error("invalid group order {0}")]
    InvalidOrder(u64),

    #[error("value {value} is out of range for Z_{order}")]
    OutOfRange { value: u64, order: u32 },

    #[error("table is not a permutation of 0..{order}")]
    NotAPermutation { order: u32 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("{g} is not a primitive root modulo {p}")]
    NotPrimitiveRoot { g: u64, p: u64 },

    #[error("{a} is not coprime to {m}")]
    NotCoprime { a: u64, m: u64 },

    #[error("fill arity mismatch: {gaps} gaps but {symbols} filling symbols")]
    ArityMismatch { gaps: usize, symbols: usize },

    #[error("non-productive pattern: the first symbol is a gap")]
    NonProductive,

    #[error("empty pattern")]
    EmptyPattern,

    #[error("xi({n}, {m}) = {xi} does not divide c = {c}")]
    Indivisible { n: u64, m: u64, xi: u64, c: u64 },

    #[error("pattern of length {len} exceeds the materialization limit {limit}")]
    TooLarge { len: u128, limit: u128 },

    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("pattern is not additive")]
    NotAdditive,

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
