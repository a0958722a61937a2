//! Arithmetic self-similarity of sequences over finite cyclic groups.
//!
//! The crate covers completely additive sequences, Toeplitz words with
//! permutation gaps, the discrete-logarithm classification of additive
//! one-gap patterns, arithmetic-subsequence pattern rewriting, and Keane
//! block products. Every infinite object is an evaluable [`Seq`] and every
//! claim about one is checked against finite prefixes.

pub mod additive;
pub mod arithperm;
pub mod error;
pub mod exec;
pub mod group;
pub mod keane;
pub mod numtheory;
pub mod seq;
pub mod toeplitz;
pub mod toeplitzadd;

pub use error::{Error, Result};
pub use exec::Execution;
pub use group::{ghom_is_homomorphism, scalar_mul, xi, CyclicGroup, GroupElem, Perm, Word};
pub use seq::{IndexBase, Seq, SimilarityOutcome, SimilarityVerdict};
pub use toeplitz::{Pattern, PatternSymbol};

/// Default prefix depth for similarity and additivity checks.
pub const DEFAULT_DEPTH: u64 = 4096;
