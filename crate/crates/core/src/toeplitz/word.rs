//! Evaluation of Toeplitz words.
//!
//! Writing a 1-based index as N = rn + i with 1 ≤ i ≤ r, a letter a_i gives
//! T(N) = a_i and the j-th gap f gives T(N) = f(T(qn + j)). Since the first
//! symbol is a letter, qn + j < N, so the recursion always terminates.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::Pattern;
use crate::error::{Error, Result};
use crate::group::{CyclicGroup, Perm};
use crate::seq::{IndexBase, Seq};

/// A symbol as seen by the evaluator: a letter, or a gap with its 1-based rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sym {
    Letter(u32),
    Gap { perm: Perm, rank: u128 },
}

/// Anything that can answer "what is symbol i" for a pattern, possibly
/// without storing the pattern in full.
pub trait PatternSource: Send + Sync {
    fn group(&self) -> CyclicGroup;
    fn len(&self) -> u128;
    fn is_empty(&self) -> bool {
        self.len() == 0
    }
    fn gap_count(&self) -> u128;
    /// The symbol at 1-based position `i`.
    fn symbol_at(&self, i: u128) -> Sym;
}

impl PatternSource for Pattern {
    fn group(&self) -> CyclicGroup {
        self.group
    }

    fn len(&self) -> u128 {
        self.symbols.len() as u128
    }

    fn gap_count(&self) -> u128 {
        self.gap_count as u128
    }

    fn symbol_at(&self, i: u128) -> Sym {
        let i = i as usize;
        match self.symbol(i) {
            super::PatternSymbol::Letter(a) => Sym::Letter(a.value()),
            super::PatternSymbol::Gap(f) => Sym::Gap { perm: f.clone(), rank: self.rank(i) as u128 },
        }
    }
}

fn nth<S: PatternSource + ?Sized>(src: &S, index: u64) -> u32 {
    let r = src.len();
    let q = src.gap_count();
    let mut n = index as u128;
    let mut chain: Vec<Perm> = Vec::new();
    let value = loop {
        let block = (n - 1) / r;
        let i = (n - 1) % r + 1;
        match src.symbol_at(i) {
            Sym::Letter(a) => break a,
            Sym::Gap { perm, rank } => {
                chain.push(perm);
                n = q * block + rank;
            }
        }
    };
    chain.iter().rev().fold(value, |v, f| f.apply_raw(v))
}

fn prefix<S: PatternSource + ?Sized>(src: &S, len: u64) -> Vec<u32> {
    let r = src.len();
    let q = src.gap_count();
    let mut out: Vec<u32> = Vec::with_capacity(len as usize);
    for n in 1..=len as u128 {
        let block = (n - 1) / r;
        let i = (n - 1) % r + 1;
        let v = match src.symbol_at(i) {
            Sym::Letter(a) => a,
            Sym::Gap { perm, rank } => perm.apply_raw(out[(q * block + rank - 1) as usize]),
        };
        out.push(v);
    }
    out
}

/// T(P) as a base-1 sequence; the first symbol of P must be a letter.
pub fn toeplitz_word(p: &Pattern) -> Result<Seq> {
    toeplitz_word_from(Arc::new(p.clone()), format!("toeplitz:{p}"))
}

pub fn toeplitz_word_from<S: PatternSource + 'static>(src: Arc<S>, description: impl Into<String>) -> Result<Seq> {
    if src.len() == 0 {
        return Err(Error::EmptyPattern);
    }
    if matches!(src.symbol_at(1), Sym::Gap { .. }) {
        return Err(Error::NonProductive);
    }
    let group = src.group();
    let bulk = src.clone();
    Ok(Seq::new(group, IndexBase::One, description, move |n| nth(src.as_ref(), n)).with_prefix(move |len| prefix(bulk.as_ref(), len)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EquivVerdict {
    Equivalent { depth: u64 },
    Mismatch { index: u64, left: u32, right: u32 },
}

/// Compares T(P) and T(Q) on their first `depth` terms.
pub fn pattern_equiv(p: &Pattern, q: &Pattern, depth: u64) -> Result<EquivVerdict> {
    p.group().check(q.group())?;
    let (a, b) = (toeplitz_word(p)?.prefix(depth), toeplitz_word(q)?.prefix(depth));
    Ok(match a.iter().zip(&b).position(|(x, y)| x != y) {
        Some(i) => EquivVerdict::Mismatch { index: i as u64 + 1, left: a[i], right: b[i] },
        None => EquivVerdict::Equivalent { depth },
    })
}
