//! Arithmetic subsequences of one-gap Toeplitz words.
//!
//! For a one-gap pattern P and a progression (a, b), [`subseq_pattern`]
//! builds a pattern whose Toeplitz word is T(P)_{a,b}. Intermediate
//! patterns are kept lazy; see [`LazyPattern`].

mod lazy;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

pub use lazy::{LazyPattern, DISPLAY_LIMIT};

use crate::error::{Error, Result};
use crate::group::Perm;
use crate::numtheory::{coprime_split, multiplicative_order};
use crate::toeplitz::{toeplitz_word, toeplitz_word_from, Pattern, PatternSymbol};

/// Largest pattern the eager wrappers will materialize.
pub const MATERIALIZE_LIMIT: u128 = 1 << 22;

/// Default depth of the self-check run by [`subseq_pattern`].
pub const VERIFY_DEPTH: u64 = 1000;

fn one_gap_at_end(p: &LazyPattern) -> Result<&Perm> {
    let (j, f) = p.single_gap()?;
    if j != p.len() {
        return Err(Error::Precondition(format!("gap at position {j}, expected it last")));
    }
    Ok(f)
}

/// The least m with b | r^m − 1, and c = (r^m − 1)/b.
pub fn order_and_cofactor(r: u128, b: u128) -> Result<(u32, u128)> {
    let m = multiplicative_order(
        u64::try_from(r).map_err(|_| Error::Overflow("pattern arithmetic"))?,
        u64::try_from(b).map_err(|_| Error::Overflow("pattern arithmetic"))?,
    )?;
    let m = u32::try_from(m).map_err(|_| Error::Overflow("pattern arithmetic"))?;
    let rm = r.checked_pow(m).ok_or(Error::Overflow("pattern arithmetic"))?;
    Ok((m, (rm - 1) / b))
}

/// Lazy form of [`arith_perm_coprime`]; also returns (m, c).
pub fn arith_perm_coprime_lazy(p: &LazyPattern, a: u128, b: u128) -> Result<(LazyPattern, u32, u128)> {
    one_gap_at_end(p)?;
    let r = p.len();
    if r < 2 {
        return Err(Error::Precondition("pattern length must be at least 2".into()));
    }
    if a == 0 || a > b {
        return Err(Error::Precondition(format!("need 1 ≤ a ≤ b, got a = {a}, b = {b}")));
    }
    if r.gcd(&b) != 1 {
        return Err(Error::NotCoprime { a: b as u64, m: r as u64 });
    }
    let (m, c) = order_and_cofactor(r, b)?;
    let pm = p.power(m)?;
    let out = pm.progression(a, b, a * c + 1)?;
    Ok((out, m, c))
}

/// P_{a,b} for gcd(b, |P|) = 1: the power P^(m) read along a, a+b, …, where
/// m is the least exponent with b | |P|^m − 1.
pub fn arith_perm_coprime(p: &Pattern, a: u64, b: u64) -> Result<Pattern> {
    arith_perm_coprime_lazy(&LazyPattern::literal(p), a as u128, b as u128)?.0.materialize(MATERIALIZE_LIMIT)
}

/// Moves an interior gap to the end: Q = u f v gives P = rev(u) rev(v) f with
/// Q = P_{|u|, |Q|−1}.
pub fn gap_to_end(q: &Pattern) -> Result<(Pattern, u64, u64)> {
    let (j, f) = q.single_gap()?;
    if j == 1 {
        return Err(Error::NonProductive);
    }
    let syms = q.symbols();
    let mut out: Vec<PatternSymbol> = syms[..j - 1].iter().rev().cloned().collect();
    out.extend(syms[j..].iter().rev().cloned());
    out.push(PatternSymbol::Gap(f.clone()));
    Ok((Pattern::new(q.group(), out)?, (j - 1) as u64, (q.len() - 1) as u64))
}

/// Lazy form of [`arith_perm_dividing`].
pub fn arith_perm_dividing_lazy(p: &LazyPattern, a: u128, b: u128) -> Result<LazyPattern> {
    let (j, _) = p.single_gap()?;
    if a == 0 || b == 0 || !p.len().is_multiple_of(b) {
        return Err(Error::Precondition(format!("need a ≥ 1 and b dividing {}, got a = {a}, b = {b}", p.len())));
    }
    if a >= j {
        return Err(Error::Precondition(format!("a = {a} is not before the gap at {j}; raise the pattern to a power first")));
    }
    p.dividing(a, b)
}

/// P_{a,b} for b | |P| and a before the gap: with c = |P|/b and the block
/// B = P(a) P(a+b) … P(a+(c−1)b), the result is (B∘u) ?…f…? (B∘v) when B
/// meets the gap and B otherwise.
pub fn arith_perm_dividing(p: &Pattern, a: u64, b: u64) -> Result<Pattern> {
    arith_perm_dividing_lazy(&LazyPattern::literal(p), a as u128, b as u128)?.materialize(MATERIALIZE_LIMIT)
}

fn raise_lazy(q: &LazyPattern, a: u128, divisor: u128) -> Result<(LazyPattern, u32)> {
    let (g, _) = q.single_gap()?;
    if g == 1 {
        return Err(Error::NonProductive);
    }
    let (r, mut len, mut pos) = (q.len(), q.len(), g);
    let mut n = 1u32;
    while pos <= a || len % divisor != 0 {
        len = len.checked_mul(r).ok_or(Error::Overflow("pattern arithmetic"))?;
        pos = (pos - 1).checked_mul(r).ok_or(Error::Overflow("pattern arithmetic"))? + g;
        n += 1;
    }
    Ok((q.power(n)?, n))
}

/// The least m ≥ 1 such that the gap of Q^(m) sits after position a.
pub fn raise_until_gap_past(q: &Pattern, a: u64) -> Result<(Pattern, u32)> {
    let (p, m) = raise_lazy(&LazyPattern::literal(q), a as u128, 1)?;
    Ok((p.materialize(MATERIALIZE_LIMIT)?, m))
}

/// P^g = g(u) f g(v) for P = u f v and g commuting with f.
pub fn conjugate_by_commuting_gap(p: &Pattern, g: &Perm) -> Result<Pattern> {
    let (j, f) = p.single_gap()?;
    if j == 1 {
        return Err(Error::NonProductive);
    }
    p.group().check(g.group())?;
    if !f.commutes_with(g) {
        return Err(Error::Precondition(format!("{g} does not commute with the gap {f}")));
    }
    let symbols = p
        .symbols()
        .iter()
        .map(|s| match s {
            PatternSymbol::Letter(a) => g.apply(*a).map(PatternSymbol::Letter),
            gap => Ok(gap.clone()),
        })
        .collect::<Result<Vec<_>>>()?;
    Pattern::new(p.group(), symbols)
}

/// One rewrite performed by [`subseq_pattern`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum RewriteStep {
    /// The gap was moved to the end; (a, b) became the progression on the new pattern.
    GapToEnd { pattern: String, offset: u64, stride: u64, a: u128, b: u128 },
    /// b = b1·b2 with b1 coprime to the length and a = a1 + (a2−1)·b1.
    Split { b1: u128, b2: u128, a1: u128, a2: u128 },
    /// Coprime permutation with b1 | r^m − 1 = c·b1.
    Coprime { a: u128, b: u128, m: u32, c: u128 },
    /// Raised to the n-th power before the dividing step.
    Raise { n: u32, len: u128, gap_index: u128 },
    /// Dividing construction; `block` is spelled out when short.
    Dividing { a: u128, b: u128, c: u128, gap_index: u128, block_gap: Option<u128>, block: Option<String> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubseqRewriteTrace {
    pub input: String,
    pub a: u64,
    pub b: u64,
    pub steps: Vec<RewriteStep>,
    pub result: String,
    pub result_len: u128,
    pub verified_depth: u64,
}

const BLOCK_PRINT_LIMIT: u128 = 256;

fn describe_block(p: &LazyPattern, a: u128, b: u128, c: u128) -> Option<String> {
    if c > BLOCK_PRINT_LIMIT {
        return None;
    }
    let syms = (0..c).map(|t| p.symbol((a + b * t - 1) % p.len() + 1)).collect::<Result<Vec<_>>>().ok()?;
    Pattern::new(p.group(), syms).ok().map(|b| b.to_string())
}

fn build(p: &Pattern, a: u64, b: u64) -> Result<(LazyPattern, Vec<RewriteStep>)> {
    if a == 0 || b == 0 {
        return Err(Error::Precondition("a and b must be positive".into()));
    }
    let (j, _) = p.single_gap()?;
    if j == 1 {
        return Err(Error::NonProductive);
    }
    let mut steps = Vec::new();
    let (mut a, mut b) = (a as u128, b as u128);
    let q = if j == p.len() {
        p.clone()
    } else {
        let (q, offset, stride) = gap_to_end(p)?;
        a = offset as u128 + stride as u128 * (a - 1);
        b *= stride as u128;
        steps.push(RewriteStep::GapToEnd { pattern: q.to_string(), offset, stride, a, b });
        q
    };
    let r = q.len() as u128;
    let (b1, b2) = coprime_split(u64::try_from(b).map_err(|_| Error::Overflow("pattern arithmetic"))?, r as u64);
    let (b1, b2) = (b1 as u128, b2 as u128);
    let a2 = a.div_ceil(b1);
    let a1 = a - (a2 - 1) * b1;
    steps.push(RewriteStep::Split { b1, b2, a1, a2 });
    let (r1, m, c) = arith_perm_coprime_lazy(&LazyPattern::literal(&q), a1, b1)?;
    steps.push(RewriteStep::Coprime { a: a1, b: b1, m, c });
    if b2 == 1 && a2 == 1 {
        return Ok((r1, steps));
    }
    let (raised, n) = raise_lazy(&r1, a2, b2)?;
    let (gap_index, _) = raised.single_gap()?;
    steps.push(RewriteStep::Raise { n, len: raised.len(), gap_index });
    let out = arith_perm_dividing_lazy(&raised, a2, b2)?;
    let c = raised.len() / b2;
    let block_gap = ((gap_index - a2) % b2 == 0).then(|| (gap_index - a2) / b2 % c + 1);
    steps.push(RewriteStep::Dividing { a: a2, b: b2, c, gap_index, block_gap, block: describe_block(&raised, a2, b2, c) });
    Ok((out, steps))
}

/// Compares T(result) with T(P)_{a,b} on `depth` terms.
fn verify(p: &Pattern, a: u64, b: u64, result: &LazyPattern, depth: u64) -> Result<()> {
    if depth == 0 {
        return Ok(());
    }
    let reach = a
        .checked_add(b.checked_mul(depth - 1).ok_or(Error::Overflow("pattern arithmetic"))?)
        .ok_or(Error::Overflow("pattern arithmetic"))?;
    let t = toeplitz_word(p)?.prefix(reach);
    let got = toeplitz_word_from(std::sync::Arc::new(result.clone()), "subseq result")?.prefix(depth);
    for (n, &v) in got.iter().enumerate() {
        let want = t[(a + b * n as u64 - 1) as usize];
        if v != want {
            return Err(Error::Internal(format!("subsequence pattern disagrees at term {}: expected {want}, got {v}", n + 1)));
        }
    }
    Ok(())
}

/// A pattern generating T(P)_{a,b} (1-based, reading a, a+b, …) together
/// with the rewrites that produced it. The result is checked against the
/// subsequence itself on [`VERIFY_DEPTH`] terms.
pub fn subseq_pattern(p: &Pattern, a: u64, b: u64) -> Result<(LazyPattern, SubseqRewriteTrace)> {
    subseq_pattern_with(p, a, b, VERIFY_DEPTH)
}

pub fn subseq_pattern_with(p: &Pattern, a: u64, b: u64, verify_depth: u64) -> Result<(LazyPattern, SubseqRewriteTrace)> {
    let (out, steps) = build(p, a, b)?;
    verify(p, a, b, &out, verify_depth)?;
    let trace = SubseqRewriteTrace {
        input: p.to_string(),
        a,
        b,
        steps,
        result: out.to_string(),
        result_len: out.len(),
        verified_depth: verify_depth,
    };
    Ok((out, trace))
}

impl SubseqRewriteTrace {
    /// Re-applies the recorded steps to `p`, using the recorded parameters.
    pub fn replay(&self, p: &Pattern) -> Result<LazyPattern> {
        let mismatch = |what: &str| Error::Internal(format!("trace replay diverged at {what}"));
        if p.to_string() != self.input {
            return Err(mismatch("input"));
        }
        let mut cur = LazyPattern::literal(p);
        for step in &self.steps {
            cur = match step {
                RewriteStep::GapToEnd { pattern, .. } => {
                    let (q, _, _) = gap_to_end(p)?;
                    if &q.to_string() != pattern {
                        return Err(mismatch("gap_to_end"));
                    }
                    LazyPattern::literal(&q)
                }
                RewriteStep::Split { .. } => cur,
                RewriteStep::Coprime { a, b, m, c } => {
                    let (out, m2, c2) = arith_perm_coprime_lazy(&cur, *a, *b)?;
                    if (m2, c2) != (*m, *c) {
                        return Err(mismatch("coprime"));
                    }
                    out
                }
                RewriteStep::Raise { n, len, gap_index } => {
                    let out = cur.power(*n)?;
                    if out.len() != *len || out.single_gap()?.0 != *gap_index {
                        return Err(mismatch("raise"));
                    }
                    out
                }
                RewriteStep::Dividing { a, b, .. } => arith_perm_dividing_lazy(&cur, *a, *b)?,
            };
        }
        if cur.to_string() != self.result || cur.len() != self.result_len {
            return Err(mismatch("result"));
        }
        Ok(cur)
    }
}
