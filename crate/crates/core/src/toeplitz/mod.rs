//! Toeplitz patterns over letters and permutation gaps.
//!
//! A pattern is a finite word whose symbols are letters of ℤ_k or gaps
//! (bijections of ℤ_k). Its Toeplitz word T(P) is the unique fixed point of
//! filling the gaps of P^ω with the word itself.

mod morphism;
mod word;

use std::fmt;

use crate::error::{Error, Result};
use crate::group::{write_letter, xi, CyclicGroup, GroupElem, Perm};

pub use morphism::{morphism_to_pattern, pattern_to_morphism, UniformMorphism};
pub use word::{pattern_equiv, toeplitz_word, toeplitz_word_from, EquivVerdict, PatternSource, Sym};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PatternSymbol {
    Letter(GroupElem),
    Gap(Perm),
}

impl PatternSymbol {
    pub fn is_gap(&self) -> bool {
        matches!(self, PatternSymbol::Gap(_))
    }

    pub fn as_letter(&self) -> Option<u32> {
        match self {
            PatternSymbol::Letter(a) => Some(a.value()),
            PatternSymbol::Gap(_) => None,
        }
    }

    pub fn as_gap(&self) -> Option<&Perm> {
        match self {
            PatternSymbol::Gap(f) => Some(f),
            PatternSymbol::Letter(_) => None,
        }
    }

    fn group(&self) -> CyclicGroup {
        match self {
            PatternSymbol::Letter(a) => a.group(),
            PatternSymbol::Gap(f) => f.group(),
        }
    }
}

/// A nonempty word over letters and gaps of one group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pattern {
    group: CyclicGroup,
    symbols: Vec<PatternSymbol>,
    /// For each position, the 1-based rank among gaps, or 0 for letters.
    ranks: Vec<u32>,
    gap_count: usize,
}

impl Pattern {
    pub fn new(group: CyclicGroup, symbols: Vec<PatternSymbol>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::EmptyPattern);
        }
        for s in &symbols {
            group.check(s.group())?;
        }
        let mut ranks = Vec::with_capacity(symbols.len());
        let mut gap_count = 0usize;
        for s in &symbols {
            if s.is_gap() {
                gap_count += 1;
                ranks.push(gap_count as u32);
            } else {
                ranks.push(0);
            }
        }
        Ok(Self { group, symbols, ranks, gap_count })
    }

    /// The one-symbol pattern `?`.
    pub fn identity(group: CyclicGroup) -> Self {
        Self::new(group, vec![PatternSymbol::Gap(Perm::identity(group))]).expect("nonempty")
    }

    pub fn letter(a: GroupElem) -> Self {
        Self::new(a.group(), vec![PatternSymbol::Letter(a)]).expect("nonempty")
    }

    /// Builds a pattern from raw letter values and gap permutations.
    pub fn from_parts(group: CyclicGroup, parts: impl IntoIterator<Item = std::result::Result<u32, Perm>>) -> Result<Self> {
        let mut symbols = Vec::new();
        for p in parts {
            symbols.push(match p {
                Ok(v) => PatternSymbol::Letter(group.elem(v)?),
                Err(f) => PatternSymbol::Gap(f),
            });
        }
        Self::new(group, symbols)
    }

    pub fn group(&self) -> CyclicGroup {
        self.group
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn symbols(&self) -> &[PatternSymbol] {
        &self.symbols
    }

    /// The 1-based symbol at `i`.
    pub fn symbol(&self, i: usize) -> &PatternSymbol {
        &self.symbols[i - 1]
    }

    pub fn gap_count(&self) -> usize {
        self.gap_count
    }

    /// 1-based positions of the gaps, increasing.
    pub fn gap_positions(&self) -> Vec<usize> {
        self.ranks.iter().enumerate().filter(|(_, &r)| r > 0).map(|(i, _)| i + 1).collect()
    }

    pub(crate) fn rank(&self, i: usize) -> u32 {
        self.ranks[i - 1]
    }

    pub fn is_productive(&self) -> bool {
        !self.symbols[0].is_gap()
    }

    pub fn is_one_gap(&self) -> bool {
        self.gap_count == 1
    }

    /// The only gap of a one-gap pattern with its 1-based position.
    pub fn single_gap(&self) -> Result<(usize, &Perm)> {
        if self.gap_count != 1 {
            return Err(Error::Precondition(format!("expected exactly one gap, found {}", self.gap_count)));
        }
        let i = self.ranks.iter().position(|&r| r == 1).expect("one gap");
        Ok((i + 1, self.symbols[i].as_gap().expect("gap")))
    }

    /// Letter values in order, skipping gaps.
    pub fn letter_values(&self) -> Vec<u32> {
        self.symbols.iter().filter_map(PatternSymbol::as_letter).collect()
    }

    /// P^n as plain concatenation.
    pub fn repeat(&self, n: usize) -> Result<Pattern> {
        if n == 0 {
            return Err(Error::EmptyPattern);
        }
        Pattern::new(self.group, repeat_symbols(&self.symbols, n))
    }

    pub fn concat(&self, other: &Pattern) -> Result<Pattern> {
        self.group.check(other.group)?;
        let mut symbols = self.symbols.clone();
        symbols.extend(other.symbols.iter().cloned());
        Pattern::new(self.group, symbols)
    }

    /// Parses the text form: digits (or `{n}`) for letters, `?`, `r<d>` or
    /// `r{d}` for rotations and `[p:v0,…]` for general permutations.
    pub fn parse(group: CyclicGroup, text: &str) -> Result<Self> {
        Parser { text, pos: 0, group }.pattern()
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.symbols {
            match s {
                PatternSymbol::Letter(a) => write_letter(f, self.group.order(), a.value())?,
                PatternSymbol::Gap(p) => write!(f, "{p}")?,
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    group: CyclicGroup,
}

impl Parser<'_> {
    fn err(&self, offset: usize, message: impl Into<String>) -> Error {
        Error::Parse { offset, message: message.into() }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn number(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err(start, "expected a number"));
        }
        self.text[start..self.pos].parse::<u64>().map_err(|_| self.err(start, "number too large"))
    }

    fn expect(&mut self, ch: char) -> Result<()> {
        let at = self.pos;
        match self.bump() {
            Some(c) if c == ch => Ok(()),
            Some(c) => Err(self.err(at, format!("expected {ch:?}, found {c:?}"))),
            None => Err(self.err(at, format!("expected {ch:?}, found end of input"))),
        }
    }

    /// A single digit, or `{n}`.
    fn letter_value(&mut self) -> Result<(usize, u64)> {
        let at = self.pos;
        match self.peek() {
            Some('{') => {
                self.bump();
                let v = self.number()?;
                self.expect('}')?;
                Ok((at, v))
            }
            Some(c) if c.is_ascii_digit() => {
                self.bump();
                Ok((at, c as u64 - '0' as u64))
            }
            _ => Err(self.err(at, "expected a letter")),
        }
    }

    fn elem(&self, at: usize, v: u64) -> Result<GroupElem> {
        if v >= self.group.order() as u64 {
            return Err(self.err(at, format!("letter {v} is not in Z_{}", self.group.order())));
        }
        Ok(self.group.elem(v as u32).expect("checked"))
    }

    fn pattern(mut self) -> Result<Pattern> {
        let mut symbols = Vec::new();
        while let Some(c) = self.peek() {
            let at = self.pos;
            match c {
                c if c.is_whitespace() => {
                    self.bump();
                }
                '?' => {
                    self.bump();
                    symbols.push(PatternSymbol::Gap(Perm::identity(self.group)));
                }
                'r' => {
                    self.bump();
                    let (at, d) = self.letter_value()?;
                    symbols.push(PatternSymbol::Gap(Perm::rotation(self.elem(at, d)?)));
                }
                '[' => {
                    self.bump();
                    self.expect('p')?;
                    self.expect(':')?;
                    let mut table = Vec::new();
                    loop {
                        let v = self.number()?;
                        table.push(u32::try_from(v).map_err(|_| self.err(at, "permutation entry too large"))?);
                        if self.peek() == Some(',') {
                            self.bump();
                        } else {
                            break;
                        }
                    }
                    self.expect(']')?;
                    let perm = Perm::from_table(self.group, table)
                        .map_err(|_| self.err(at, format!("not a permutation of Z_{}", self.group.order())))?;
                    symbols.push(PatternSymbol::Gap(perm));
                }
                '{' | '0'..='9' => {
                    let (at, v) = self.letter_value()?;
                    symbols.push(PatternSymbol::Letter(self.elem(at, v)?));
                }
                other => return Err(self.err(at, format!("unexpected {other:?}"))),
            }
        }
        if symbols.is_empty() {
            return Err(self.err(self.pos, "empty pattern"));
        }
        Pattern::new(self.group, symbols)
    }
}

pub(crate) fn repeat_symbols(s: &[PatternSymbol], n: usize) -> Vec<PatternSymbol> {
    s.iter().cycle().take(s.len() * n).cloned().collect()
}

/// Fills the gaps of `u` with the symbols of `v`, in order.
pub fn fill(u: &[PatternSymbol], v: &[PatternSymbol]) -> Result<Vec<PatternSymbol>> {
    let gaps = u.iter().filter(|s| s.is_gap()).count();
    if gaps != v.len() {
        return Err(Error::ArityMismatch { gaps, symbols: v.len() });
    }
    let mut next = v.iter();
    u.iter()
        .map(|s| match s {
            PatternSymbol::Letter(_) => Ok(s.clone()),
            PatternSymbol::Gap(f) => match next.next().expect("arity checked") {
                PatternSymbol::Letter(b) => Ok(PatternSymbol::Letter(f.apply(*b)?)),
                PatternSymbol::Gap(g) => Ok(PatternSymbol::Gap(f.compose(g)?)),
            },
        })
        .collect()
}

/// P ∘ Q: fill the gaps of P^{d1} with Q^{d2}, where d1 = ξ(#gaps(P), |Q|) and d2 = ξ(|Q|, #gaps(P)).
pub fn compose(p: &Pattern, q: &Pattern) -> Result<Pattern> {
    p.group.check(q.group)?;
    if p.gap_count == 0 {
        return Ok(p.clone());
    }
    let gaps = p.gap_count as u64;
    let d1 = xi(gaps, q.len() as u64) as usize;
    let d2 = xi(q.len() as u64, gaps) as usize;
    Pattern::new(p.group, fill(&repeat_symbols(&p.symbols, d1), &repeat_symbols(&q.symbols, d2))?)
}

/// P^(0) = ?, P^(n+1) = P ∘ P^(n).
pub fn power(p: &Pattern, k: u64) -> Result<Pattern> {
    let mut acc = Pattern::identity(p.group);
    for _ in 0..k {
        acc = compose(p, &acc)?;
    }
    Ok(acc)
}
