//! Patterns described by how they were built rather than by their symbols.
//!
//! Arithmetic permutations live inside powers P^(m) whose length r^m can be
//! far beyond what fits in memory, so symbols are computed on demand.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{CyclicGroup, Perm};
use crate::toeplitz::{Pattern, PatternSource, PatternSymbol, Sym};

/// Longest pattern `Display` will spell out symbol by symbol.
pub const DISPLAY_LIMIT: u128 = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Node {
    Literal(Pattern),
    /// P^(exp) of a one-gap base.
    Power {
        base: LazyPattern,
        exp: u32,
    },
    /// base(a), base(a+b), … read cyclically, for b coprime to |base|.
    Progression {
        base: LazyPattern,
        a: u128,
        b: u128,
    },
    /// The b | r construction; `jp` is the position of the gap inside the block, if any.
    Dividing {
        base: LazyPattern,
        a: u128,
        b: u128,
        c: u128,
        j: u128,
        jp: Option<u128>,
        f: Perm,
        id: Perm,
    },
}

/// A pattern whose symbols are computed on demand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LazyPattern {
    group: CyclicGroup,
    len: u128,
    gaps: u128,
    /// Position and permutation of the only gap, for one-gap patterns.
    gap: Option<(u128, Perm)>,
    node: Arc<Node>,
}

impl LazyPattern {
    pub fn literal(p: &Pattern) -> Self {
        let gap = p.single_gap().ok().map(|(i, f)| (i as u128, f.clone()));
        Self { group: p.group(), len: p.len() as u128, gaps: p.gap_count() as u128, gap, node: Arc::new(Node::Literal(p.clone())) }
    }

    pub fn group(&self) -> CyclicGroup {
        self.group
    }

    pub fn len(&self) -> u128 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn gap_count(&self) -> u128 {
        self.gaps
    }

    /// 1-based position and permutation of the single gap.
    pub fn single_gap(&self) -> Result<(u128, &Perm)> {
        match &self.gap {
            Some((i, f)) => Ok((*i, f)),
            None => Err(Error::Precondition(format!("expected exactly one gap, found {}", self.gaps))),
        }
    }

    pub(crate) fn power(&self, exp: u32) -> Result<Self> {
        let (g, f) = self.single_gap()?;
        if exp == 0 {
            return Ok(Self::literal(&Pattern::identity(self.group)));
        }
        if exp == 1 {
            return Ok(self.clone());
        }
        let len = self.len.checked_pow(exp).ok_or(Error::Overflow("pattern arithmetic"))?;
        let mut pos = g;
        for _ in 1..exp {
            pos = (pos - 1) * self.len + g;
        }
        Ok(Self {
            group: self.group,
            len,
            gaps: 1,
            gap: Some((pos, f.pow(exp as u64))),
            node: Arc::new(Node::Power { base: self.clone(), exp }),
        })
    }

    /// Reads the pattern at a, a+b, …; the caller supplies the gap position.
    pub(crate) fn progression(&self, a: u128, b: u128, gap_at: u128) -> Result<Self> {
        let (_, f) = self.single_gap()?;
        let f = f.clone();
        Ok(Self {
            group: self.group,
            len: self.len,
            gaps: 1,
            gap: Some((gap_at, f)),
            node: Arc::new(Node::Progression { base: self.clone(), a, b }),
        })
    }

    pub(crate) fn dividing(&self, a: u128, b: u128) -> Result<Self> {
        let (j, f) = self.single_gap()?;
        let r = self.len;
        let c = r / b;
        // j ≡ a + (j'−1)b (mod r) has a solution with 1 ≤ j' ≤ c exactly when b | j − a.
        let jp = if (j - a).is_multiple_of(b) { Some((j - a) / b % c + 1) } else { None };
        let (len, gaps) = match jp {
            Some(_) => (r.checked_mul(c).ok_or(Error::Overflow("pattern arithmetic"))?, c),
            None => (c, 0),
        };
        Ok(Self {
            group: self.group,
            len,
            gaps,
            gap: None,
            node: Arc::new(Node::Dividing { base: self.clone(), a, b, c, j, jp, f: f.clone(), id: Perm::identity(self.group) }),
        })
    }

    /// The letter at a position known to hold one.
    fn letter(&self, i: u128) -> u32 {
        match self.sym(i) {
            Sym::Letter(v) => v,
            Sym::Gap { .. } => unreachable!("position {i} holds a gap"),
        }
    }

    /// The symbol at 1-based `i`, read cyclically.
    pub fn sym(&self, i: u128) -> Sym {
        let i = (i - 1) % self.len + 1;
        match self.node.as_ref() {
            Node::Literal(p) => p.symbol_at(i),
            Node::Power { base, exp } => {
                let (_, f) = base.single_gap().expect("one gap");
                let mut i = i;
                for depth in 0..*exp {
                    let pos = (i - 1) % base.len + 1;
                    if let Sym::Letter(v) = base.sym(pos) {
                        return Sym::Letter((0..depth).fold(v, |v, _| f.apply_raw(v)));
                    }
                    i = (i - 1) / base.len + 1;
                }
                let (_, f) = self.single_gap().expect("one gap");
                Sym::Gap { perm: f.clone(), rank: 1 }
            }
            Node::Progression { base, a, b } => base.sym(a + b * (i - 1)),
            Node::Dividing { base, a, b, c, j, jp, f, id } => {
                let block = |pos: u128| base.sym(a + b * (pos - 1));
                let Some(jp) = *jp else {
                    return block(i);
                };
                let u_end = c * (j - 1);
                if i <= u_end || i > u_end + c {
                    let (k, pos) =
                        if i <= u_end { ((i - 1) / c, (i - 1) % c + 1) } else { ((i - u_end - c - 1) / c, (i - u_end - c - 1) % c + 1) };
                    if pos == jp {
                        let src = if i <= u_end { k + 1 } else { j + 1 + k };
                        Sym::Letter(f.apply_raw(base.letter(src)))
                    } else {
                        block(pos)
                    }
                } else {
                    let pos = i - u_end;
                    Sym::Gap { perm: if pos == jp { f.clone() } else { id.clone() }, rank: pos }
                }
            }
        }
    }

    pub fn symbol(&self, i: u128) -> Result<PatternSymbol> {
        if i == 0 || i > self.len {
            return Err(Error::Precondition(format!("position {i} outside 1..={}", self.len)));
        }
        Ok(match self.sym(i) {
            Sym::Letter(v) => PatternSymbol::Letter(self.group.elem(v)?),
            Sym::Gap { perm, .. } => PatternSymbol::Gap(perm),
        })
    }

    /// Spells the pattern out, refusing anything longer than `limit`.
    pub fn materialize(&self, limit: u128) -> Result<Pattern> {
        if self.len > limit {
            return Err(Error::TooLarge { len: self.len, limit });
        }
        if let Node::Literal(p) = self.node.as_ref() {
            return Ok(p.clone());
        }
        let symbols = (1..=self.len).map(|i| self.symbol(i)).collect::<Result<Vec<_>>>()?;
        Pattern::new(self.group, symbols)
    }
}

impl PatternSource for LazyPattern {
    fn group(&self) -> CyclicGroup {
        self.group
    }

    fn len(&self) -> u128 {
        self.len
    }

    fn gap_count(&self) -> u128 {
        self.gaps
    }

    fn symbol_at(&self, i: u128) -> Sym {
        self.sym(i)
    }
}

impl fmt::Display for LazyPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len <= DISPLAY_LIMIT {
            return match self.materialize(DISPLAY_LIMIT) {
                Ok(p) => write!(f, "{p}"),
                Err(_) => Err(fmt::Error),
            };
        }
        match self.node.as_ref() {
            Node::Literal(p) => write!(f, "{p}"),
            Node::Power { base, exp } => write!(f, "power({base},{exp})"),
            Node::Progression { base, a, b } => write!(f, "progression({base},{a},{b})"),
            Node::Dividing { base, a, b, .. } => write!(f, "dividing({base},{a},{b})"),
        }
    }
}
