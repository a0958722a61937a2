//! Evaluable infinite sequences, arithmetic subsequences and prefix-based
//! similarity checks.

use std::fmt;
use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{map_ordered, map_range, Execution};
use crate::group::{write_letter, CyclicGroup, GroupElem};

/// Index of the first term: 0 for Keane words, 1 for everything else.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IndexBase {
    Zero,
    One,
}

impl IndexBase {
    pub fn first(self) -> u64 {
        match self {
            IndexBase::Zero => 0,
            IndexBase::One => 1,
        }
    }
}

type Eval = Arc<dyn Fn(u64) -> u32 + Send + Sync>;
type PrefixEval = Arc<dyn Fn(u64) -> Vec<u32> + Send + Sync>;

/// An infinite sequence over ℤ_k, given by a pure evaluator.
#[derive(Clone)]
pub struct Seq {
    group: CyclicGroup,
    base: IndexBase,
    description: String,
    eval: Eval,
    prefix_eval: Option<PrefixEval>,
}

impl fmt::Debug for Seq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Seq").field("group", &self.group).field("base", &self.base).field("description", &self.description).finish()
    }
}

impl Seq {
    /// Wraps an evaluator; values it returns are reduced mod k.
    pub fn new<F>(group: CyclicGroup, base: IndexBase, description: impl Into<String>, eval: F) -> Self
    where
        F: Fn(u64) -> u32 + Send + Sync + 'static,
    {
        Self { group, base, description: description.into(), eval: Arc::new(eval), prefix_eval: None }
    }

    /// Attaches a faster bulk evaluator: `prefix(len)` must return the first `len` terms.
    pub fn with_prefix<F>(mut self, prefix: F) -> Self
    where
        F: Fn(u64) -> Vec<u32> + Send + Sync + 'static,
    {
        self.prefix_eval = Some(Arc::new(prefix));
        self
    }

    pub fn constant(group: CyclicGroup, base: IndexBase, value: GroupElem) -> Result<Self> {
        group.check(value.group())?;
        let v = value.value();
        Ok(Self::new(group, base, format!("const {v}"), move |_| v))
    }

    pub fn group(&self) -> CyclicGroup {
        self.group
    }

    pub fn base(&self) -> IndexBase {
        self.base
    }

    pub fn first_index(&self) -> u64 {
        self.base.first()
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn with_description(mut self, description: impl Into<String>) -> Self {
        self.description = description.into();
        self
    }

    /// σ(n) as a raw value; `n` must be at least the first index.
    #[inline]
    pub fn value_at(&self, n: u64) -> u32 {
        debug_assert!(n >= self.first_index());
        (self.eval)(n) % self.group.order()
    }

    pub fn nth(&self, n: u64) -> Result<GroupElem> {
        if n < self.first_index() {
            return Err(Error::Precondition(format!("index {n} is below the first index {}", self.first_index())));
        }
        self.group.elem(self.value_at(n))
    }

    /// The first `len` terms.
    pub fn prefix(&self, len: u64) -> Vec<u32> {
        self.prefix_with(len, Execution::default())
    }

    pub fn prefix_with(&self, len: u64, exec: Execution) -> Vec<u32> {
        if let Some(p) = &self.prefix_eval {
            let k = self.group.order();
            return p(len).into_iter().map(|v| v % k).collect();
        }
        let first = self.first_index();
        map_range(first..first + len, exec, |n| self.value_at(n))
    }

    /// The arithmetic subsequence σ_{a,b}: base 0 reads σ(a + bn), base 1 reads σ(a + b(n−1)).
    pub fn subseq(&self, a: u64, b: u64) -> Result<Seq> {
        if b == 0 {
            return Err(Error::Precondition("step b must be positive".into()));
        }
        if a < self.first_index() {
            return Err(Error::Precondition(format!("start {a} is below the first index {}", self.first_index())));
        }
        let inner = self.clone();
        let first = self.first_index();
        Ok(Seq::new(self.group, self.base, format!("({})|subseq({a},{b})", self.description), move |n| inner.value_at(a + b * (n - first))))
    }

    /// σ + τ pointwise.
    pub fn add(&self, other: &Seq) -> Result<Seq> {
        self.group.check(other.group)?;
        if self.base != other.base {
            return Err(Error::Precondition("index bases differ".into()));
        }
        let (l, r) = (self.clone(), other.clone());
        let g = self.group;
        Ok(Seq::new(g, self.base, format!("({})+({})", self.description, other.description), move |n| {
            g.add_raw(l.value_at(n), r.value_at(n))
        }))
    }

    /// σ + c.
    pub fn shift_const(&self, c: GroupElem) -> Result<Seq> {
        self.group.check(c.group())?;
        let inner = self.clone();
        let g = self.group;
        let c = c.value();
        Ok(Seq::new(g, self.base, format!("({})|plus({c})", self.description), move |n| g.add_raw(inner.value_at(n), c)))
    }

    /// σ ⊙ c: each value a becomes a·c in the group of `c`.
    pub fn scale(&self, c: GroupElem) -> Seq {
        let inner = self.clone();
        let target = c.group();
        let cv = c.value();
        Seq::new(target, self.base, format!("({})|scale({cv})", self.description), move |n| target.mul_raw(inner.value_at(n) as u64, cv))
    }

    /// The image under the quotient map ℤ_k → ℤ_m; m must divide k.
    pub fn reduce(&self, m: u32) -> Result<Seq> {
        let target = CyclicGroup::new(m)?;
        if !self.group.order().is_multiple_of(m) {
            return Err(Error::Precondition(format!("{m} does not divide the alphabet size {}", self.group.order())));
        }
        let inner = self.clone();
        Ok(Seq::new(target, self.base, format!("({})|mod({m})", self.description), move |n| inner.value_at(n) % m))
    }

    /// First difference as a base-1 sequence: Δ(n) = σ(f + n) − σ(f + n − 1) with f the first index.
    pub fn diff(&self) -> Seq {
        let inner = self.clone();
        let g = self.group;
        let first = self.first_index();
        Seq::new(g, IndexBase::One, format!("({})|diff", self.description), move |n| {
            g.sub_raw(inner.value_at(first + n), inner.value_at(first + n - 1))
        })
    }

    /// Materializes the first `len` terms into a lookup-backed sequence that
    /// falls back to the evaluator beyond the cached range.
    pub fn cached(&self, len: u64) -> Seq {
        let table: Arc<[u32]> = self.prefix(len).into();
        let inner = self.clone();
        let first = self.first_index();
        let t2 = table.clone();
        Seq::new(self.group, self.base, self.description.clone(), move |n| {
            let i = (n - first) as usize;
            if i < table.len() {
                table[i]
            } else {
                inner.value_at(n)
            }
        })
        .with_prefix(move |len| {
            assert!(len as usize <= t2.len(), "cached prefix too short");
            t2[..len as usize].to_vec()
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SimilarityOutcome {
    /// σ(n) = τ(n) + c held at every checked index.
    Similar(u32),
    /// First failing index, with τ(n) + c and σ(n).
    Mismatch { index: u64, expected: u32, found: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimilarityVerdict {
    pub outcome: SimilarityOutcome,
    pub depth: u64,
}

impl SimilarityVerdict {
    pub fn is_similar(&self) -> bool {
        matches!(self.outcome, SimilarityOutcome::Similar(_))
    }

    pub fn constant(&self) -> Option<u32> {
        match self.outcome {
            SimilarityOutcome::Similar(c) => Some(c),
            SimilarityOutcome::Mismatch { .. } => None,
        }
    }
}

fn compare<L, R>(group: CyclicGroup, first: u64, depth: u64, left: L, right: R) -> SimilarityVerdict
where
    L: Fn(u64) -> u32,
    R: Fn(u64) -> u32,
{
    let c = group.sub_raw(left(first), right(first));
    for n in first..first + depth {
        let expected = group.add_raw(right(n), c);
        let found = left(n);
        if expected != found {
            return SimilarityVerdict { outcome: SimilarityOutcome::Mismatch { index: n, expected, found }, depth };
        }
    }
    SimilarityVerdict { outcome: SimilarityOutcome::Similar(c), depth }
}

/// Checks σ = τ + c on the first `depth` indices, with c fixed by the first term.
pub fn similar_up_to(sigma: &Seq, tau: &Seq, depth: u64) -> Result<SimilarityVerdict> {
    sigma.group.check(tau.group)?;
    if sigma.base != tau.base {
        return Err(Error::Precondition("index bases differ".into()));
    }
    Ok(compare(sigma.group, sigma.first_index(), depth, |n| sigma.value_at(n), |n| tau.value_at(n)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanCell {
    pub a: u64,
    pub b: u64,
    pub verdict: SimilarityVerdict,
}

/// similar_up_to(σ_{a,b}, σ, depth) for every a in [first index, a_max] and b in [1, b_max],
/// in row-major order by a then b.
pub fn as_scan(sigma: &Seq, a_max: u64, b_max: u64, depth: u64) -> Vec<ScanCell> {
    as_scan_with(sigma, a_max, b_max, depth, Execution::default())
}

pub fn as_scan_with(sigma: &Seq, a_max: u64, b_max: u64, depth: u64, exec: Execution) -> Vec<ScanCell> {
    let first = sigma.first_index();
    if a_max < first || b_max == 0 || depth == 0 {
        return Vec::new();
    }
    let reach = a_max + b_max * (depth - 1) - first + 1;
    let table = sigma.prefix_with(reach, exec);
    let cells: Vec<(u64, u64)> = (first..=a_max).flat_map(|a| (1..=b_max).map(move |b| (a, b))).collect();
    let g = sigma.group;
    let at = |n: u64| table[(n - first) as usize];
    map_ordered(&cells, exec, |&(a, b)| ScanCell { a, b, verdict: compare(g, first, depth, |n| at(a + b * (n - first)), at) })
}

/// Minimal (preperiod, period), smallest period first, consistent with the
/// first `depth` terms and satisfying t ≤ depth/2 and n0 + 2t ≤ depth.
/// The preperiod is also bounded by n0 ≤ depth/4, otherwise two equal final
/// terms would already count as a period. The preperiod counts from the
/// first index.
pub fn detect_period(sigma: &Seq, depth: u64) -> Option<(u64, u64)> {
    detect_period_in(&sigma.prefix(depth))
}

pub fn detect_period_in(x: &[u32]) -> Option<(u64, u64)> {
    let n = x.len();
    for t in 1..=n / 2 {
        let last_bad = (0..n - t).rev().find(|&i| x[i] != x[i + t]);
        let n0 = last_bad.map_or(0, |i| i + 1);
        if n0 + 2 * t <= n && 4 * n0 <= n {
            return Some((n0 as u64, t as u64));
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PrefixFormat {
    Text,
    Csv,
    Jsonl,
}

/// Renders terms starting at index `first` in the requested format.
pub fn format_prefix(group: CyclicGroup, first: u64, values: &[u32], format: PrefixFormat) -> String {
    let mut out = String::new();
    match format {
        PrefixFormat::Text => {
            for &v in values {
                write_letter(&mut out, group.order(), v).expect("write to string");
            }
            out.push('\n');
        }
        PrefixFormat::Csv => {
            out.push_str("n,value\n");
            for (i, v) in values.iter().enumerate() {
                writeln!(out, "{},{v}", first + i as u64).expect("write to string");
            }
        }
        PrefixFormat::Jsonl => {
            for (i, v) in values.iter().enumerate() {
                writeln!(out, "{{\"index\":{},\"value\":{v}}}", first + i as u64).expect("write to string");
            }
        }
    }
    out
}
