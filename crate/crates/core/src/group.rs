//! Finite cyclic groups ℤ_k, their elements, permutations and words.
//!
//! Every element carries the order of its group, so mixing elements of
//! different groups is reported as [`Error::GroupMismatch`] instead of
//! silently reducing modulo the wrong order.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The additive group ℤ_k = {0, …, k−1}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CyclicGroup {
    order: u32,
}

impl CyclicGroup {
    pub fn new(order: u32) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidOrder(0));
        }
        Ok(Self { order })
    }

    pub fn order(self) -> u32 {
        self.order
    }

    pub fn zero(self) -> GroupElem {
        GroupElem { value: 0, order: self.order }
    }

    /// The element `value`, which must already lie in `[0, k)`.
    pub fn elem(self, value: u32) -> Result<GroupElem> {
        if value >= self.order {
            return Err(Error::OutOfRange { value: value as u64, order: self.order });
        }
        Ok(GroupElem { value, order: self.order })
    }

    /// The residue class of an arbitrary integer.
    pub fn reduce(self, value: i64) -> GroupElem {
        let value = value.rem_euclid(self.order as i64) as u32;
        GroupElem { value, order: self.order }
    }

    pub fn elements(self) -> impl Iterator<Item = GroupElem> {
        let order = self.order;
        (0..order).map(move |value| GroupElem { value, order })
    }

    pub(crate) fn check(self, other: CyclicGroup) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::GroupMismatch { left: self.order, right: other.order })
        }
    }

    #[inline]
    pub(crate) fn add_raw(self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.order as u64) as u32
    }

    #[inline]
    pub(crate) fn sub_raw(self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.order as u64 - b as u64) % self.order as u64) as u32
    }

    #[inline]
    pub(crate) fn mul_raw(self, j: u64, c: u32) -> u32 {
        ((j % self.order as u64) * c as u64 % self.order as u64) as u32
    }
}

impl fmt::Display for CyclicGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z_{}", self.order)
    }
}

/// An element of ℤ_k.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElem {
    value: u32,
    order: u32,
}

// add/sub check that both operands share a group, so they return Result
// rather than implementing the operator traits.
#[allow(clippy::should_implement_trait)]
impl GroupElem {
    pub fn value(self) -> u32 {
        self.value
    }

    pub fn group(self) -> CyclicGroup {
        CyclicGroup { order: self.order }
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn add(self, other: GroupElem) -> Result<GroupElem> {
        self.group().check(other.group())?;
        Ok(GroupElem { value: self.group().add_raw(self.value, other.value), order: self.order })
    }

    pub fn sub(self, other: GroupElem) -> Result<GroupElem> {
        self.group().check(other.group())?;
        Ok(GroupElem { value: self.group().sub_raw(self.value, other.value), order: self.order })
    }

    pub fn neg(self) -> GroupElem {
        GroupElem { value: self.group().sub_raw(0, self.value), order: self.order }
    }
}

impl fmt::Display for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// ξ(n, m) = m / gcd(n, m), the least multiplier with n·ξ(n, m) = lcm(n, m).
pub fn xi(n: u64, m: u64) -> u64 {
    assert!(n >= 1 && m >= 1, "xi is defined on positive integers");
    m / n.gcd(&m)
}

/// j·c, the j-fold sum c + c + … + c in the group of `c`.
pub fn scalar_mul(j: u64, c: GroupElem) -> GroupElem {
    GroupElem { value: c.group().mul_raw(j, c.value), order: c.order }
}

/// Whether a ↦ a·c is a homomorphism ℤ_n → ℤ_m, i.e. whether ξ(n, m) divides c.
pub fn ghom_is_homomorphism(n: u64, c: GroupElem) -> bool {
    (c.value as u64).is_multiple_of(xi(n, c.order as u64))
}

/// A bijection on ℤ_k, stored as its full lookup table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    table: Arc<[u32]>,
}

impl Perm {
    pub fn from_table(group: CyclicGroup, table: Vec<u32>) -> Result<Self> {
        let k = group.order as usize;
        if table.len() != k {
            return Err(Error::NotAPermutation { order: group.order });
        }
        let mut seen = vec![false; k];
        for &v in &table {
            if v as usize >= k || seen[v as usize] {
                return Err(Error::NotAPermutation { order: group.order });
            }
            seen[v as usize] = true;
        }
        Ok(Self { table: table.into() })
    }

    pub fn identity(group: CyclicGroup) -> Self {
        Self { table: (0..group.order).collect::<Vec<_>>().into() }
    }

    /// The rotation r_d : a ↦ a + d.
    pub fn rotation(d: GroupElem) -> Self {
        let g = d.group();
        Self { table: (0..g.order).map(|a| g.add_raw(a, d.value)).collect::<Vec<_>>().into() }
    }

    pub fn group(&self) -> CyclicGroup {
        CyclicGroup { order: self.table.len() as u32 }
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    #[inline]
    pub fn apply_raw(&self, a: u32) -> u32 {
        self.table[a as usize]
    }

    pub fn apply(&self, a: GroupElem) -> Result<GroupElem> {
        self.group().check(a.group())?;
        Ok(GroupElem { value: self.apply_raw(a.value), order: a.order })
    }

    /// self ∘ other: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        self.group().check(other.group())?;
        Ok(Perm { table: other.table.iter().map(|&a| self.table[a as usize]).collect::<Vec<_>>().into() })
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.table.len()];
        for (a, &b) in self.table.iter().enumerate() {
            inv[b as usize] = a as u32;
        }
        Perm { table: inv.into() }
    }

    /// n-fold self-composition; `pow(0)` is the identity.
    pub fn pow(&self, n: u64) -> Perm {
        let mut result = Perm::identity(self.group());
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.compose(&base).expect("same group");
            }
            base = base.compose(&base).expect("same group");
            n >>= 1;
        }
        result
    }

    pub fn is_identity(&self) -> bool {
        self.table.iter().enumerate().all(|(a, &b)| a as u32 == b)
    }

    /// `Some(d)` when this is the rotation r_d.
    pub fn as_rotation(&self) -> Option<GroupElem> {
        let g = self.group();
        let d = self.table[0];
        (0..g.order).all(|a| self.table[a as usize] == g.add_raw(a, d)).then_some(GroupElem { value: d, order: g.order })
    }

    /// `Some(d)` when this acts as r_d on every element of `support`.
    /// An empty support yields r_0.
    pub fn rotation_on(&self, support: &[u32]) -> Option<GroupElem> {
        let g = self.group();
        let d = support.first().map_or(0, |&a| g.sub_raw(self.table[a as usize], a));
        support.iter().all(|&a| self.table[a as usize] == g.add_raw(a, d)).then_some(GroupElem { value: d, order: g.order })
    }

    pub fn commutes_with(&self, other: &Perm) -> bool {
        self.group() == other.group()
            && self.table.iter().enumerate().all(|(a, &b)| other.table[b as usize] == self.table[other.table[a] as usize])
    }
}

/// Writes a letter value: a single digit for alphabets of size ≤ 10, braces otherwise.
pub(crate) fn write_letter(f: &mut impl fmt::Write, order: u32, value: u32) -> fmt::Result {
    if order <= 10 {
        write!(f, "{value}")
    } else {
        write!(f, "{{{value}}}")
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("?");
        }
        if let Some(d) = self.as_rotation() {
            f.write_str("r")?;
            return write_letter(f, self.group().order, d.value);
        }
        f.write_str("[p:")?;
        for (i, v) in self.table.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

/// A finite word over ℤ_k.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    group: CyclicGroup,
    letters: Vec<u32>,
}

impl Word {
    pub fn new(group: CyclicGroup, letters: Vec<u32>) -> Result<Self> {
        if let Some(&v) = letters.iter().find(|&&v| v >= group.order) {
            return Err(Error::OutOfRange { value: v as u64, order: group.order });
        }
        Ok(Self { group, letters })
    }

    pub fn from_elems(group: CyclicGroup, elems: &[GroupElem]) -> Result<Self> {
        for e in elems {
            group.check(e.group())?;
        }
        Ok(Self { group, letters: elems.iter().map(|e| e.value).collect() })
    }

    /// Parses a word of letters, e.g. `0110`; letters ≥ 10 are written `{12}`.
    pub fn parse(group: CyclicGroup, text: &str) -> Result<Self> {
        let mut letters = Vec::new();
        let mut chars = text.char_indices().peekable();
        while let Some((pos, ch)) = chars.next() {
            let value = match ch {
                '0'..='9' => ch as u32 - '0' as u32,
                '{' => {
                    let mut v: u64 = 0;
                    let mut closed = false;
                    for (_, c) in chars.by_ref() {
                        if c == '}' {
                            closed = true;
                            break;
                        }
                        let digit = c.to_digit(10).ok_or_else(|| Error::Parse { offset: pos, message: "expected a digit".into() })?;
                        v = v.saturating_mul(10).saturating_add(digit as u64);
                    }
                    if !closed {
                        return Err(Error::Parse { offset: pos, message: "unclosed brace".into() });
                    }
                    v.min(u32::MAX as u64) as u32
                }
                c if c.is_whitespace() => continue,
                _ => return Err(Error::Parse { offset: pos, message: format!("unexpected {ch:?}") }),
            };
            if value >= group.order {
                return Err(Error::OutOfRange { value: value as u64, order: group.order });
            }
            letters.push(value);
        }
        Ok(Self { group, letters })
    }

    pub fn group(&self) -> CyclicGroup {
        self.group
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn get(&self, i: usize) -> Option<GroupElem> {
        self.letters.get(i).map(|&value| GroupElem { value, order: self.group.order })
    }

    /// The word w ⊙ c over the group of `c`: each letter `a` becomes a·c.
    pub fn scale(&self, c: GroupElem) -> Word {
        let target = c.group();
        Word { group: target, letters: self.letters.iter().map(|&a| target.mul_raw(a as u64, c.value)).collect() }
    }

    /// w + c: every letter shifted by `c`.
    pub fn shift(&self, c: GroupElem) -> Result<Word> {
        self.group.check(c.group())?;
        Ok(Word { group: self.group, letters: self.letters.iter().map(|&a| self.group.add_raw(a, c.value)).collect() })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &v in &self.letters {
            write_letter(f, self.group.order, v)?;
        }
        Ok(())
    }
}
