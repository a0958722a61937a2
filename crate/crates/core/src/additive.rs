//! Completely additive sequences generated from values on the primes.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{CyclicGroup, GroupElem};
use crate::numtheory::{factorize, is_prime};
use crate::seq::{IndexBase, Seq};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum GeneratorKind {
    /// Finitely many primes with nonzero values; every other prime maps to 0.
    FiniteTable(BTreeMap<u64, u32>),
    /// Primes q ≢ 0 (mod p) map to `table[q mod p]`; the prime p maps to `at_p`.
    /// `table[0]` is unused and kept at 0.
    ResidueRule { modulus: u64, table: Vec<u32>, at_p: u32 },
}

/// A map μ from the primes into ℤ_k.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeGenerator {
    group: CyclicGroup,
    kind: GeneratorKind,
}

impl PrimeGenerator {
    pub fn finite(group: CyclicGroup, entries: impl IntoIterator<Item = (u64, GroupElem)>) -> Result<Self> {
        let mut table = BTreeMap::new();
        for (p, v) in entries {
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            group.check(v.group())?;
            if !v.is_zero() {
                table.insert(p, v.value());
            } else {
                table.remove(&p);
            }
        }
        Ok(Self { group, kind: GeneratorKind::FiniteTable(table) })
    }

    pub fn zero(group: CyclicGroup) -> Self {
        Self { group, kind: GeneratorKind::FiniteTable(BTreeMap::new()) }
    }

    /// `residues[i − 1]` is the value for primes ≡ i (mod p), i = 1..p−1.
    pub fn residue_rule(group: CyclicGroup, modulus: u64, residues: &[GroupElem], at_p: GroupElem) -> Result<Self> {
        if !is_prime(modulus) {
            return Err(Error::NotPrime(modulus));
        }
        if residues.len() as u64 != modulus - 1 {
            return Err(Error::Precondition(format!("residue rule mod {modulus} needs {} values, got {}", modulus - 1, residues.len())));
        }
        group.check(at_p.group())?;
        let mut table = vec![0u32];
        for r in residues {
            group.check(r.group())?;
            table.push(r.value());
        }
        Ok(Self { group, kind: GeneratorKind::ResidueRule { modulus, table, at_p: at_p.value() } })
    }

    pub fn group(&self) -> CyclicGroup {
        self.group
    }

    pub fn kind(&self) -> &GeneratorKind {
        &self.kind
    }

    /// μ(q) for a prime q.
    pub fn value(&self, q: u64) -> u32 {
        match &self.kind {
            GeneratorKind::FiniteTable(t) => t.get(&q).copied().unwrap_or(0),
            GeneratorKind::ResidueRule { modulus, table, at_p } => {
                if q == *modulus {
                    *at_p
                } else {
                    table[(q % modulus) as usize]
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.kind {
            GeneratorKind::FiniteTable(t) => t.is_empty(),
            GeneratorKind::ResidueRule { table, at_p, .. } => *at_p == 0 && table.iter().all(|&v| v == 0),
        }
    }

    /// Whether infinitely many primes carry a nonzero value.
    pub fn is_infinite(&self) -> bool {
        match &self.kind {
            GeneratorKind::FiniteTable(_) => false,
            GeneratorKind::ResidueRule { table, .. } => table.iter().any(|&v| v != 0),
        }
    }

    /// Pointwise sum μ1 + μ2 of two finite tables.
    pub fn add(&self, other: &PrimeGenerator) -> Result<PrimeGenerator> {
        self.group.check(other.group)?;
        match (&self.kind, &other.kind) {
            (GeneratorKind::FiniteTable(a), GeneratorKind::FiniteTable(b)) => {
                let mut out = a.clone();
                for (&p, &v) in b {
                    let s = self.group.add_raw(out.get(&p).copied().unwrap_or(0), v);
                    if s == 0 {
                        out.remove(&p);
                    } else {
                        out.insert(p, s);
                    }
                }
                Ok(PrimeGenerator { group: self.group, kind: GeneratorKind::FiniteTable(out) })
            }
            _ => Err(Error::Precondition("only finite tables can be added".into())),
        }
    }
}

impl fmt::Display for PrimeGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            GeneratorKind::FiniteTable(t) => {
                f.write_str("{")?;
                for (i, (p, v)) in t.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{p}:{v}")?;
                }
                f.write_str("}")
            }
            GeneratorKind::ResidueRule { modulus, table, at_p } => {
                write!(f, "mod{modulus}{{")?;
                for (i, v) in table.iter().enumerate().take(*modulus as usize).skip(1) {
                    if i > 1 {
                        f.write_str(",")?;
                    }
                    write!(f, "{i}:{v}")?;
                }
                write!(f, ";p:{at_p}}}")
            }
        }
    }
}

/// Smallest-prime-factor table for 0..=limit.
fn spf_table(limit: usize) -> Vec<u32> {
    let mut spf = vec![0u32; limit + 1];
    for i in 2..=limit {
        if spf[i] == 0 {
            let mut j = i;
            while j <= limit {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    spf
}

/// pgs_μ(n) = Σ_p ν_p(n)·μ(p), a base-1 sequence.
pub fn pgs(mu: &PrimeGenerator) -> Seq {
    let g = mu.group;
    let single = mu.clone();
    let bulk = mu.clone();
    Seq::new(g, IndexBase::One, format!("pgs:{mu}"), move |n| {
        factorize(n).factors.iter().fold(0, |acc, &(p, e)| g.add_raw(acc, g.mul_raw(e as u64, single.value(p))))
    })
    .with_prefix(move |len| {
        let spf = spf_table(len as usize);
        let mut out = vec![0u32; len as usize + 1];
        for n in 2..=len as usize {
            let p = spf[n] as usize;
            out[n] = g.add_raw(out[n / p], bulk.value(p as u64));
        }
        out.drain(..1);
        out
    })
}

/// ν_p reduced into the group, i.e. pgs of the generator p ↦ 1.
pub fn nu(p: u64, group: CyclicGroup) -> Result<Seq> {
    let one = group.reduce(1);
    Ok(pgs(&PrimeGenerator::finite(group, [(p, one)])?).with_description(format!("nu:{p}")))
}

/// Least violation of complete additivity within the first `depth` terms,
/// ordered by (nm, n); (1, 1) when σ(1) ≠ 0.
pub fn check_additive_prefix(sigma: &Seq, depth: u64) -> Result<Option<(u64, u64)>> {
    if sigma.base() != IndexBase::One {
        return Err(Error::Precondition("additivity is checked on base-1 sequences".into()));
    }
    let values = sigma.prefix(depth);
    Ok(additive_violation(&values, sigma.group()))
}

/// The same check on an explicit table, `values[i]` = σ(i + 1).
pub fn additive_violation(values: &[u32], group: CyclicGroup) -> Option<(u64, u64)> {
    let at = |n: usize| values[n - 1];
    if values.is_empty() {
        return None;
    }
    if at(1) != 0 {
        return Some((1, 1));
    }
    let limit = values.len();
    for k in 4..=limit {
        let mut n = 2;
        while n * n <= k {
            if k % n == 0 && at(k) != group.add_raw(at(n), at(k / n)) {
                return Some((n as u64, (k / n) as u64));
            }
            n += 1;
        }
    }
    None
}

/// Membership of (a, b) in the self-similarity set of an additive sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AsMembership {
    pub member: bool,
    /// First index with a nonzero value, if one occurs in the first 4096 terms.
    pub nontrivial_witness: Option<u64>,
}

/// For a nontrivial additive σ the only self-similar progressions are a = b;
/// a trivial σ is similar to all of its subsequences.
pub fn additive_as_membership(sigma: &Seq, a: u64, b: u64) -> AsMembership {
    let witness = sigma.prefix(4096).iter().position(|&v| v != 0).map(|i| i as u64 + 1);
    AsMembership { member: witness.is_none() || a == b, nontrivial_witness: witness }
}
