//! One-gap patterns whose Toeplitz words are completely additive.
//!
//! Every such pattern is either the degenerate zero shape 0⁺?0*, or a power
//! of an atom (λ_{p,g} ⊙ c)·r_d of prime length p, where λ_{p,g} is the word
//! of discrete logarithms modulo p and ξ(p−1, k) divides c.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::additive::PrimeGenerator;
use crate::error::{Error, Result};
use crate::group::{xi, CyclicGroup, GroupElem, Perm, Word};
use crate::numtheory::{canonical_root, factorize, is_prime, log_table};
use crate::toeplitz::{power, Pattern, PatternSymbol};

/// λ_{p,g} = 0 log_g(2) … log_g(p−1) over ℤ_{p−1}; λ_{2,1} = 0 over ℤ_1.
pub fn lambda_word(p: u64, g: u64) -> Result<Word> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let group = CyclicGroup::new((p - 1) as u32)?;
    if p == 2 {
        if g % 2 != 1 {
            return Err(Error::NotPrimitiveRoot { g, p });
        }
        return Word::new(group, vec![0]);
    }
    let table = log_table(g, p)?;
    Word::new(group, table[1..].iter().map(|&e| e as u32).collect())
}

/// power((λ_{p,g} ⊙ c)·r_d, k) over the group of `c`.
pub fn make_additive_pattern(p: u64, g: u64, c: GroupElem, d: GroupElem, k: u64) -> Result<Pattern> {
    let group = c.group();
    group.check(d.group())?;
    if k == 0 {
        return Err(Error::Precondition("the exponent k must be at least 1".into()));
    }
    let lambda = lambda_word(p, g)?;
    let m = group.order() as u64;
    let x = xi(p - 1, m);
    if !(c.value() as u64).is_multiple_of(x) {
        return Err(Error::Indivisible { n: p - 1, m, xi: x, c: c.value() as u64 });
    }
    power(&atom(group, &lambda, c, d)?, k)
}

fn atom(group: CyclicGroup, lambda: &Word, c: GroupElem, d: GroupElem) -> Result<Pattern> {
    let mut symbols: Vec<PatternSymbol> = lambda
        .letters()
        .iter()
        .map(|&l| group.elem(group.mul_raw(l as u64, c.value())).map(PatternSymbol::Letter))
        .collect::<Result<_>>()?;
    symbols.push(PatternSymbol::Gap(Perm::rotation(d)));
    Pattern::new(group, symbols)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Member,
    NonMember,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    /// P = power((λ_{p,g} ⊙ c)·r_d, k).
    Atomic {
        p: u64,
        g: u64,
        c: u32,
        d: u32,
        k: u32,
    },
    /// 0⁺ f 0* with f(0) = 0; the word is constant zero.
    Degenerate,
    NonProductive,
    FirstLetterNonzero,
    GapNotLast {
        position: usize,
    },
    /// The gap is not a rotation on the letters that occur.
    GapNotRotation,
    NotPrimePower {
        len: usize,
    },
    /// P differs from the power of its prime-length atom.
    NotAtomPower,
    /// w(k) ≠ w(i) + w(j) although k ≡ ij (mod p).
    TableViolation {
        i: u64,
        j: u64,
        k: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdditivePatternCertificate {
    pub verdict: Verdict,
    pub evidence: Evidence,
}

impl AdditivePatternCertificate {
    pub fn is_member(&self) -> bool {
        self.verdict == Verdict::Member
    }

    fn non_member(evidence: Evidence) -> Self {
        Self { verdict: Verdict::NonMember, evidence }
    }
}

/// Elements of the subgroup of ℤ_m generated by `gens`.
fn generated_subgroup(m: u32, gens: impl IntoIterator<Item = u32>) -> Vec<u32> {
    let step = gens.into_iter().fold(m, |acc, v| acc.gcd(&v));
    (0..m).step_by(step as usize).collect()
}

/// Least (i, j, k) with i ≤ j, k ≡ ij (mod p) and w(k) ≠ w(i) + w(j); `w[i − 1]` = w(i).
fn table_violation(group: CyclicGroup, w: &[u32], p: u64) -> Option<(u64, u64, u64)> {
    for i in 1..p {
        for j in i..p {
            let k = i * j % p;
            let at = |x: u64| w[x as usize - 1];
            if at(k) != group.add_raw(at(i), at(j)) {
                return Some((i, j, k));
            }
        }
    }
    None
}

/// P with its single gap replaced by the rotation r_d.
fn normalize_gap(p: &Pattern, d: GroupElem) -> Result<Pattern> {
    let symbols = p.symbols().iter().map(|s| if s.is_gap() { PatternSymbol::Gap(Perm::rotation(d)) } else { s.clone() }).collect();
    Pattern::new(p.group(), symbols)
}

/// Decides whether T(P) is completely additive for a one-gap pattern P.
pub fn is_additive_pattern(p: &Pattern) -> Result<AdditivePatternCertificate> {
    let (h, f) = p.single_gap()?;
    let group = p.group();
    let len = p.len();
    if h == 1 {
        return Ok(AdditivePatternCertificate::non_member(Evidence::NonProductive));
    }
    let letters = p.letter_values();
    if letters.iter().all(|&a| a == 0) && f.apply_raw(0) == 0 {
        return Ok(AdditivePatternCertificate { verdict: Verdict::Member, evidence: Evidence::Degenerate });
    }
    // From here T(P) is not constant zero.
    if letters[0] != 0 {
        return Ok(AdditivePatternCertificate::non_member(Evidence::FirstLetterNonzero));
    }
    if h != len {
        return Ok(AdditivePatternCertificate::non_member(Evidence::GapNotLast { position: h }));
    }
    let d = group.elem(f.apply_raw(0))?;
    let occurring = generated_subgroup(group.order(), letters.iter().copied().chain([d.value()]));
    if f.rotation_on(&occurring) != Some(d) {
        return Ok(AdditivePatternCertificate::non_member(Evidence::GapNotRotation));
    }
    let Some((prime, k)) = factorize(len as u64).as_prime_power() else {
        return Ok(AdditivePatternCertificate::non_member(Evidence::NotPrimePower { len }));
    };
    let normalized = normalize_gap(p, d)?;
    let q = atom_of(&normalized, prime as usize)?;
    if power(&q, k as u64)? != normalized {
        return Ok(AdditivePatternCertificate::non_member(Evidence::NotAtomPower));
    }
    let w = q.letter_values();
    if let Some((i, j, kk)) = table_violation(group, &w, prime) {
        return Ok(AdditivePatternCertificate::non_member(Evidence::TableViolation { i, j, k: kk }));
    }
    let g = canonical_root(prime)?;
    let c = w[(g % prime) as usize - 1];
    let (_, atom_gap) = q.single_gap()?;
    let atom_d = atom_gap.apply_raw(0);
    let evidence = Evidence::Atomic { p: prime, g, c, d: atom_d, k };
    let rebuilt = make_additive_pattern(prime, g, group.elem(c)?, group.elem(atom_d)?, k as u64)?;
    if rebuilt != normalized {
        return Err(Error::Internal(format!("evidence {evidence:?} does not rebuild {p}")));
    }
    Ok(AdditivePatternCertificate { verdict: Verdict::Member, evidence })
}

/// Q = a_1 … a_{p−1} r_{a_p} read off a gap-last pattern of length p^k.
fn atom_of(p: &Pattern, prime: usize) -> Result<Pattern> {
    let group = p.group();
    let mut symbols: Vec<PatternSymbol> = p.symbols()[..prime - 1].to_vec();
    let d = match p.symbol(prime) {
        PatternSymbol::Letter(a) => *a,
        PatternSymbol::Gap(f) => group.elem(f.apply_raw(0))?,
    };
    symbols.push(PatternSymbol::Gap(Perm::rotation(d)));
    Pattern::new(group, symbols)
}

/// Splits a nontrivial member of length p^k into its atom Q and k, with power(Q, k) = P
/// (up to the gap acting as a rotation on the occurring letters).
pub fn atomic_decompose(p: &Pattern) -> Result<(Pattern, u32)> {
    let cert = is_additive_pattern(p)?;
    let Evidence::Atomic { p: prime, k, d, .. } = cert.evidence else {
        return Err(Error::Precondition(format!("{p} is not a nontrivial additive pattern")));
    };
    let (_, f) = p.single_gap()?;
    let normalized = normalize_gap(p, p.group().elem(f.apply_raw(0))?)?;
    let q = atom_of(&normalized, prime as usize)?;
    debug_assert_eq!(q.single_gap()?.1.apply_raw(0), d);
    if power(&q, k as u64)? != normalized {
        return Err(Error::Internal(format!("power of the atom {q} does not reproduce {p}")));
    }
    Ok((q, k))
}

/// The prime generator μ with T(P) = pgs_μ: primes q ≡ i (mod p) map to
/// λ_{p,g}(i)·c and p itself maps to d.
pub fn generator_of(p: &Pattern) -> Result<PrimeGenerator> {
    let cert = is_additive_pattern(p)?;
    match cert.evidence {
        Evidence::Degenerate => Ok(PrimeGenerator::zero(p.group())),
        Evidence::Atomic { p: prime, g, c, d, .. } => {
            let group = p.group();
            let lambda = lambda_word(prime, g)?;
            let residues: Vec<GroupElem> = lambda.letters().iter().map(|&l| group.reduce(l as i64 * c as i64)).collect();
            PrimeGenerator::residue_rule(group, prime, &residues, group.elem(d)?)
        }
        _ => Err(Error::NotAdditive),
    }
}
