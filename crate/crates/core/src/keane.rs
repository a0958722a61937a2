//! Keane block products, generalized Morse words and the Thue–Morse word.
//!
//! Keane words are indexed from 0.

use std::fmt;

use crate::error::{Error, Result};
use crate::group::{CyclicGroup, Perm, Word};
use crate::seq::{IndexBase, Seq};
use crate::toeplitz::{Pattern, PatternSymbol};

/// u × v: the concatenation of the shifted copies u + v(0), u + v(1), ….
pub fn keane_product(u: &Word, v: &Word) -> Result<Word> {
    let g = u.group();
    g.check(v.group())?;
    let letters = v.letters().iter().flat_map(|&a| u.letters().iter().map(move |&x| g.add_raw(x, a))).collect();
    Word::new(g, letters)
}

/// A word starting with 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Block(Word);

impl Block {
    pub fn new(w: Word) -> Result<Self> {
        match w.letters().first() {
            None => Err(Error::Precondition("a block must be nonempty".into())),
            Some(&0) => Ok(Self(w)),
            Some(&a) => Err(Error::Precondition(format!("a block must start with 0, found {a}"))),
        }
    }

    pub fn parse(group: CyclicGroup, text: &str) -> Result<Self> {
        Self::new(Word::parse(group, text)?)
    }

    pub fn word(&self) -> &Word {
        &self.0
    }

    pub fn group(&self) -> CyclicGroup {
        self.0.group()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn product(&self, other: &Block) -> Result<Block> {
        keane_product(&self.0, &other.0).map(Block)
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// K(u) = u × u × ⋯ as a base-0 sequence. With k = |u|, K(u)(n) is the sum of
/// u_i over the base-k digits i of n.
pub fn keane_word(u: &Block) -> Result<Seq> {
    let k = u.len() as u64;
    if k < 2 {
        return Err(Error::Precondition("a Keane word needs a block of length at least 2".into()));
    }
    let g = u.group();
    let digits: Vec<u32> = u.word().letters().to_vec();
    let bulk = digits.clone();
    Ok(Seq::new(g, IndexBase::Zero, format!("keane:{u}"), move |mut n| {
        let mut acc = 0;
        while n > 0 {
            acc = g.add_raw(acc, digits[(n % k) as usize]);
            n /= k;
        }
        acc
    })
    .with_prefix(move |len| {
        let mut out: Vec<u32> = Vec::with_capacity(len as usize);
        for n in 0..len {
            let v = if n < k { bulk[n as usize] } else { g.add_raw(out[(n / k) as usize], bulk[(n % k) as usize]) };
            out.push(v);
        }
        out
    }))
}

/// Δ(x)(i) = x(i+1) − x(i); the empty word for a single letter.
pub fn word_diff(x: &Word) -> Result<Word> {
    if x.is_empty() {
        return Err(Error::Precondition("the first difference of the empty word is undefined".into()));
    }
    let g = x.group();
    Word::new(g, x.letters().windows(2).map(|w| g.sub_raw(w[1], w[0])).collect())
}

/// Δ_T(u) = Δ(u) r_d with d = −u(|u|−1).
pub fn delta_t(u: &Block) -> Result<Pattern> {
    let g = u.group();
    let last = *u.word().letters().last().expect("blocks are nonempty");
    let mut symbols = word_diff(u.word())?.letters().iter().map(|&a| g.elem(a).map(PatternSymbol::Letter)).collect::<Result<Vec<_>>>()?;
    symbols.push(PatternSymbol::Gap(Perm::rotation(g.reduce(-(last as i64)))));
    Pattern::new(g, symbols)
}

/// The inverse of [`delta_t`] on its image: partial sums of the letters,
/// provided the final symbol is the rotation by minus their total.
pub fn sum_t(p: &Pattern) -> Result<Block> {
    let g = p.group();
    let syms = p.symbols();
    let (last, body) = syms.split_last().expect("patterns are nonempty");
    let shape = || Error::Precondition(format!("{p} is not of the form w r_d with d = −Σw"));
    let d = last.as_gap().and_then(Perm::as_rotation).ok_or_else(shape)?;
    let mut acc = 0u32;
    let mut letters = vec![0];
    for s in body {
        acc = g.add_raw(acc, s.as_letter().ok_or_else(shape)?);
        letters.push(acc);
    }
    if g.add_raw(acc, d.value()) != 0 {
        return Err(shape());
    }
    Block::new(Word::new(g, letters)?)
}

/// The Thue–Morse bit: popcount(n) mod 2.
pub fn thue_morse(n: u64) -> u32 {
    n.count_ones() % 2
}

/// The Thue–Morse word K(01).
pub fn thue_morse_word() -> Seq {
    let g = CyclicGroup::new(2).expect("order 2");
    keane_word(&Block::parse(g, "01").expect("valid block")).expect("length 2").with_description("tm")
}

/// x + y when x and y share no binary digit.
pub fn carry_free_add(x: u64, y: u64) -> Option<u64> {
    (x & y == 0).then_some(x | y)
}

/// Some y > 0 with m(y) = 0 and m(xy) = 1, for x not a power of 2.
pub fn tm_witness(x: u64) -> Result<u64> {
    if x == 0 || x.is_power_of_two() {
        return Err(Error::Precondition(format!("{x} is a power of 2 or zero; no witness exists")));
    }
    let good = |y: u64| x.checked_mul(y).is_some_and(|xy| thue_morse(y) == 0 && thue_morse(xy) == 1);
    let odd = x >> x.trailing_zeros();
    let constructed = if odd & 2 == 0 { Some(spread(odd)) } else { odd.checked_mul(3).map(spread).and_then(|y| y.checked_mul(3)) };
    if let Some(y) = constructed.filter(|&y| good(y)) {
        return Ok(y);
    }
    (1..).find(|&y| good(y)).ok_or_else(|| Error::Internal("no witness found".into()))
}

/// 2^n + 1 where n + 1 is the bit length of x.
fn spread(x: u64) -> u64 {
    let n = 63 - x.leading_zeros();
    (1u64 << n) + 1
}

/// Whether T(n)_{a,b} = m(a + bn) is similar to the Thue–Morse word: exactly
/// when b is a power of 2 and a < b.
pub fn as_morse(a: u64, b: u64) -> bool {
    b.is_power_of_two() && a < b
}
