//! Conversions between patterns and uniform morphisms.

use super::{compose, Pattern, PatternSymbol};
use crate::error::{Error, Result};
use crate::group::{CyclicGroup, Perm};
use crate::seq::{IndexBase, Seq};

/// An r-uniform morphism on ℤ_k, given by the images of the letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniformMorphism {
    group: CyclicGroup,
    images: Vec<Vec<u32>>,
}

impl UniformMorphism {
    pub fn new(group: CyclicGroup, images: Vec<Vec<u32>>) -> Result<Self> {
        if images.len() != group.order() as usize {
            return Err(Error::Precondition(format!("need {} images, got {}", group.order(), images.len())));
        }
        let width = images[0].len();
        if width == 0 || images.iter().any(|w| w.len() != width) {
            return Err(Error::Precondition("images must be nonempty and of equal length".into()));
        }
        if let Some(&v) = images.iter().flatten().find(|&&v| v >= group.order()) {
            return Err(Error::OutOfRange { value: v as u64, order: group.order() });
        }
        Ok(Self { group, images })
    }

    pub fn group(&self) -> CyclicGroup {
        self.group
    }

    pub fn width(&self) -> usize {
        self.images[0].len()
    }

    pub fn image(&self, a: u32) -> &[u32] {
        &self.images[a as usize]
    }

    /// h^ω(start) as a base-1 sequence; h(start) must begin with `start`.
    pub fn fixed_point(&self, start: u32) -> Result<Seq> {
        if self.images[start as usize][0] != start {
            return Err(Error::Precondition(format!("h({start}) does not begin with {start}")));
        }
        if self.width() < 2 {
            return Err(Error::Precondition("a fixed point needs width at least 2".into()));
        }
        let h = self.clone();
        Ok(Seq::new(self.group, IndexBase::One, "morphism fixed point", move |n| {
            let r = h.width() as u64;
            let mut digits = Vec::new();
            let mut m = n - 1;
            while m > 0 {
                digits.push((m % r) as usize);
                m /= r;
            }
            digits.iter().rev().fold(start, |a, &d| h.images[a as usize][d])
        }))
    }
}

/// h(a) = P ∘ a, i.e. P with every gap f replaced by f(a).
pub fn pattern_to_morphism(p: &Pattern) -> Result<UniformMorphism> {
    if !p.is_productive() {
        return Err(Error::NonProductive);
    }
    let g = p.group();
    let images = g.elements().map(|a| compose(p, &Pattern::letter(a)).map(|c| c.letter_values())).collect::<Result<Vec<_>>>()?;
    UniformMorphism::new(g, images)
}

/// Recovers P = b·u·f·v from a morphism of the shape h(a) = b·u·f(a)·v.
pub fn morphism_to_pattern(h: &UniformMorphism) -> Result<Pattern> {
    let g = h.group;
    let width = h.width();
    let varying: Vec<usize> = (0..width).filter(|&i| h.images.iter().any(|w| w[i] != h.images[0][i])).collect();
    let gap_at = match varying.as_slice() {
        [i] => *i,
        [] if g.order() == 1 && width >= 2 => width - 1,
        _ => return Err(Error::Precondition("morphism is not of the shape b u f(a) v".into())),
    };
    if gap_at == 0 {
        return Err(Error::Precondition("the first letter of every image must be the same".into()));
    }
    let f = Perm::from_table(g, h.images.iter().map(|w| w[gap_at]).collect())
        .map_err(|_| Error::Precondition("the varying position is not a bijection".into()))?;
    let symbols = (0..width)
        .map(|i| if i == gap_at { Ok(PatternSymbol::Gap(f.clone())) } else { g.elem(h.images[0][i]).map(PatternSymbol::Letter) })
        .collect::<Result<Vec<_>>>()?;
    Pattern::new(g, symbols)
}
