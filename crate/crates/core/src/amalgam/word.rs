use std::fmt;

use crate::algebra::{BiPoly, FieldCtx, Scalar};
use crate::error::{same_field, Result};
use crate::generators::{Letter, PolyMap};

/// A product of generator letters. `letters[0]` is written leftmost and
/// applied last: the word denotes `letters[0] ∘ letters[1] ∘ … ∘ letters[n-1]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Word {
    ctx: FieldCtx,
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(ctx: FieldCtx, letters: Vec<Letter>) -> Result<Self> {
        for l in &letters {
            same_field(ctx, l.ctx())?;
        }
        Ok(Word { ctx, letters })
    }

    pub fn empty(ctx: FieldCtx) -> Self {
        Word { ctx, letters: Vec::new() }
    }

    pub fn single(letter: impl Into<Letter>) -> Self {
        let letter = letter.into();
        Word { ctx: letter.ctx(), letters: vec![letter] }
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `self ∘ other`: concatenation in written order.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        Word { ctx: self.ctx, letters }
    }

    pub fn push(&mut self, letter: impl Into<Letter>) {
        self.letters.push(letter.into());
    }

    pub fn inverse(&self) -> Word {
        let letters = self.letters.iter().rev().map(Letter::inverse).collect();
        Word { ctx: self.ctx, letters }
    }

    pub fn to_polymap(&self) -> PolyMap {
        word_to_polymap(self)
    }

    pub fn apply(&self, pt: &[Scalar; 2]) -> [Scalar; 2] {
        let mut cur = pt.clone();
        for l in self.letters.iter().rev() {
            cur = l.apply(&cur);
        }
        cur
    }
}

/// `letter ∘ g`, substituting `g` into the letter's (low degree) components.
pub(crate) fn letter_after(letter: &Letter, g: &PolyMap) -> PolyMap {
    let ctx = g.ctx();
    match letter {
        Letter::Elementary(e) => {
            let mut py = BiPoly::zero(ctx);
            for c in e.p.coeffs().iter().rev() {
                py = &(&py * g.q()) + &BiPoly::constant(c.clone());
            }
            let p = &g.p().scale(&e.alpha) + &py;
            let q = &g.q().scale(&e.beta) + &BiPoly::constant(e.v.clone());
            PolyMap::new(p, q).expect("same field")
        }
        Letter::Affine(_) | Letter::Basic(_) => {
            let a = match letter {
                Letter::Affine(a) => a.clone(),
                Letter::Basic(b) => b.to_affine(),
                Letter::Elementary(_) => unreachable!(),
            };
            let row = |m1, m2, t: &Scalar| &(&g.p().scale(m1) + &g.q().scale(m2)) + &BiPoly::constant(t.clone());
            PolyMap::new(row(&a.m.m11, &a.m.m12, &a.t[0]), row(&a.m.m21, &a.m.m22, &a.t[1])).expect("same field")
        }
    }
}

/// Exact expansion of a word into a single polynomial map.
pub fn word_to_polymap(w: &Word) -> PolyMap {
    let mut acc = PolyMap::identity(w.ctx);
    for l in w.letters.iter().rev() {
        acc = letter_after(l, &acc);
    }
    acc
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        f.write_str(&parts.join("\n"))
    }
}
