use std::collections::VecDeque;
use std::fmt;

use super::word::Word;
use crate::algebra::{FieldCtx, Scalar};
use crate::error::{same_field, Error, Result};
use crate::generators::{AffineMap, BasicMap, CosetRepA, CosetRepE, ElementaryMap, Letter, PolyMap};

/// A coset-representative letter of a normal form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum NfLetter {
    A(CosetRepA),
    E(CosetRepE),
}

impl NfLetter {
    pub fn is_affine(&self) -> bool {
        matches!(self, NfLetter::A(_))
    }

    pub fn to_letter(&self) -> Letter {
        match self {
            NfLetter::A(a) => a.clone().into(),
            NfLetter::E(e) => e.clone().into(),
        }
    }

    pub fn to_polymap(&self) -> PolyMap {
        match self {
            NfLetter::A(a) => a.to_polymap(),
            NfLetter::E(e) => e.to_polymap(),
        }
    }
}

impl fmt::Display for NfLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NfLetter::A(a) => a.fmt(f),
            NfLetter::E(e) => e.fmt(f),
        }
    }
}

/// The unique form `b ∘ c_1 ∘ c_2 ∘ … ∘ c_n` with `b` basic and the `c_i`
/// alternating between affine and elementary coset representatives.
/// `letters()[0]` is `c_1`, the letter next to `b`; the last letter acts first.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NormalForm {
    b: BasicMap,
    letters: Vec<NfLetter>,
}

/// Degrees of the elementary letters, in written order (leftmost first).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PolyDegree(pub Vec<usize>);

impl PolyDegree {
    pub fn reversed(&self) -> PolyDegree {
        PolyDegree(self.0.iter().rev().copied().collect())
    }

    /// Whether `other` is a rotation of this sequence.
    pub fn is_cyclic_shift_of(&self, other: &PolyDegree) -> bool {
        let (a, b) = (&self.0, &other.0);
        if a.len() != b.len() {
            return false;
        }
        if a.is_empty() {
            return true;
        }
        (0..a.len()).any(|k| (0..a.len()).all(|i| a[(i + k) % a.len()] == b[i]))
    }

    pub fn product(&self) -> u64 {
        self.0.iter().map(|&d| d as u64).product()
    }
}

impl fmt::Display for PolyDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Splits an affine map as `b ∘ rep` with `rep` in the affine transversal, or
/// returns it whole when it is already basic.
pub fn split_affine(a: &AffineMap) -> (BasicMap, Option<CosetRepA>) {
    if let Some(b) = a.as_basic() {
        return (b, None);
    }
    let beta = &a.m.m22 * &a.m.m21.inv().expect("lower-left entry nonzero");
    let rep = CosetRepA::new(beta);
    let b = a.compose(&rep.to_affine().inverse()).as_basic().expect("lower-left entry cancels");
    (b, Some(rep))
}

/// Splits an elementary map `(αx + P(y), βy + v)` with `P = y²P₂ + p₁y + p₀`
/// as `(α, β, p₁, p₀, v) ∘ (x + y² P₂/α, y)`.
pub fn split_elementary(e: &ElementaryMap) -> (BasicMap, Option<CosetRepE>) {
    let b =
        BasicMap { alpha: e.alpha.clone(), beta: e.beta.clone(), gamma: e.p.coeff(1), u: e.p.coeff(0), v: e.v.clone() };
    let high = e.p.shift_down(2);
    if high.is_zero() {
        return (b, None);
    }
    let ai = e.alpha.inv().expect("alpha nonzero");
    (b, Some(CosetRepE::new(high.scale(&ai)).expect("nonzero")))
}

enum Factor {
    Affine(AffineMap),
    Elementary(ElementaryMap),
}

impl NormalForm {
    pub fn identity(ctx: FieldCtx) -> Self {
        NormalForm { b: BasicMap::identity(ctx), letters: Vec::new() }
    }

    pub fn from_basic(b: BasicMap) -> Self {
        NormalForm { b, letters: Vec::new() }
    }

    /// Builds a normal form from parts, checking alternation.
    pub fn from_parts(b: BasicMap, letters: Vec<NfLetter>) -> Result<Self> {
        let ctx = b.ctx();
        for l in &letters {
            let c = match l {
                NfLetter::A(a) => a.ctx(),
                NfLetter::E(e) => e.ctx(),
            };
            same_field(ctx, c)?;
        }
        if letters.windows(2).any(|w| w[0].is_affine() == w[1].is_affine()) {
            return Err(Error::InvalidArgument("normal-form letters must alternate".into()));
        }
        Ok(NormalForm { b, letters })
    }

    pub fn ctx(&self) -> FieldCtx {
        self.b.ctx()
    }

    pub fn b(&self) -> &BasicMap {
        &self.b
    }

    pub fn letters(&self) -> &[NfLetter] {
        &self.letters
    }

    pub fn is_basic(&self) -> bool {
        self.letters.is_empty()
    }

    /// Whether the leftmost letter is an affine representative.
    pub fn leading_a_present(&self) -> bool {
        self.letters.first().is_some_and(NfLetter::is_affine)
    }

    /// Whether the rightmost letter (applied first) is elementary.
    pub fn trailing_e_present(&self) -> bool {
        self.letters.last().is_some_and(|l| !l.is_affine())
    }

    pub fn length(&self) -> usize {
        self.letters.len()
    }

    pub fn poly_degree(&self) -> Result<PolyDegree> {
        let pd: Vec<usize> = self
            .letters
            .iter()
            .filter_map(|l| match l {
                NfLetter::E(e) => Some(e.degree()),
                NfLetter::A(_) => None,
            })
            .collect();
        if pd.is_empty() {
            return Err(Error::NoElementaryPart);
        }
        Ok(PolyDegree(pd))
    }

    /// Degree of the element: the product of the elementary degrees.
    pub fn degree(&self) -> u64 {
        self.poly_degree().map(|pd| pd.product()).unwrap_or(1)
    }

    /// Cyclically reduced: even positive length.
    pub fn is_crnf(&self) -> bool {
        !self.letters.is_empty() && self.letters.len().is_multiple_of(2)
    }

    pub fn to_word(&self) -> Word {
        let mut letters = Vec::with_capacity(self.letters.len() + 1);
        if !self.b.is_identity() {
            letters.push(Letter::Basic(self.b.clone()));
        }
        letters.extend(self.letters.iter().map(NfLetter::to_letter));
        Word::new(self.ctx(), letters).expect("same field")
    }

    pub fn to_polymap(&self) -> PolyMap {
        self.to_word().to_polymap()
    }

    pub fn inverse(&self) -> NormalForm {
        normalize(&self.to_word().inverse())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &NormalForm) -> Result<NormalForm> {
        same_field(self.ctx(), other.ctx())?;
        Ok(normalize(&self.to_word().concat(&other.to_word())))
    }

    /// `self^n` by repeated multiplication.
    pub fn power(&self, n: i64) -> NormalForm {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut acc = NormalForm::identity(self.ctx());
        for _ in 0..n.unsigned_abs() {
            acc = acc.compose(&base).expect("same field");
        }
        acc
    }

    pub fn apply(&self, pt: &[Scalar; 2]) -> [Scalar; 2] {
        self.to_word().apply(pt)
    }

    /// One letter per line: `B α β γ u v`, then `A β` / `E P(y)` letters.
    pub fn serialize(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.b)?;
        for l in &self.letters {
            write!(f, "\n{l}")?;
        }
        Ok(())
    }
}

/// Left-multiplies a normal form (given with letters in a deque) by one letter.
fn push_left(b: &mut BasicMap, letters: &mut VecDeque<NfLetter>, x: &Letter) {
    let factor = match x {
        Letter::Basic(xb) => {
            *b = xb.compose(b);
            return;
        }
        Letter::Affine(a) => match a.as_basic() {
            Some(xb) => {
                *b = xb.compose(b);
                return;
            }
            None => Factor::Affine(a.compose(&b.to_affine())),
        },
        Letter::Elementary(e) => match e.as_basic() {
            Some(xb) => {
                *b = xb.compose(b);
                return;
            }
            None => Factor::Elementary(e.compose(&b.to_elementary())),
        },
    };
    match factor {
        Factor::Affine(y) => {
            let merged = match letters.front() {
                Some(NfLetter::A(c)) => {
                    let z = y.compose(&c.to_affine());
                    letters.pop_front();
                    z
                }
                _ => y,
            };
            let (nb, rep) = split_affine(&merged);
            *b = nb;
            if let Some(r) = rep {
                letters.push_front(NfLetter::A(r));
            }
        }
        Factor::Elementary(y) => {
            let merged = match letters.front() {
                Some(NfLetter::E(c)) => {
                    let z = y.compose(&c.to_elementary());
                    letters.pop_front();
                    z
                }
                _ => y,
            };
            let (nb, rep) = split_elementary(&merged);
            *b = nb;
            if let Some(r) = rep {
                letters.push_front(NfLetter::E(r));
            }
        }
    }
}

/// The unique normal form of the element a word represents.
///
/// Letters are absorbed from the right: each new letter is composed with the
/// leading basic map, merged with the first representative when they share a
/// factor, and split again.
pub fn normalize(w: &Word) -> NormalForm {
    let mut b = BasicMap::identity(w.ctx());
    let mut letters = VecDeque::new();
    for x in w.letters().iter().rev() {
        push_left(&mut b, &mut letters, x);
    }
    NormalForm { b, letters: letters.into() }
}

pub fn length(nf: &NormalForm) -> usize {
    nf.length()
}

pub fn poly_degree(nf: &NormalForm) -> Result<PolyDegree> {
    nf.poly_degree()
}

pub fn nf_degree(nf: &NormalForm) -> u64 {
    nf.degree()
}

pub fn invert_nf(nf: &NormalForm) -> NormalForm {
    nf.inverse()
}
