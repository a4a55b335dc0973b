use std::fmt;

use crate::algebra::{FieldCtx, Scalar, UniPoly};
use crate::amalgam::{cyclically_reduce, decompose, normalize, CRStatus, Word};
use crate::error::{same_field, Error, Result};
use crate::generators::{classify_letter, AffineMap, ElementaryMap, Letter, Matrix2, PolyMap};

/// The two linear involutions every involution in a factor is conjugate to:
/// `I = diag(−1, −1)` and `T = (0 1; 1 0)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum LinearInvolution {
    I,
    T,
}

impl LinearInvolution {
    pub fn matrix(self, ctx: FieldCtx) -> Matrix2 {
        match self {
            LinearInvolution::I => Matrix2::scalar(-Scalar::one(ctx)),
            LinearInvolution::T => Matrix2::swap(ctx),
        }
    }

    pub fn to_polymap(self, ctx: FieldCtx) -> PolyMap {
        AffineMap::linear(self.matrix(ctx)).expect("invertible").to_polymap()
    }
}

impl fmt::Display for LinearInvolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LinearInvolution::I => "I",
            LinearInvolution::T => "T",
        })
    }
}

/// A vector `w` with `w, A w` linearly independent; exists for non-scalar `A`.
fn cyclic_vector(a: &Matrix2) -> [Scalar; 2] {
    let ctx = a.ctx();
    let (one, zero) = (Scalar::one(ctx), Scalar::zero(ctx));
    for w in [[one.clone(), zero.clone()], [zero.clone(), one.clone()], [one.clone(), one.clone()]] {
        let aw = a.apply(&w);
        if !(&(&w[0] * &aw[1]) - &(&w[1] * &aw[0])).is_zero() {
            return w;
        }
    }
    unreachable!("non-scalar 2x2 matrices have a cyclic vector among e1, e2, e1+e2")
}

/// Basis change taking `A` to its companion matrix: columns `w`, `A w`.
fn companion_basis(a: &Matrix2) -> Matrix2 {
    let w = cyclic_vector(a);
    let aw = a.apply(&w);
    let [w0, w1] = w;
    let [aw0, aw1] = aw;
    Matrix2 { m11: w0, m12: aw0, m21: w1, m22: aw1 }
}

/// `C` with `C A C⁻¹ = B`, when `A` and `B` are conjugate in GL(2). Scalar
/// matrices are only conjugate to themselves; non-scalar ones are conjugate
/// exactly when trace and determinant agree (same rational canonical form).
pub fn linear_conjugate(a: &Matrix2, b: &Matrix2) -> Result<Option<Matrix2>> {
    same_field(a.ctx(), b.ctx())?;
    if a.det().is_zero() || b.det().is_zero() {
        return Err(Error::Singular);
    }
    if a.is_scalar() || b.is_scalar() {
        return Ok((a == b).then(|| Matrix2::identity(a.ctx())));
    }
    if a.trace() != b.trace() || a.det() != b.det() {
        return Ok(None);
    }
    let pa = companion_basis(a);
    let pb = companion_basis(b);
    let c = pb.mul(&pa.inverse()?);
    debug_assert_eq!(c.mul(a), b.mul(&c));
    Ok(Some(c))
}

fn linear_letter(m: Matrix2) -> Letter {
    Letter::Affine(AffineMap::linear(m).expect("invertible"))
}

fn half(ctx: FieldCtx) -> Scalar {
    Scalar::from_int(ctx, 2).inv().expect("odd characteristic")
}

/// Conjugator taking a linear involution `m` (not `±1`) to `T`.
fn to_t(m: &Matrix2) -> Result<Letter> {
    let c = linear_conjugate(m, &Matrix2::swap(m.ctx()))?.ok_or(Error::NotInvolution)?;
    Ok(linear_letter(c))
}

fn linearize_affine(a: &AffineMap) -> Result<(Vec<Letter>, LinearInvolution)> {
    let ctx = a.ctx();
    let h = half(ctx);
    // Fixed point t/2 (since M t = −t); move it to the origin.
    let shift = Letter::Affine(AffineMap::translation(-&(&a.t[0] * &h), -&(&a.t[1] * &h))?);
    if a.m == Matrix2::scalar(-Scalar::one(ctx)) {
        return Ok((vec![shift], LinearInvolution::I));
    }
    Ok((vec![to_t(&a.m)?, shift], LinearInvolution::T))
}

fn linearize_elementary(e: &ElementaryMap) -> Result<(Vec<Letter>, LinearInvolution)> {
    let ctx = e.ctx();
    let h = half(ctx);
    let one = Scalar::one(ctx);
    if e.beta.is_one() {
        // (−x + P(y), y) ↦ (−x, y) via x ↦ x − P(y)/2, then S ↦ T.
        let shear = ElementaryMap::shear(e.p.scale(&-&h));
        let s = Matrix2 { m11: -one.clone(), m12: Scalar::zero(ctx), m21: Scalar::zero(ctx), m22: one };
        return Ok((vec![to_t(&s)?, Letter::Elementary(shear)], LinearInvolution::T));
    }
    // (αx + P(y), −y + v): recentre y at v/2, then remove P'(y) = P(y + v/2)
    // with x ↦ x + P'(y)/(2α).
    let vh = &e.v * &h;
    let recentre = ElementaryMap::new(one.clone(), one.clone(), -&vh, UniPoly::zero(ctx))?;
    let p_shifted = e.p.compose_affine(&one, &vh);
    let shear = ElementaryMap::shear(p_shifted.scale(&(&h / &e.alpha)));
    let mut letters = vec![Letter::Elementary(shear), Letter::Elementary(recentre)];
    if e.alpha.is_one() {
        let d = Matrix2 { m11: one.clone(), m12: Scalar::zero(ctx), m21: Scalar::zero(ctx), m22: -one };
        letters.insert(0, to_t(&d)?);
        return Ok((letters, LinearInvolution::T));
    }
    Ok((letters, LinearInvolution::I))
}

fn linearize_letter(l: &Letter) -> Result<(Vec<Letter>, LinearInvolution)> {
    match l {
        Letter::Affine(a) => linearize_affine(a),
        Letter::Basic(b) => linearize_affine(&b.to_affine()),
        Letter::Elementary(e) => linearize_elementary(e),
    }
}

/// Conjugates an involution of the affine or elementary group to `I` or `T`:
/// returns `h` and `L` with `h ∘ r ∘ h⁻¹ = L`. Maps that are not single
/// letters are cyclically reduced first; reduction must end in one factor.
pub fn linearize_involution(r: &PolyMap) -> Result<(Word, LinearInvolution)> {
    let ctx = r.ctx();
    ctx.require_odd_characteristic()?;
    let word = decompose(r)?;
    let nf = normalize(&word);
    let square = nf.compose(&nf)?;
    if nf.is_basic() && nf.b().is_identity() || !(square.is_basic() && square.b().is_identity()) {
        return Err(Error::NotInvolution);
    }
    let (prefix, letter) = match classify_letter(r).letter() {
        Some(l) => (Word::empty(ctx), l),
        None => match cyclically_reduce(&nf) {
            CRStatus::InFactorConjugate { conjugator, letter } => (conjugator.inverse(), letter),
            CRStatus::Basic => unreachable!("basic maps are single letters"),
            CRStatus::CR { .. } => {
                return Err(Error::NotInFactor("cyclically reduced elements have infinite order".into()))
            }
        },
    };
    let (letters, class) = linearize_letter(&letter)?;
    let h = normalize(&Word::new(ctx, letters)?.concat(&prefix)).to_word();
    let target = Word::single(AffineMap::linear(class.matrix(ctx))?);
    if normalize(&h.concat(&word).concat(&h.inverse())) != normalize(&target) {
        return Err(Error::Undecided("linearizing conjugator failed verification".into()));
    }
    Ok((h, class))
}
