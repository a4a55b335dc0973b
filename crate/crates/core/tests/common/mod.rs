//! Oracles shared by the integration tests. None of them go through normal
//! forms: maps are compared by evaluation or by expansion.
#![allow(dead_code)]

use ga2::algebra::{FieldCtx, Scalar, UniPoly};
use ga2::amalgam::Word;
use ga2::generators::{AffineMap, BasicMap, ElementaryMap, Letter, Matrix2};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Prime used to reduce rational words before evaluating them.
pub const CHECK_PRIME: u64 = 2_147_483_647;

pub fn cat(words: &[&Word]) -> Word {
    let mut w = Word::empty(words[0].ctx());
    for x in words {
        w = w.concat(x);
    }
    w
}

fn reduce(s: &Scalar, ctx: FieldCtx) -> Scalar {
    let r = s.as_rational().expect("rational scalar");
    Scalar::from_fraction(ctx, r.numer(), r.denom()).expect("denominator prime to the check prime")
}

fn reduce_poly(p: &UniPoly, ctx: FieldCtx) -> UniPoly {
    UniPoly::from_coeffs(ctx, p.coeffs().iter().map(|c| reduce(c, ctx)).collect()).unwrap()
}

/// The same word with every coefficient reduced modulo `CHECK_PRIME`.
pub fn reduce_word(w: &Word) -> Word {
    let ctx = FieldCtx::prime(CHECK_PRIME).unwrap();
    let letters = w
        .letters()
        .iter()
        .map(|l| match l {
            Letter::Basic(b) => Letter::Basic(
                BasicMap::new(
                    reduce(&b.alpha, ctx),
                    reduce(&b.beta, ctx),
                    reduce(&b.gamma, ctx),
                    reduce(&b.u, ctx),
                    reduce(&b.v, ctx),
                )
                .unwrap(),
            ),
            Letter::Affine(a) => {
                let m = Matrix2::new(
                    reduce(&a.m.m11, ctx),
                    reduce(&a.m.m12, ctx),
                    reduce(&a.m.m21, ctx),
                    reduce(&a.m.m22, ctx),
                )
                .unwrap();
                Letter::Affine(AffineMap::new(m, [reduce(&a.t[0], ctx), reduce(&a.t[1], ctx)]).unwrap())
            }
            Letter::Elementary(e) => Letter::Elementary(
                ElementaryMap::new(
                    reduce(&e.alpha, ctx),
                    reduce(&e.beta, ctx),
                    reduce(&e.v, ctx),
                    reduce_poly(&e.p, ctx),
                )
                .unwrap(),
            ),
        })
        .collect();
    Word::new(ctx, letters).unwrap()
}

/// Equality of two words as maps. Over F_p the words are expanded exactly.
/// Over Q both are reduced modulo a large prime and evaluated at random
/// points; a nonzero difference of degree d survives each point with
/// probability at least 1 − d/p.
pub fn same_map(a: &Word, b: &Word) -> bool {
    if !a.ctx().is_rationals() {
        return a.to_polymap() == b.to_polymap();
    }
    let (a, b) = (reduce_word(a), reduce_word(b));
    let ctx = a.ctx();
    let mut rng = StdRng::seed_from_u64(99);
    (0..8).all(|_| {
        let pt = [
            Scalar::from_residue(ctx, rng.gen_range(0..CHECK_PRIME)),
            Scalar::from_residue(ctx, rng.gen_range(0..CHECK_PRIME)),
        ];
        a.apply(&pt) == b.apply(&pt)
    })
}

/// `s ∘ f = f ∘ s` as maps.
pub fn commutes_as_maps(f: &Word, s: &Word) -> bool {
    same_map(&cat(&[s, f]), &cat(&[f, s]))
}

/// `r ∘ f = f⁻¹ ∘ r` as maps.
pub fn reverses_as_maps(f: &Word, r: &Word) -> bool {
    same_map(&cat(&[r, f]), &cat(&[&f.inverse(), r]))
}

/// Jacobian determinant of a word: each letter has a constant determinant.
pub fn word_det(w: &Word) -> Scalar {
    let mut d = Scalar::one(w.ctx());
    for l in w.letters() {
        let x = match l {
            Letter::Basic(b) => b.det(),
            Letter::Affine(a) => a.m.det(),
            Letter::Elementary(e) => &e.alpha * &e.beta,
        };
        d = &d * &x;
    }
    d
}
