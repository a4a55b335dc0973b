//! Seeded sampling of scalars, letters, words and normal forms, for test
//! corpora and experiments. Everything takes a caller-supplied RNG so runs are
//! reproducible.

use num_bigint::BigInt;
use rand::Rng;

use crate::algebra::{FieldCtx, Scalar, UniPoly};
use crate::amalgam::{NfLetter, NormalForm, Word};
use crate::generators::{AffineMap, BasicMap, CosetRepA, CosetRepE, ElementaryMap, Letter, Matrix2};
use crate::symmetry::{InvolutoryForm, InvolutoryParams, Order4Params};

/// Over Q: `n/d` with `|n| <= height`, `1 <= d <= height`. Over F_p: uniform.
pub fn scalar<R: Rng + ?Sized>(rng: &mut R, ctx: FieldCtx, height: i64) -> Scalar {
    match ctx.modulus() {
        Some(p) => Scalar::from_residue(ctx, rng.gen_range(0..p)),
        None => {
            let h = height.max(1);
            let n = rng.gen_range(-h..=h);
            let d = rng.gen_range(1..=h);
            Scalar::from_fraction(ctx, &BigInt::from(n), &BigInt::from(d)).expect("nonzero denominator")
        }
    }
}

pub fn nonzero_scalar<R: Rng + ?Sized>(rng: &mut R, ctx: FieldCtx, height: i64) -> Scalar {
    loop {
        let s = scalar(rng, ctx, height);
        if !s.is_zero() {
            return s;
        }
    }
}

/// Small integer, often zero; keeps expansions sparse.
pub fn small_scalar<R: Rng + ?Sized>(rng: &mut R, ctx: FieldCtx, height: i64) -> Scalar {
    if rng.gen_bool(0.4) {
        Scalar::zero(ctx)
    } else {
        scalar(rng, ctx, height)
    }
}

/// Random polynomial of degree exactly `deg` (leading coefficient nonzero).
pub fn unipoly<R: Rng + ?Sized>(rng: &mut R, ctx: FieldCtx, deg: usize, height: i64) -> UniPoly {
    let mut coeffs: Vec<Scalar> = (0..deg).map(|_| small_scalar(rng, ctx, height)).collect();
    coeffs.push(nonzero_scalar(rng, ctx, height));
    UniPoly::from_coeffs(ctx, coeffs).expect("same field")
}

pub fn basic<R: Rng + ?Sized>(rng: &mut R, ctx: FieldCtx, height: i64) -> BasicMap {
    BasicMap::new(
        nonzero_scalar(rng, ctx, height),
        nonzero_scalar(rng, ctx, height),
        small_scalar(rng, ctx, height),
        small_scalar(rng, ctx, height),
        small_scalar(rng, ctx, height),
    )
    .expect("alpha, beta nonzero")
}

/// Invertible affine map with nonzero lower-left entry (so not basic).
pub fn affine<R: Rng + ?Sized>(rng: &mut R, ctx: FieldCtx, height: i64) -> AffineMap {
    loop {
        let m = Matrix2 {
            m11: small_scalar(rng, ctx, height),
            m12: small_scalar(rng, ctx, height),
            m21: nonzero_scalar(rng, ctx, height),
            m22: small_scalar(rng, ctx, height),
        };
        let t = [small_scalar(rng, ctx, height), small_scalar(rng, ctx, height)];
        if let Ok(a) = AffineMap::new(m, t) {
            return a;
        }
    }
}

/// Elementary map whose polynomial has degree in `2..=max_deg`.
pub fn elementary<R: Rng + ?Sized>(rng: &mut R, ctx: FieldCtx, max_deg: usize, height: i64) -> ElementaryMap {
    let deg = rng.gen_range(2..=max_deg.max(2));
    ElementaryMap::new(
        nonzero_scalar(rng, ctx, height),
        nonzero_scalar(rng, ctx, height),
        small_scalar(rng, ctx, height),
        unipoly(rng, ctx, deg, height),
    )
    .expect("alpha, beta nonzero")
}

pub fn letter<R: Rng + ?Sized>(rng: &mut R, ctx: FieldCtx, max_deg: usize, height: i64) -> Letter {
    match rng.gen_range(0..5) {
        0 => Letter::Basic(basic(rng, ctx, height)),
        1 | 2 => Letter::Affine(affine(rng, ctx, height)),
        _ => Letter::Elementary(elementary(rng, ctx, max_deg, height)),
    }
}

/// Word of `1..=max_len` letters of arbitrary kinds.
pub fn word<R: Rng + ?Sized>(rng: &mut R, ctx: FieldCtx, max_len: usize, max_deg: usize, height: i64) -> Word {
    let n = rng.gen_range(1..=max_len.max(1));
    let letters = (0..n).map(|_| letter(rng, ctx, max_deg, height)).collect();
    Word::new(ctx, letters).expect("same field")
}

pub fn rep_a<R: Rng + ?Sized>(rng: &mut R, ctx: FieldCtx, height: i64) -> CosetRepA {
    CosetRepA::new(small_scalar(rng, ctx, height))
}

/// Elementary representative of degree in `2..=max_deg`.
pub fn rep_e<R: Rng + ?Sized>(rng: &mut R, ctx: FieldCtx, max_deg: usize, height: i64) -> CosetRepE {
    let deg = rng.gen_range(2..=max_deg.max(2));
    CosetRepE::new(unipoly(rng, ctx, deg - 2, height)).expect("nonzero")
}

/// Cyclically reduced normal form with `pairs` affine/elementary pairs.
pub fn crnf<R: Rng + ?Sized>(rng: &mut R, ctx: FieldCtx, pairs: usize, max_deg: usize, height: i64) -> NormalForm {
    let start_affine = rng.gen_bool(0.5);
    let mut letters = Vec::with_capacity(2 * pairs);
    for i in 0..2 * pairs.max(1) {
        if (i % 2 == 0) == start_affine {
            letters.push(NfLetter::A(rep_a(rng, ctx, height)));
        } else {
            letters.push(NfLetter::E(rep_e(rng, ctx, max_deg, height)));
        }
    }
    NormalForm::from_parts(basic(rng, ctx, height), letters).expect("alternating")
}

pub fn point<R: Rng + ?Sized>(rng: &mut R, ctx: FieldCtx, height: i64) -> [Scalar; 2] {
    [scalar(rng, ctx, height), scalar(rng, ctx, height)]
}

/// Random involution in one factor: `(−x + u, −y + v)`, a conjugate of the
/// swap with a matching translation, or an elementary involution.
pub fn involution<R: Rng + ?Sized>(rng: &mut R, ctx: FieldCtx, max_deg: usize, height: i64) -> Letter {
    let one = Scalar::one(ctx);
    match rng.gen_range(0..4) {
        0 => Letter::Affine(
            AffineMap::new(Matrix2::scalar(-one), [scalar(rng, ctx, height), scalar(rng, ctx, height)])
                .expect("invertible"),
        ),
        1 => {
            let c = loop {
                let c = Matrix2 {
                    m11: scalar(rng, ctx, height),
                    m12: scalar(rng, ctx, height),
                    m21: scalar(rng, ctx, height),
                    m22: scalar(rng, ctx, height),
                };
                if !c.det().is_zero() {
                    break c;
                }
            };
            let m = c.mul(&Matrix2::swap(ctx)).mul(&c.inverse().expect("invertible"));
            let s = point(rng, ctx, height);
            let t = Matrix2::identity(ctx).sub(&m).apply(&s);
            Letter::Affine(AffineMap::new(m, t).expect("invertible"))
        }
        _ => Letter::Elementary(elementary_involution(rng, ctx, max_deg, height)),
    }
}

/// Random non-basic elementary involution: `(−x + P(y), y)` or
/// `(±x + P(y), −y + v)` with `P` of the parity that makes it square to one.
pub fn elementary_involution<R: Rng + ?Sized>(
    rng: &mut R,
    ctx: FieldCtx,
    max_deg: usize,
    height: i64,
) -> ElementaryMap {
    let one = Scalar::one(ctx);
    let zero = Scalar::zero(ctx);
    loop {
        let deg = rng.gen_range(2..=max_deg.max(2));
        let e = if rng.gen_bool(0.5) {
            ElementaryMap::new(-one.clone(), one.clone(), zero.clone(), unipoly(rng, ctx, deg, height))
                .expect("nonzero")
        } else {
            let alpha_one = rng.gen_bool(0.5);
            // P' odd for α = 1, even for α = −1, then P(y) = P'(y − v/2).
            let coeffs: Vec<Scalar> = (0..=deg)
                .map(|k| if (k % 2 == 1) == alpha_one { scalar(rng, ctx, height) } else { zero.clone() })
                .collect();
            let centred = UniPoly::from_coeffs(ctx, coeffs).expect("same field");
            let v = scalar(rng, ctx, height);
            let half = Scalar::from_int(ctx, 2).inv().expect("odd characteristic");
            let p = centred.compose_affine(&one, &-(&v * &half));
            let alpha = if alpha_one { one.clone() } else { -one.clone() };
            ElementaryMap::new(alpha, -one.clone(), v, p).expect("nonzero")
        };
        if e.as_basic().is_none() {
            return e;
        }
    }
}

/// Alternating letters, `count` of them, the first affine or elementary.
fn alternating<R: Rng + ?Sized>(
    rng: &mut R,
    ctx: FieldCtx,
    count: usize,
    first_affine: bool,
    mut elementary: impl FnMut(&mut R) -> CosetRepE,
    height: i64,
) -> Vec<NfLetter> {
    (0..count)
        .map(|i| {
            if (i % 2 == 0) == first_affine {
                NfLetter::A(rep_a(rng, ctx, height))
            } else {
                NfLetter::E(elementary(rng))
            }
        })
        .collect()
}

/// Random input for the involutory reversible-form builder, with up to
/// `pairs + 1` letters in `h`.
pub fn involutory_params<R: Rng + ?Sized>(
    rng: &mut R,
    ctx: FieldCtx,
    pairs: usize,
    max_deg: usize,
    height: i64,
) -> InvolutoryParams {
    let k = rng.gen_range(0..=pairs);
    let form =
        [InvolutoryForm::Swap, InvolutoryForm::ElementaryCentre, InvolutoryForm::ElementaryBoth][rng.gen_range(0..3)];
    let (count, first_affine) = match form {
        InvolutoryForm::Swap => (2 * k + 1, false),
        InvolutoryForm::ElementaryCentre => (2 * k + 2, false),
        InvolutoryForm::ElementaryBoth => (2 * k + 1, true),
    };
    let letters = alternating(rng, ctx, count, first_affine, |r| rep_e(r, ctx, max_deg, height), height);
    let centre = (form != InvolutoryForm::Swap).then(|| elementary_involution(rng, ctx, max_deg, height));
    let outer = (form == InvolutoryForm::ElementaryBoth).then(|| elementary_involution(rng, ctx, max_deg, height));
    InvolutoryParams { form, b: basic(rng, ctx, height), letters, centre, outer }
}

/// Elementary representative whose full polynomial `y² P(y)` is odd.
pub fn odd_rep_e<R: Rng + ?Sized>(rng: &mut R, ctx: FieldCtx, max_deg: usize, height: i64) -> CosetRepE {
    loop {
        let coeffs: Vec<Scalar> = (0..max_deg.max(3) - 1)
            .map(|k| if k % 2 == 1 { scalar(rng, ctx, height) } else { Scalar::zero(ctx) })
            .collect();
        if let Ok(e) = CosetRepE::new(UniPoly::from_coeffs(ctx, coeffs).expect("same field")) {
            return e;
        }
    }
}

/// Random input for the order-4 reversible-form builder.
pub fn order4_params<R: Rng + ?Sized>(
    rng: &mut R,
    ctx: FieldCtx,
    pairs: usize,
    max_deg: usize,
    height: i64,
) -> Order4Params {
    let count = 2 * rng.gen_range(0..=pairs) + 1;
    let letters = alternating(rng, ctx, count, false, |r| odd_rep_e(r, ctx, max_deg, height), height);
    Order4Params { letters, alpha: scalar(rng, ctx, height), gamma: nonzero_scalar(rng, ctx, height) }
}
