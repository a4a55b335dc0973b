use super::normal_form::normalize;
use super::word::Word;
use crate::algebra::{BiPoly, Scalar, UniPoly};
use crate::error::{Error, Result};
use crate::generators::{jacobian_det, AffineMap, ElementaryMap, Letter, Matrix2, PolyMap};

/// If `lead_hi = c · lead_lo^k` for some scalar `c`, returns `c`.
fn power_ratio(lead_hi: &BiPoly, lead_lo: &BiPoly, k: u32) -> Option<Scalar> {
    let pk = lead_lo.pow(k);
    let (e, top) = pk.canonical_terms().into_iter().next()?;
    let c = &lead_hi.coeff(e.0, e.1) / &top;
    (pk.scale(&c) == *lead_hi).then_some(c)
}

/// Raw degree-reduction: a word of affine and elementary letters whose
/// product is `f`, not yet in normal form.
///
/// Each step compares the leading forms of the two components. When the
/// higher one is `c` times a power of the lower one, subtracting `c` times
/// that power of the lower component strictly lowers `deg P + deg Q`. The
/// step is recorded as a letter on the left; the loop ends at an affine map.
pub fn decompose_raw(f: &PolyMap) -> Result<Word> {
    let ctx = f.ctx();
    let jac = jacobian_det(f);
    match jac.as_constant() {
        Some(c) if !c.is_zero() => {}
        Some(_) => return Err(Error::NotAnAutomorphism("Jacobian determinant is zero".into())),
        None => return Err(Error::NotAnAutomorphism(format!("Jacobian determinant {jac} is not constant"))),
    }
    let swap = Letter::Affine(AffineMap::linear(Matrix2::swap(ctx)).expect("invertible"));
    let mut left: Vec<Letter> = Vec::new();
    let mut cur = f.clone();
    loop {
        let dp = cur.p().total_degree().unwrap_or(0);
        let dq = cur.q().total_degree().unwrap_or(0);
        if dp <= 1 && dq <= 1 {
            break;
        }
        if dp == 0 || dq == 0 {
            return Err(Error::NotAnAutomorphism("a component is constant".into()));
        }
        let lp = cur.p().leading_form()?;
        let lq = cur.q().leading_form()?;
        if dq >= dp {
            let k = dq / dp;
            let c = dq
                .is_multiple_of(dp)
                .then(|| power_ratio(&lq, &lp, k))
                .flatten()
                .ok_or_else(|| Error::NotAnAutomorphism("leading forms are not related by a power".into()))?;
            // f = (x, y + c x^k) ∘ (P, Q − c P^k)
            let nq = cur.q() - &cur.p().pow(k).scale(&c);
            cur = PolyMap::new(cur.p().clone(), nq)?;
            if k == 1 {
                let m = Matrix2::new(Scalar::one(ctx), Scalar::zero(ctx), c, Scalar::one(ctx))?;
                left.push(Letter::Affine(AffineMap::linear(m)?));
            } else {
                // (x, y + c x^k) = T ∘ (x + c y^k, y) ∘ T
                let e = ElementaryMap::shear(UniPoly::monomial(c, k as usize));
                left.push(swap.clone());
                left.push(Letter::Elementary(e));
                left.push(swap.clone());
            }
        } else {
            let k = dp / dq;
            let c = dp
                .is_multiple_of(dq)
                .then(|| power_ratio(&lp, &lq, k))
                .flatten()
                .ok_or_else(|| Error::NotAnAutomorphism("leading forms are not related by a power".into()))?;
            // f = (x + c y^k, y) ∘ (P − c Q^k, Q)
            let np = cur.p() - &cur.q().pow(k).scale(&c);
            cur = PolyMap::new(np, cur.q().clone())?;
            left.push(Letter::Elementary(ElementaryMap::shear(UniPoly::monomial(c, k as usize))));
        }
    }
    let a = |f: &BiPoly| [f.coeff(1, 0), f.coeff(0, 1), f.coeff(0, 0)];
    let [m11, m12, t1] = a(cur.p());
    let [m21, m22, t2] = a(cur.q());
    let aff = AffineMap::new(Matrix2::new(m11, m12, m21, m22)?, [t1, t2])
        .map_err(|_| Error::NotAnAutomorphism("linear part is singular".into()))?;
    if !aff.is_identity() {
        left.push(Letter::Affine(aff));
    }
    Word::new(ctx, left)
}

/// Decomposes an automorphism into generator letters, returned in normal-form
/// order: the leading basic map (omitted when trivial) followed by the
/// alternating coset representatives.
pub fn decompose(f: &PolyMap) -> Result<Word> {
    Ok(normalize(&decompose_raw(f)?).to_word())
}
