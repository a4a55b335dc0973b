use super::SymWitness;
use crate::algebra::Scalar;
use crate::amalgam::{cyclically_reduce, decompose, normalize, CRStatus, NfLetter, NormalForm, Word};
use crate::conjugacy::solve::solve;
use crate::conjugacy::{equation_stages, SymBasic, NVARS};
use crate::error::{same_field, Error, Result};
use crate::generators::PolyMap;

const MAX_WITNESSES: usize = 16;

/// `s ∘ f = f ∘ s`, decided on normal forms.
pub fn commutes(f: &Word, s: &Word) -> bool {
    normalize(&s.concat(f)) == normalize(&f.concat(s))
}

/// `r ∘ f ∘ r⁻¹ ∘ f = 1`, decided on normal forms.
pub fn reverses(f: &Word, r: &Word) -> bool {
    let nf = normalize(&r.concat(f).concat(&r.inverse()).concat(f));
    nf.is_basic() && nf.b().is_identity()
}

fn words(f: &PolyMap, g: &PolyMap) -> Result<(Word, Word)> {
    same_field(f.ctx(), g.ctx())?;
    Ok((decompose(f)?, decompose(g)?))
}

/// Whether `s ∘ f ∘ s⁻¹ = f` exactly.
pub fn is_symmetry(f: &PolyMap, s: &PolyMap) -> Result<bool> {
    let (f, s) = words(f, s)?;
    Ok(commutes(&f, &s))
}

/// Whether `r ∘ f ∘ r⁻¹ = f⁻¹` exactly.
pub fn is_reversor(f: &PolyMap, r: &PolyMap) -> Result<bool> {
    let (f, r) = words(f, r)?;
    Ok(reverses(&f, &r))
}

/// A point reflection `(−x + u, −y + v)` commuting with `g`, if one exists.
///
/// The reflection is pushed through the letters of `g` symbolically in
/// `(u, v)`. The top coefficient equations of each elementary letter do not
/// involve `(u, v)` at all, so letters of the wrong parity are rejected
/// before any solving. Every returned witness is checked on normal forms,
/// and `(0, 0)` is preferred when several solutions verify.
pub fn involutory_symmetry_of_crnf(g: &NormalForm) -> Result<Option<SymWitness>> {
    if !g.is_crnf() {
        return Err(Error::NotCyclicallyReduced);
    }
    let ctx = g.ctx();
    ctx.require_odd_characteristic()?;
    let sym = SymBasic::point_reflection(ctx);
    let gw = g.to_word();
    let mut result = Ok(None);
    // Any witness satisfies the equations of every prefix, so once a prefix
    // has finitely many solutions, checking those candidates is enough.
    equation_stages(g, g, &sym, |eqs, last| {
        if eqs.is_empty() && !last {
            return false;
        }
        let out = solve(ctx, NVARS, eqs, &[false; NVARS], MAX_WITNESSES);
        if !last && !out.is_complete(&[3, 4], MAX_WITNESSES) {
            return false;
        }
        let mut found: Option<SymWitness> = None;
        for sol in &out.solutions {
            let w = SymWitness { u: sol[3].clone(), v: sol[4].clone() };
            if !commutes(&gw, &w.to_word()) {
                continue;
            }
            if w.u.is_zero() && w.v.is_zero() {
                found = Some(w);
                break;
            }
            found.get_or_insert(w);
        }
        result = match (found, out.undecided) {
            (Some(w), _) => Ok(Some(w)),
            (None, Some(why)) => Err(Error::Undecided(why)),
            (None, None) => Ok(None),
        };
        true
    })
    .expect("a form matches its own letters");
    result
}

/// The origin-fixing symmetric shape: every elementary letter odd (so its
/// degree is odd and at least 3) and the leading basic map linear.
pub fn symmetry_nf_check(g: &NormalForm) -> Result<bool> {
    if !g.is_crnf() {
        return Err(Error::NotCyclicallyReduced);
    }
    let b = g.b();
    if !b.u.is_zero() || !b.v.is_zero() {
        return Ok(false);
    }
    for l in g.letters() {
        if let NfLetter::E(e) = l {
            if !e.full_poly().is_odd()? {
                return Ok(false);
            }
        }
    }
    Ok(g.poly_degree()?.0.iter().all(|&n| n % 2 == 1 && n >= 3))
}

/// Necessary condition for reversibility: the reversed poly-degree is a
/// rotation of the poly-degree and the leading basic map has determinant ±1.
pub fn reversibility_necessary(g: &NormalForm) -> Result<bool> {
    if !g.is_crnf() {
        return Err(Error::NotCyclicallyReduced);
    }
    let pd = g.poly_degree()?;
    let det = g.b().det();
    Ok(pd.reversed().is_cyclic_shift_of(&pd) && (det.is_one() || (-det).is_one()))
}

/// Order of a reversor of a cyclically reduced element, by powering its
/// normal form. Such an order is always even, and 2 or 4 over Q.
pub(crate) fn reversor_order_nf(r: &NormalForm, cap: u64) -> Result<u64> {
    let mut acc = r.clone();
    let mut k = 1;
    while !(acc.is_basic() && acc.b().is_identity()) {
        if k >= cap {
            return Err(Error::CapExceeded(cap));
        }
        acc = acc.compose(r)?;
        k += 1;
    }
    if k % 2 == 1 {
        return Err(Error::TheoremViolation(format!("reversor of odd order {k}")));
    }
    if r.ctx().is_rationals() && k != 2 && k != 4 {
        return Err(Error::TheoremViolation(format!("reversor of order {k} over Q")));
    }
    Ok(k)
}

/// Exact order of the reversor `r` of `f`, computed up to `cap`.
pub fn reversor_order(f: &PolyMap, r: &PolyMap, cap: u64) -> Result<u64> {
    let (fw, rw) = words(f, r)?;
    if !matches!(cyclically_reduce(&normalize(&fw)), CRStatus::CR { .. }) {
        return Err(Error::NotCyclicallyReduced);
    }
    if !reverses(&fw, &rw) {
        return Err(Error::ReversorCheckFailed);
    }
    reversor_order_nf(&normalize(&rw), cap)
}

/// At a fixed point `a` of `f` with reversor `r`, `df(a)` and `df(r(a))`
/// must have reciprocal spectra: `det·det' = 1` and `tr = tr'/det'`.
pub fn fixed_point_spectrum_check(f: &PolyMap, r: &PolyMap, a: &(Scalar, Scalar)) -> Result<bool> {
    let (fw, rw) = words(f, r)?;
    if !reverses(&fw, &rw) {
        return Err(Error::ReversorCheckFailed);
    }
    if f.apply(a)? != *a {
        return Err(Error::NotFixedPoint);
    }
    let ra = r.apply(a)?;
    let ja = f.jacobian_at(a)?;
    let jb = f.jacobian_at(&ra)?;
    let det = |j: &[[Scalar; 2]; 2]| &(&j[0][0] * &j[1][1]) - &(&j[0][1] * &j[1][0]);
    let tr = |j: &[[Scalar; 2]; 2]| &j[0][0] + &j[1][1];
    let (da, db) = (det(&ja), det(&jb));
    if db.is_zero() {
        return Ok(false);
    }
    Ok((&da * &db).is_one() && &tr(&ja) * &db == tr(&jb))
}
