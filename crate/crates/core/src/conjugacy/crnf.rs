use super::mpoly::MPoly;
use super::solve::solve;
use crate::algebra::{FieldCtx, Scalar, UniPoly};
use crate::amalgam::{normalize, NfLetter, NormalForm, Word};
use crate::error::{same_field, Error, Result};
use crate::generators::{BasicMap, Letter};

pub(crate) const NVARS: usize = 5;
const MAX_CANDIDATES: usize = 16;

/// Necessary condition for conjugacy of two cyclically reduced forms: equal
/// length and poly-degrees that agree up to rotation.
pub fn crnf_conjugacy_necessary(g1: &NormalForm, g2: &NormalForm) -> Result<bool> {
    if !g1.is_crnf() || !g2.is_crnf() {
        return Err(Error::NotCyclicallyReduced);
    }
    same_field(g1.ctx(), g2.ctx())?;
    Ok(g1.length() == g2.length() && g1.poly_degree()?.is_cyclic_shift_of(&g2.poly_degree()?))
}

/// A basic map with symbolic parameters `(α, β, γ, u, v)`.
#[derive(Clone, Debug)]
pub(crate) struct SymBasic {
    alpha: MPoly,
    beta: MPoly,
    gamma: MPoly,
    u: MPoly,
    v: MPoly,
}

impl SymBasic {
    fn unknowns(ctx: FieldCtx) -> Self {
        let z = |i| MPoly::var(ctx, NVARS, i);
        SymBasic { alpha: z(0), beta: z(1), gamma: z(2), u: z(3), v: z(4) }
    }

    /// `(−x + u, −y + v)` with `u`, `v` the unknowns numbered 3 and 4.
    pub(crate) fn point_reflection(ctx: FieldCtx) -> Self {
        let m1 = MPoly::constant(-Scalar::one(ctx), NVARS);
        SymBasic {
            alpha: m1.clone(),
            beta: m1,
            gamma: MPoly::zero(ctx, NVARS),
            u: MPoly::var(ctx, NVARS, 3),
            v: MPoly::var(ctx, NVARS, 4),
        }
    }

    fn known(b: &BasicMap) -> Self {
        let c = |s: &Scalar| MPoly::constant(s.clone(), NVARS);
        SymBasic { alpha: c(&b.alpha), beta: c(&b.beta), gamma: c(&b.gamma), u: c(&b.u), v: c(&b.v) }
    }

    fn compose(&self, o: &SymBasic) -> SymBasic {
        SymBasic {
            alpha: self.alpha.mul(&o.alpha),
            beta: self.beta.mul(&o.beta),
            gamma: self.alpha.mul(&o.gamma).add(&self.gamma.mul(&o.beta)),
            u: self.alpha.mul(&o.u).add(&self.gamma.mul(&o.v)).add(&self.u),
            v: self.beta.mul(&o.v).add(&self.v),
        }
    }

    fn equations_with(&self, o: &SymBasic) -> [MPoly; 5] {
        [self.alpha.sub(&o.alpha), self.beta.sub(&o.beta), self.gamma.sub(&o.gamma), self.u.sub(&o.u), self.v.sub(&o.v)]
    }
}

fn binomial(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// Coefficients of `F(βy + v)` as polynomials in the symbolic `β`, `v`.
fn substitute_affine(f: &UniPoly, beta: &MPoly, v: &MPoly) -> Vec<MPoly> {
    let ctx = f.ctx();
    let deg = f.degree().unwrap_or(0);
    let mut out = vec![MPoly::zero(ctx, NVARS); deg + 1];
    let bpow: Vec<MPoly> = (0..=deg as u32).map(|k| beta.pow(k)).collect();
    let vpow: Vec<MPoly> = (0..=deg as u32).map(|k| v.pow(k)).collect();
    for (k, fk) in f.coeffs().iter().enumerate() {
        if fk.is_zero() {
            continue;
        }
        for j in 0..=k {
            let c = fk * &Scalar::from_int(ctx, binomial(k, j) as i64);
            let term = bpow[j].mul(&vpow[k - j]).scale(&c);
            out[j] = out[j].add(&term);
        }
    }
    out
}

/// Pushes `letter ∘ cur` into the form `next ∘ target`, recording the
/// equations that make the representative equal `target`.
fn push_through(letter: &NfLetter, target: &NfLetter, cur: &SymBasic, eqs: &mut Vec<MPoly>) -> Option<SymBasic> {
    match (letter, target) {
        (NfLetter::A(d), NfLetter::A(t)) => {
            // (0 1; 1 δ)(α γ; 0 β) = (0 β; α γ+δβ), representative (γ+δβ)/α
            let delta = &d.beta;
            eqs.push(cur.gamma.add(&cur.beta.scale(delta)).sub(&cur.alpha.scale(&t.beta)));
            Some(SymBasic {
                alpha: cur.beta.clone(),
                beta: cur.alpha.clone(),
                gamma: MPoly::zero(delta.ctx(), NVARS),
                u: cur.v.clone(),
                v: cur.u.add(&cur.v.scale(delta)),
            })
        }
        (NfLetter::E(d), NfLetter::E(t)) => {
            let s = substitute_affine(&d.full_poly(), &cur.beta, &cur.v);
            let target = t.poly();
            let top = s.len().max(target.coeffs().len() + 2);
            for j in 2..top {
                let sj = s.get(j).cloned().unwrap_or_else(|| MPoly::zero(cur.alpha.ctx(), NVARS));
                eqs.push(sj.sub(&cur.alpha.scale(&target.coeff(j - 2))));
            }
            let get = |j: usize| s.get(j).cloned().unwrap_or_else(|| MPoly::zero(cur.alpha.ctx(), NVARS));
            Some(SymBasic {
                alpha: cur.alpha.clone(),
                beta: cur.beta.clone(),
                gamma: cur.gamma.add(&get(1)),
                u: cur.u.add(&get(0)),
                v: cur.v.clone(),
            })
        }
        _ => None,
    }
}

/// Equations in the unknowns of the symbolic basic `b` expressing
/// `b ∘ g1 = g2 ∘ b`, or `None` when the letter patterns cannot match.
pub(crate) fn basic_conjugacy_equations(g1: &NormalForm, g2: &NormalForm, b: &SymBasic) -> Option<Vec<MPoly>> {
    let mut all = None;
    equation_stages(g1, g2, b, |eqs, last| {
        if last {
            all = Some(eqs.to_vec());
        }
        last
    })?;
    all
}

/// Builds the same equations letter by letter from the right, calling
/// `visit(equations so far, is_final)` after each letter; stops early when
/// `visit` returns true. `None` when the letter patterns cannot match.
pub(crate) fn equation_stages(
    g1: &NormalForm,
    g2: &NormalForm,
    b: &SymBasic,
    mut visit: impl FnMut(&[MPoly], bool) -> bool,
) -> Option<()> {
    let mut cur = b.clone();
    let mut eqs = Vec::new();
    for (d, c) in g2.letters().iter().zip(g1.letters()).rev() {
        cur = push_through(d, c, &cur, &mut eqs)?;
        if visit(&eqs, false) {
            return Some(());
        }
    }
    let lhs = b.compose(&SymBasic::known(g1.b()));
    let rhs = SymBasic::known(g2.b()).compose(&cur);
    eqs.extend(lhs.equations_with(&rhs));
    visit(&eqs, true);
    Some(())
}

/// Rotation of `g` obtained by conjugating with its rightmost `k` letters;
/// returns the rotated form and the conjugating word `w` (`w ∘ g ∘ w⁻¹`).
fn cyclic_shift(g: &NormalForm, k: usize) -> (NormalForm, Word) {
    let n = g.length();
    let letters: Vec<Letter> = g.letters()[n - k..].iter().map(NfLetter::to_letter).collect();
    let w = Word::new(g.ctx(), letters).expect("same field");
    let shifted = normalize(&w.concat(&g.to_word()).concat(&w.inverse()));
    (shifted, w)
}

/// Whether `h ∘ g1 ∘ h⁻¹ = g2`, checked as `h ∘ g1 = g2 ∘ h` on polynomial maps.
fn verify_conjugator(h: &Word, g1: &NormalForm, g2: &NormalForm) -> bool {
    h.concat(&g1.to_word()).to_polymap() == g2.to_word().concat(h).to_polymap()
}

/// Finds `h` with `h ∘ g1 ∘ h⁻¹ = g2` for cyclically reduced `g1`, `g2`: each
/// rotation of `g1` is matched letter by letter against `g2` with a symbolic
/// basic conjugator, and the resulting equations are solved exactly.
/// Rotations are tried in order; the first verified conjugator is returned.
pub fn crnf_conjugate(g1: &NormalForm, g2: &NormalForm) -> Result<Option<Word>> {
    if !crnf_conjugacy_necessary(g1, g2)? {
        return Ok(None);
    }
    let ctx = g1.ctx();
    let pd2 = g2.poly_degree()?;
    let mut undecided = None;
    for k in 0..g1.length() {
        let (shifted, w) = cyclic_shift(g1, k);
        if shifted.leading_a_present() != g2.leading_a_present() || shifted.poly_degree()? != pd2 {
            continue;
        }
        let Some(eqs) = basic_conjugacy_equations(&shifted, g2, &SymBasic::unknowns(ctx)) else { continue };
        let out = solve(ctx, NVARS, &eqs, &[true, true, false, false, false], MAX_CANDIDATES);
        for sol in out.solutions {
            let [a, b, c, u, v]: [Scalar; 5] = sol.try_into().expect("five unknowns");
            let basic = BasicMap::new(a, b, c, u, v)?;
            let mut h = Word::single(basic);
            h = h.concat(&w);
            if verify_conjugator(&h, g1, g2) {
                return Ok(Some(normalize(&h).to_word()));
            }
        }
        if let Some(why) = out.undecided {
            undecided.get_or_insert(format!("rotation {k}: {why}"));
        }
    }
    match undecided {
        Some(why) => Err(Error::Undecided(why)),
        None => Ok(None),
    }
}
