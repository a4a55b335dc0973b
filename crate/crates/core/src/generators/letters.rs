use std::fmt;

use super::matrix::Matrix2;
use super::polymap::PolyMap;
use crate::algebra::{BiPoly, FieldCtx, Scalar, UniPoly};
use crate::error::{same_field, Error, Result};

/// `x ↦ M x + t`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AffineMap {
    pub m: Matrix2,
    pub t: [Scalar; 2],
}

/// `(x, y) ↦ (α x + P(y), β y + v)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ElementaryMap {
    pub alpha: Scalar,
    pub beta: Scalar,
    pub v: Scalar,
    pub p: UniPoly,
}

/// `(x, y) ↦ (α x + γ y + u, β y + v)`: the maps that are both affine and
/// elementary.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BasicMap {
    pub alpha: Scalar,
    pub beta: Scalar,
    pub gamma: Scalar,
    pub u: Scalar,
    pub v: Scalar,
}

/// Affine coset representative `(x, y) ↦ (y, x + β y)`, matrix `(0 1; 1 β)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CosetRepA {
    pub beta: Scalar,
}

/// Elementary coset representative `(x, y) ↦ (x + y² P(y), y)` with `P ≠ 0`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CosetRepE {
    p: UniPoly,
}

impl AffineMap {
    pub fn new(m: Matrix2, t: [Scalar; 2]) -> Result<Self> {
        same_field(m.ctx(), t[0].ctx())?;
        same_field(m.ctx(), t[1].ctx())?;
        if m.det().is_zero() {
            return Err(Error::Singular);
        }
        Ok(AffineMap { m, t })
    }

    pub fn linear(m: Matrix2) -> Result<Self> {
        let z = Scalar::zero(m.ctx());
        AffineMap::new(m, [z.clone(), z])
    }

    pub fn translation(u: Scalar, v: Scalar) -> Result<Self> {
        AffineMap::new(Matrix2::identity(u.ctx()), [u, v])
    }

    pub fn identity(ctx: FieldCtx) -> Self {
        AffineMap::linear(Matrix2::identity(ctx)).expect("identity is invertible")
    }

    pub fn ctx(&self) -> FieldCtx {
        self.m.ctx()
    }

    /// `self ∘ o`, i.e. `(a, A)(b, B) = (a + A b, A B)`.
    pub fn compose(&self, o: &AffineMap) -> AffineMap {
        let at = self.m.apply(&o.t);
        AffineMap { m: self.m.mul(&o.m), t: [&self.t[0] + &at[0], &self.t[1] + &at[1]] }
    }

    /// `(−A⁻¹ a, A⁻¹)`.
    pub fn inverse(&self) -> AffineMap {
        let mi = self.m.inverse().expect("affine maps are invertible");
        let mt = mi.apply(&self.t);
        AffineMap { m: mi, t: [-&mt[0], -&mt[1]] }
    }

    pub fn to_polymap(&self) -> PolyMap {
        let ctx = self.ctx();
        let lin = |a: &Scalar, b: &Scalar, c: &Scalar| {
            &(&BiPoly::x(ctx).scale(a) + &BiPoly::y(ctx).scale(b)) + &BiPoly::constant(c.clone())
        };
        PolyMap::new(lin(&self.m.m11, &self.m.m12, &self.t[0]), lin(&self.m.m21, &self.m.m22, &self.t[1]))
            .expect("same field")
    }

    pub fn apply(&self, pt: &[Scalar; 2]) -> [Scalar; 2] {
        let mp = self.m.apply(pt);
        [&mp[0] + &self.t[0], &mp[1] + &self.t[1]]
    }

    pub fn is_identity(&self) -> bool {
        self.m.is_identity() && self.t[0].is_zero() && self.t[1].is_zero()
    }

    /// The map as a basic map when its matrix is upper triangular.
    pub fn as_basic(&self) -> Option<BasicMap> {
        self.m.m21.is_zero().then(|| BasicMap {
            alpha: self.m.m11.clone(),
            beta: self.m.m22.clone(),
            gamma: self.m.m12.clone(),
            u: self.t[0].clone(),
            v: self.t[1].clone(),
        })
    }
}

impl ElementaryMap {
    pub fn new(alpha: Scalar, beta: Scalar, v: Scalar, p: UniPoly) -> Result<Self> {
        let ctx = alpha.ctx();
        same_field(ctx, beta.ctx())?;
        same_field(ctx, v.ctx())?;
        same_field(ctx, p.ctx())?;
        if alpha.is_zero() || beta.is_zero() {
            return Err(Error::InvalidArgument("elementary map needs alpha and beta nonzero".into()));
        }
        Ok(ElementaryMap { alpha, beta, v, p })
    }

    /// `(x + P(y), y)`.
    pub fn shear(p: UniPoly) -> Self {
        let ctx = p.ctx();
        ElementaryMap { alpha: Scalar::one(ctx), beta: Scalar::one(ctx), v: Scalar::zero(ctx), p }
    }

    pub fn ctx(&self) -> FieldCtx {
        self.alpha.ctx()
    }

    /// `self ∘ o`.
    pub fn compose(&self, o: &ElementaryMap) -> ElementaryMap {
        let p = &o.p.scale(&self.alpha) + &self.p.compose_affine(&o.beta, &o.v);
        ElementaryMap {
            alpha: &self.alpha * &o.alpha,
            beta: &self.beta * &o.beta,
            v: &(&self.beta * &o.v) + &self.v,
            p,
        }
    }

    /// `(x/α − P((y − v)/β)/α, (y − v)/β)`.
    pub fn inverse(&self) -> ElementaryMap {
        let ai = self.alpha.inv().expect("alpha nonzero");
        let bi = self.beta.inv().expect("beta nonzero");
        let shift = -&(&self.v * &bi);
        ElementaryMap { p: self.p.compose_affine(&bi, &shift).scale(&-&ai), alpha: ai, beta: bi, v: shift }
    }

    pub fn to_polymap(&self) -> PolyMap {
        let ctx = self.ctx();
        let p = &BiPoly::x(ctx).scale(&self.alpha) + &BiPoly::from_unipoly_y(&self.p);
        let q = &BiPoly::y(ctx).scale(&self.beta) + &BiPoly::constant(self.v.clone());
        PolyMap::new(p, q).expect("same field")
    }

    pub fn apply(&self, pt: &[Scalar; 2]) -> [Scalar; 2] {
        [&(&self.alpha * &pt[0]) + &self.p.eval(&pt[1]), &(&self.beta * &pt[1]) + &self.v]
    }

    /// Degree of the map: `max(1, deg P)`.
    pub fn degree(&self) -> usize {
        self.p.degree().unwrap_or(0).max(1)
    }

    pub fn as_basic(&self) -> Option<BasicMap> {
        (self.p.degree().unwrap_or(0) <= 1).then(|| BasicMap {
            alpha: self.alpha.clone(),
            beta: self.beta.clone(),
            gamma: self.p.coeff(1),
            u: self.p.coeff(0),
            v: self.v.clone(),
        })
    }
}

impl BasicMap {
    pub fn new(alpha: Scalar, beta: Scalar, gamma: Scalar, u: Scalar, v: Scalar) -> Result<Self> {
        let ctx = alpha.ctx();
        for s in [&beta, &gamma, &u, &v] {
            same_field(ctx, s.ctx())?;
        }
        if alpha.is_zero() || beta.is_zero() {
            return Err(Error::InvalidArgument("basic map needs alpha and beta nonzero".into()));
        }
        Ok(BasicMap { alpha, beta, gamma, u, v })
    }

    pub fn from_ints(ctx: FieldCtx, alpha: i64, beta: i64, gamma: i64, u: i64, v: i64) -> Result<Self> {
        let s = |n| Scalar::from_int(ctx, n);
        BasicMap::new(s(alpha), s(beta), s(gamma), s(u), s(v))
    }

    pub fn identity(ctx: FieldCtx) -> Self {
        BasicMap::from_ints(ctx, 1, 1, 0, 0, 0).expect("identity")
    }

    pub fn ctx(&self) -> FieldCtx {
        self.alpha.ctx()
    }

    pub fn is_identity(&self) -> bool {
        self.alpha.is_one() && self.beta.is_one() && self.gamma.is_zero() && self.u.is_zero() && self.v.is_zero()
    }

    /// No translation part.
    pub fn is_linear(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    pub fn det(&self) -> Scalar {
        &self.alpha * &self.beta
    }

    pub fn to_affine(&self) -> AffineMap {
        let z = Scalar::zero(self.ctx());
        AffineMap {
            m: Matrix2 { m11: self.alpha.clone(), m12: self.gamma.clone(), m21: z, m22: self.beta.clone() },
            t: [self.u.clone(), self.v.clone()],
        }
    }

    pub fn to_elementary(&self) -> ElementaryMap {
        let p = UniPoly::from_coeffs(self.ctx(), vec![self.u.clone(), self.gamma.clone()]).expect("same field");
        ElementaryMap { alpha: self.alpha.clone(), beta: self.beta.clone(), v: self.v.clone(), p }
    }

    /// `self ∘ o`.
    pub fn compose(&self, o: &BasicMap) -> BasicMap {
        self.to_affine().compose(&o.to_affine()).as_basic().expect("triangular maps are closed")
    }

    pub fn inverse(&self) -> BasicMap {
        self.to_affine().inverse().as_basic().expect("triangular maps are closed")
    }

    pub fn to_polymap(&self) -> PolyMap {
        self.to_affine().to_polymap()
    }

    pub fn apply(&self, pt: &[Scalar; 2]) -> [Scalar; 2] {
        self.to_affine().apply(pt)
    }
}

impl CosetRepA {
    pub fn new(beta: Scalar) -> Self {
        CosetRepA { beta }
    }

    pub fn ctx(&self) -> FieldCtx {
        self.beta.ctx()
    }

    pub fn matrix(&self) -> Matrix2 {
        let ctx = self.ctx();
        Matrix2 { m11: Scalar::zero(ctx), m12: Scalar::one(ctx), m21: Scalar::one(ctx), m22: self.beta.clone() }
    }

    pub fn to_affine(&self) -> AffineMap {
        AffineMap::linear(self.matrix()).expect("determinant is -1")
    }

    pub fn to_polymap(&self) -> PolyMap {
        self.to_affine().to_polymap()
    }
}

impl CosetRepE {
    pub fn new(p: UniPoly) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(CosetRepE { p })
    }

    /// `P` in `x + y² P(y)`.
    pub fn poly(&self) -> &UniPoly {
        &self.p
    }

    /// The full x-component polynomial `y² P(y)`.
    pub fn full_poly(&self) -> UniPoly {
        &UniPoly::monomial(Scalar::one(self.ctx()), 2) * &self.p
    }

    pub fn ctx(&self) -> FieldCtx {
        self.p.ctx()
    }

    /// `2 + deg P`.
    pub fn degree(&self) -> usize {
        2 + self.p.degree().expect("nonzero")
    }

    pub fn to_elementary(&self) -> ElementaryMap {
        ElementaryMap::shear(self.full_poly())
    }

    pub fn to_polymap(&self) -> PolyMap {
        self.to_elementary().to_polymap()
    }
}

/// A generator letter: an element of the affine group, the elementary group,
/// or their intersection.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Letter {
    Affine(AffineMap),
    Elementary(ElementaryMap),
    Basic(BasicMap),
}

impl Letter {
    pub fn ctx(&self) -> FieldCtx {
        match self {
            Letter::Affine(a) => a.ctx(),
            Letter::Elementary(e) => e.ctx(),
            Letter::Basic(b) => b.ctx(),
        }
    }

    pub fn to_polymap(&self) -> PolyMap {
        match self {
            Letter::Affine(a) => a.to_polymap(),
            Letter::Elementary(e) => e.to_polymap(),
            Letter::Basic(b) => b.to_polymap(),
        }
    }

    pub fn inverse(&self) -> Letter {
        invert_letter(self)
    }

    pub fn apply(&self, pt: &[Scalar; 2]) -> [Scalar; 2] {
        match self {
            Letter::Affine(a) => a.apply(pt),
            Letter::Elementary(e) => e.apply(pt),
            Letter::Basic(b) => b.apply(pt),
        }
    }

    /// The letter as a basic map, if it lies in the intersection.
    pub fn as_basic(&self) -> Option<BasicMap> {
        match self {
            Letter::Affine(a) => a.as_basic(),
            Letter::Elementary(e) => e.as_basic(),
            Letter::Basic(b) => Some(b.clone()),
        }
    }
}

impl From<AffineMap> for Letter {
    fn from(a: AffineMap) -> Self {
        Letter::Affine(a)
    }
}

impl From<ElementaryMap> for Letter {
    fn from(e: ElementaryMap) -> Self {
        Letter::Elementary(e)
    }
}

impl From<BasicMap> for Letter {
    fn from(b: BasicMap) -> Self {
        Letter::Basic(b)
    }
}

impl From<CosetRepA> for Letter {
    fn from(a: CosetRepA) -> Self {
        Letter::Affine(a.to_affine())
    }
}

impl From<CosetRepE> for Letter {
    fn from(e: CosetRepE) -> Self {
        Letter::Elementary(e.to_elementary())
    }
}

/// Inverse of a generator letter, of the same kind.
pub fn invert_letter(g: &Letter) -> Letter {
    match g {
        Letter::Affine(a) => Letter::Affine(a.inverse()),
        Letter::Elementary(e) => Letter::Elementary(e.inverse()),
        Letter::Basic(b) => Letter::Basic(b.inverse()),
    }
}

/// Result of matching a map against the generator patterns.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LetterClass {
    Basic(BasicMap),
    Affine(AffineMap),
    Elementary(ElementaryMap),
    InI(CosetRepA),
    InJ(CosetRepE),
    None,
}

impl LetterClass {
    pub fn letter(&self) -> Option<Letter> {
        match self {
            LetterClass::Basic(b) => Some(Letter::Basic(b.clone())),
            LetterClass::Affine(a) => Some(Letter::Affine(a.clone())),
            LetterClass::Elementary(e) => Some(Letter::Elementary(e.clone())),
            LetterClass::InI(a) => Some(a.clone().into()),
            LetterClass::InJ(e) => Some(e.clone().into()),
            LetterClass::None => None,
        }
    }
}

fn affine_parts(f: &BiPoly) -> Option<[Scalar; 3]> {
    if f.terms().any(|(&(i, j), _)| i + j > 1) {
        return None;
    }
    Some([f.coeff(1, 0), f.coeff(0, 1), f.coeff(0, 0)])
}

/// Exact structural match of `f` against the generator shapes. Coset
/// representatives take precedence over the group they belong to, and the
/// intersection is reported as `Basic`.
pub fn classify_letter(f: &PolyMap) -> LetterClass {
    let ctx = f.ctx();
    if let (Some(a), Some(b)) = (affine_parts(f.p()), affine_parts(f.q())) {
        let [m11, m12, t1] = a;
        let [m21, m22, t2] = b;
        let m = Matrix2 { m11, m12, m21, m22 };
        let Ok(aff) = AffineMap::new(m, [t1, t2]) else {
            return LetterClass::None;
        };
        if let Some(basic) = aff.as_basic() {
            return LetterClass::Basic(basic);
        }
        let rep_shape = aff.m.m11.is_zero() && aff.m.m12.is_one() && aff.m.m21.is_one();
        if rep_shape && aff.t[0].is_zero() && aff.t[1].is_zero() {
            return LetterClass::InI(CosetRepA::new(aff.m.m22.clone()));
        }
        return LetterClass::Affine(aff);
    }
    // (α x + P(y), β y + v)
    let Some(q) = affine_parts(f.q()) else {
        return LetterClass::None;
    };
    let [qx, beta, v] = q;
    if !qx.is_zero() || beta.is_zero() {
        return LetterClass::None;
    }
    let alpha = f.p().coeff(1, 0);
    if alpha.is_zero() || f.p().terms().any(|(&(i, _), _)| i > 1) || f.p().terms().any(|(&(i, j), _)| i == 1 && j > 0) {
        return LetterClass::None;
    }
    let rest = f.p() - &BiPoly::x(ctx).scale(&alpha);
    let p = rest.to_unipoly_y().expect("x removed");
    let e = ElementaryMap::new(alpha, beta, v, p).expect("checked nonzero");
    let unit = e.alpha.is_one() && e.beta.is_one() && e.v.is_zero();
    if unit && e.p.coeff(0).is_zero() && e.p.coeff(1).is_zero() {
        let rep = CosetRepE::new(e.p.shift_down(2)).expect("degree at least 2");
        return LetterClass::InJ(rep);
    }
    LetterClass::Elementary(e)
}

impl fmt::Display for BasicMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B {} {} {} {} {}", self.alpha, self.beta, self.gamma, self.u, self.v)
    }
}

impl fmt::Display for CosetRepA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A {}", self.beta)
    }
}

impl fmt::Display for CosetRepE {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E {}", self.p)
    }
}

impl fmt::Display for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.m;
        write!(f, "AFF {} {} {} {} {} {}", m.m11, m.m12, m.m21, m.m22, self.t[0], self.t[1])
    }
}

impl fmt::Display for ElementaryMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ELE {} {} {} {}", self.alpha, self.beta, self.v, self.p)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Affine(a) => a.fmt(f),
            Letter::Elementary(e) => e.fmt(f),
            Letter::Basic(b) => b.fmt(f),
        }
    }
}
