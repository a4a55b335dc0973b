use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{FieldCtx, Scalar};
use super::unipoly::{monomial_text, render_terms, UniPoly};
use crate::error::{same_field, Error, Result};

/// Sparse polynomial in x and y. Keys are exponent pairs `(i, j)` for `x^i y^j`;
/// zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BiPoly {
    ctx: FieldCtx,
    terms: BTreeMap<(u32, u32), Scalar>,
}

impl BiPoly {
    pub fn zero(ctx: FieldCtx) -> Self {
        BiPoly { ctx, terms: BTreeMap::new() }
    }

    pub fn constant(c: Scalar) -> Self {
        BiPoly::monomial(c, 0, 0)
    }

    pub fn one(ctx: FieldCtx) -> Self {
        BiPoly::constant(Scalar::one(ctx))
    }

    /// `c * x^i * y^j`.
    pub fn monomial(c: Scalar, i: u32, j: u32) -> Self {
        let ctx = c.ctx();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        BiPoly { ctx, terms }
    }

    pub fn x(ctx: FieldCtx) -> Self {
        BiPoly::monomial(Scalar::one(ctx), 1, 0)
    }

    pub fn y(ctx: FieldCtx) -> Self {
        BiPoly::monomial(Scalar::one(ctx), 0, 1)
    }

    pub fn from_terms<I>(ctx: FieldCtx, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((u32, u32), Scalar)>,
    {
        let mut p = BiPoly::zero(ctx);
        for (e, c) in terms {
            same_field(ctx, c.ctx())?;
            p.add_term(e, &c);
        }
        Ok(p)
    }

    /// Lifts a univariate polynomial in y.
    pub fn from_unipoly_y(p: &UniPoly) -> Self {
        let terms = p.coeffs().iter().enumerate().map(|(k, c)| ((0, k as u32), c.clone()));
        BiPoly::from_terms(p.ctx(), terms).expect("same field")
    }

    /// Lifts a univariate polynomial in x.
    pub fn from_unipoly_x(p: &UniPoly) -> Self {
        let terms = p.coeffs().iter().enumerate().map(|(k, c)| ((k as u32, 0), c.clone()));
        BiPoly::from_terms(p.ctx(), terms).expect("same field")
    }

    pub(crate) fn add_term(&mut self, e: (u32, u32), c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(old) => {
                let s = &*old + c;
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Scalar {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(|| Scalar::zero(self.ctx))
    }

    /// The value if the polynomial is constant (zero included).
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero(self.ctx)),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Result<u32> {
        total_degree(self)
    }

    pub fn degree_in_x(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.0).max()
    }

    pub fn degree_in_y(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.1).max()
    }

    /// Coefficients as a polynomial in y when x does not occur.
    pub fn to_unipoly_y(&self) -> Option<UniPoly> {
        if self.terms.keys().any(|e| e.0 != 0) {
            return None;
        }
        let n = self.degree_in_y().map_or(0, |d| d as usize + 1);
        let mut coeffs = vec![Scalar::zero(self.ctx); n];
        for (&(_, j), c) in &self.terms {
            coeffs[j as usize] = c.clone();
        }
        Some(UniPoly::from_coeffs(self.ctx, coeffs).expect("same field"))
    }

    /// Coefficients as a polynomial in x when y does not occur.
    pub fn to_unipoly_x(&self) -> Option<UniPoly> {
        if self.terms.keys().any(|e| e.1 != 0) {
            return None;
        }
        let n = self.degree_in_x().map_or(0, |d| d as usize + 1);
        let mut coeffs = vec![Scalar::zero(self.ctx); n];
        for (&(i, _), c) in &self.terms {
            coeffs[i as usize] = c.clone();
        }
        Some(UniPoly::from_coeffs(self.ctx, coeffs).expect("same field"))
    }

    pub fn leading_form(&self) -> Result<BiPoly> {
        leading_form(self)
    }

    /// All terms of exactly total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> BiPoly {
        let terms = self.terms.iter().filter(|(e, _)| e.0 + e.1 == d).map(|(e, c)| (*e, c.clone()));
        BiPoly::from_terms(self.ctx, terms).expect("same field")
    }

    pub fn scale(&self, c: &Scalar) -> BiPoly {
        let terms = self.terms.iter().map(|(e, a)| (*e, a * c));
        BiPoly::from_terms(self.ctx, terms).expect("same field")
    }

    pub fn pow(&self, n: u32) -> BiPoly {
        let mut acc = BiPoly::one(self.ctx);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, x: &Scalar, y: &Scalar) -> Result<Scalar> {
        same_field(self.ctx, x.ctx())?;
        same_field(self.ctx, y.ctx())?;
        let mut acc = Scalar::zero(self.ctx);
        for (&(i, j), c) in &self.terms {
            acc = &acc + &(c * &(&x.pow(i as u64) * &y.pow(j as u64)));
        }
        Ok(acc)
    }

    pub fn deriv_x(&self) -> BiPoly {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e.0 > 0)
            .map(|(&(i, j), c)| ((i - 1, j), c * &Scalar::from_int(self.ctx, i as i64)));
        BiPoly::from_terms(self.ctx, terms).expect("same field")
    }

    pub fn deriv_y(&self) -> BiPoly {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e.1 > 0)
            .map(|(&(i, j), c)| ((i, j - 1), c * &Scalar::from_int(self.ctx, j as i64)));
        BiPoly::from_terms(self.ctx, terms).expect("same field")
    }

    /// Substitution `self(p, q)`.
    pub fn compose(&self, p: &BiPoly, q: &BiPoly) -> Result<BiPoly> {
        bipoly_compose(self, p, q)
    }

    pub fn try_add(&self, rhs: &BiPoly) -> Result<BiPoly> {
        same_field(self.ctx, rhs.ctx)?;
        Ok(self + rhs)
    }

    pub fn try_sub(&self, rhs: &BiPoly) -> Result<BiPoly> {
        same_field(self.ctx, rhs.ctx)?;
        Ok(self - rhs)
    }

    pub fn try_mul(&self, rhs: &BiPoly) -> Result<BiPoly> {
        same_field(self.ctx, rhs.ctx)?;
        Ok(self * rhs)
    }

    /// Terms in canonical display order: descending total degree, then
    /// descending x-exponent.
    pub fn canonical_terms(&self) -> Vec<((u32, u32), Scalar)> {
        let mut v: Vec<_> = self.terms.iter().map(|(e, c)| (*e, c.clone())).collect();
        v.sort_by_key(|(e, _)| std::cmp::Reverse((e.0 + e.1, e.0)));
        v
    }
}

/// `F(P(x,y), Q(x,y))`, expanded.
pub fn bipoly_compose(f: &BiPoly, p: &BiPoly, q: &BiPoly) -> Result<BiPoly> {
    same_field(f.ctx, p.ctx)?;
    same_field(f.ctx, q.ctx)?;
    let ctx = f.ctx;
    let max_i = f.degree_in_x().unwrap_or(0) as usize;
    let max_j = f.degree_in_y().unwrap_or(0) as usize;
    let mut p_pows = vec![BiPoly::one(ctx)];
    for k in 1..=max_i {
        let next = &p_pows[k - 1] * p;
        p_pows.push(next);
    }
    let mut q_pows = vec![BiPoly::one(ctx)];
    for k in 1..=max_j {
        let next = &q_pows[k - 1] * q;
        q_pows.push(next);
    }
    // Group by x-exponent so each P-power is multiplied once.
    let mut by_i: BTreeMap<u32, BiPoly> = BTreeMap::new();
    for (&(i, j), c) in &f.terms {
        let entry = by_i.entry(i).or_insert_with(|| BiPoly::zero(ctx));
        for (e, d) in &q_pows[j as usize].terms {
            entry.add_term(*e, &(c * d));
        }
    }
    let mut out = BiPoly::zero(ctx);
    for (i, inner) in by_i {
        let prod = &p_pows[i as usize] * &inner;
        for (e, d) in prod.terms {
            out.add_term(e, &d);
        }
    }
    Ok(out)
}

pub fn total_degree(f: &BiPoly) -> Result<u32> {
    f.terms.keys().map(|e| e.0 + e.1).max().ok_or(Error::ZeroPolynomial)
}

pub fn leading_form(f: &BiPoly) -> Result<BiPoly> {
    let d = total_degree(f)?;
    Ok(f.homogeneous_part(d))
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(Scalar, String)> =
            self.canonical_terms().into_iter().map(|((i, j), c)| (c, monomial_text(&[("x", i), ("y", j)]))).collect();
        f.write_str(&render_terms(&terms))
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({} over {})", self, self.ctx)
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        assert_eq!(self.ctx, rhs.ctx, "polynomials over different fields");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c);
        }
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        assert_eq!(self.ctx, rhs.ctx, "polynomials over different fields");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, &-c);
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly { ctx: self.ctx, terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        assert_eq!(self.ctx, rhs.ctx, "polynomials over different fields");
        let mut out = BiPoly::zero(self.ctx);
        for (&(i1, j1), a) in &self.terms {
            for (&(i2, j2), b) in &rhs.terms {
                out.add_term((i1 + i2, j1 + j2), &(a * b));
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                &self + &rhs
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                &self - &rhs
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                &self * &rhs
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}

owned_ops!(BiPoly);
owned_ops!(UniPoly);
