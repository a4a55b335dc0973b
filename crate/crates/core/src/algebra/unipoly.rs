use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{FieldCtx, Scalar};
use crate::error::{same_field, Result};

/// Dense univariate polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    ctx: FieldCtx,
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    pub fn zero(ctx: FieldCtx) -> Self {
        UniPoly { ctx, coeffs: Vec::new() }
    }

    pub fn constant(c: Scalar) -> Self {
        UniPoly::from_coeffs(c.ctx(), vec![c]).expect("single coefficient shares the field")
    }

    /// `c * t^k`.
    pub fn monomial(c: Scalar, k: usize) -> Self {
        let ctx = c.ctx();
        let mut coeffs = vec![Scalar::zero(ctx); k];
        coeffs.push(c);
        UniPoly::from_coeffs(ctx, coeffs).expect("same field")
    }

    /// The variable itself.
    pub fn var(ctx: FieldCtx) -> Self {
        UniPoly::monomial(Scalar::one(ctx), 1)
    }

    pub fn from_coeffs(ctx: FieldCtx, coeffs: Vec<Scalar>) -> Result<Self> {
        for c in &coeffs {
            same_field(ctx, c.ctx())?;
        }
        let mut p = UniPoly { ctx, coeffs };
        p.trim();
        Ok(p)
    }

    pub fn from_ints(ctx: FieldCtx, coeffs: &[i64]) -> Self {
        let coeffs = coeffs.iter().map(|&c| Scalar::from_int(ctx, c)).collect();
        UniPoly::from_coeffs(ctx, coeffs).expect("same field")
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Scalar::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(|| Scalar::zero(self.ctx))
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Scalar) -> UniPoly {
        let coeffs = self.coeffs.iter().map(|a| a * c).collect();
        UniPoly::from_coeffs(self.ctx, coeffs).expect("same field")
    }

    pub fn eval(&self, t: &Scalar) -> Scalar {
        let mut acc = Scalar::zero(self.ctx);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * t) + c;
        }
        acc
    }

    /// Substitution `self(q(t))`.
    pub fn compose(&self, q: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero(self.ctx);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q) + &UniPoly::constant(c.clone());
        }
        acc
    }

    /// `self(a*t + b)`.
    pub fn compose_affine(&self, a: &Scalar, b: &Scalar) -> UniPoly {
        let lin = UniPoly::from_coeffs(self.ctx, vec![b.clone(), a.clone()]).expect("same field");
        self.compose(&lin)
    }

    /// Drops the lowest `k` coefficients and divides by `t^k`.
    pub fn shift_down(&self, k: usize) -> UniPoly {
        let coeffs = self.coeffs.iter().skip(k).cloned().collect();
        UniPoly::from_coeffs(self.ctx, coeffs).expect("same field")
    }

    /// Keeps only the coefficients of degree `< k`.
    pub fn truncate(&self, k: usize) -> UniPoly {
        let coeffs = self.coeffs.iter().take(k).cloned().collect();
        UniPoly::from_coeffs(self.ctx, coeffs).expect("same field")
    }

    pub fn derivative(&self) -> UniPoly {
        let coeffs =
            self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * &Scalar::from_int(self.ctx, k as i64)).collect();
        UniPoly::from_coeffs(self.ctx, coeffs).expect("same field")
    }

    /// True when only odd-degree coefficients are present, i.e. `P(-t) = -P(t)`.
    pub fn is_odd(&self) -> Result<bool> {
        is_odd_poly(self)
    }

    /// True when only even-degree coefficients are present.
    pub fn is_even(&self) -> Result<bool> {
        self.ctx.require_odd_characteristic()?;
        Ok(self.coeffs.iter().enumerate().all(|(k, c)| k % 2 == 0 || c.is_zero()))
    }

    pub fn try_add(&self, rhs: &UniPoly) -> Result<UniPoly> {
        same_field(self.ctx, rhs.ctx)?;
        Ok(self + rhs)
    }

    pub fn try_mul(&self, rhs: &UniPoly) -> Result<UniPoly> {
        same_field(self.ctx, rhs.ctx)?;
        Ok(self * rhs)
    }

    /// Renders with the given variable name.
    pub fn display_with(&self, var: &str) -> String {
        let terms: Vec<(Scalar, String)> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (c.clone(), monomial_text(&[(var, k as u32)])))
            .collect();
        render_terms(&terms)
    }
}

/// True iff every even-degree coefficient vanishes. Parity is meaningless in
/// characteristic 2, so it is rejected there.
pub fn is_odd_poly(p: &UniPoly) -> Result<bool> {
    p.ctx.require_odd_characteristic()?;
    Ok(p.coeffs.iter().enumerate().all(|(k, c)| k % 2 == 1 || c.is_zero()))
}

pub(crate) fn monomial_text(parts: &[(&str, u32)]) -> String {
    let mut out = Vec::new();
    for &(v, e) in parts {
        match e {
            0 => {}
            1 => out.push(v.to_string()),
            _ => out.push(format!("{v}^{e}")),
        }
    }
    out.join("*")
}

/// Shared term printer: `terms` are (coefficient, monomial text) in display order.
pub(crate) fn render_terms(terms: &[(Scalar, String)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (c, mono)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let mag = if neg { -c } else { c.clone() };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mono.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(mono);
        } else {
            out.push_str(&format!("{mag}*{mono}"));
        }
    }
    out
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("y"))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({} over {})", self, self.ctx)
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        assert_eq!(self.ctx, rhs.ctx, "polynomials over different fields");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect();
        UniPoly::from_coeffs(self.ctx, coeffs).expect("same field")
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self + &(-rhs)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly { ctx: self.ctx, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        assert_eq!(self.ctx, rhs.ctx, "polynomials over different fields");
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero(self.ctx);
        }
        let mut coeffs = vec![Scalar::zero(self.ctx); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        UniPoly::from_coeffs(self.ctx, coeffs).expect("same field")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Error;

    fn qp(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(FieldCtx::rationals(), c)
    }

    #[test]
    fn trims_trailing_zeros() {
        assert_eq!(qp(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(qp(&[0, 0]).is_zero());
        assert_eq!(qp(&[]).degree(), None);
    }

    #[test]
    fn oddness() {
        assert!(qp(&[0, -2, 0, 1]).is_odd().unwrap());
        assert!(!qp(&[0, 0, 1]).is_odd().unwrap());
        assert!(qp(&[]).is_odd().unwrap());
        let f2 = FieldCtx::prime(2).unwrap();
        assert_eq!(UniPoly::from_ints(f2, &[0, 1]).is_odd(), Err(Error::CharacteristicTwo));
    }

    #[test]
    fn frobenius_shape_is_odd() {
        for p in [3u64, 5, 7, 11] {
            let ctx = FieldCtx::prime(p).unwrap();
            let mut c = vec![0i64; p as usize + 1];
            c[1] = -1;
            c[p as usize] = 1;
            assert!(UniPoly::from_ints(ctx, &c).is_odd().unwrap());
        }
    }

    #[test]
    fn composition_agrees_with_evaluation() {
        let p = qp(&[1, 0, 3, -1]);
        let q = qp(&[2, 5]);
        let pq = p.compose(&q);
        for t in -5..5 {
            let t = Scalar::from_int(FieldCtx::rationals(), t);
            assert_eq!(pq.eval(&t), p.eval(&q.eval(&t)));
        }
    }

    #[test]
    fn printing() {
        assert_eq!(qp(&[1, -2, 0, 1]).to_string(), "y^3 - 2*y + 1");
        assert_eq!(qp(&[]).to_string(), "0");
        assert_eq!(qp(&[0, -1]).display_with("t"), "-t");
    }
}
