//! Sparse multivariate polynomials in a fixed number of unknowns, used to carry
//! symbolic basic-map parameters through conjugacy and symmetry equations.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{FieldCtx, Scalar, UniPoly};

#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    ctx: FieldCtx,
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl MPoly {
    pub fn zero(ctx: FieldCtx, nvars: usize) -> Self {
        MPoly { ctx, nvars, terms: BTreeMap::new() }
    }

    pub fn constant(c: Scalar, nvars: usize) -> Self {
        let mut p = MPoly::zero(c.ctx(), nvars);
        p.add_term(vec![0; nvars], &c);
        p
    }

    pub fn var(ctx: FieldCtx, nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = MPoly::zero(ctx, nvars);
        p.add_term(e, &Scalar::one(ctx));
        p
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    fn add_term(&mut self, e: Vec<u32>, c: &Scalar) {
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

    /// Largest exponent vector in graded order (total degree, then lex).
    pub fn leading_monomial(&self) -> Option<&Vec<u32>> {
        self.terms.keys().max_by(|a, b| (a.iter().sum::<u32>(), *a).cmp(&(b.iter().sum::<u32>(), *b)))
    }

    pub fn coeff_of(&self, e: &[u32]) -> Scalar {
        self.terms.get(e).cloned().unwrap_or_else(|| Scalar::zero(self.ctx))
    }

    pub fn monic_by_leading(&self) -> MPoly {
        match self.leading_monomial() {
            Some(e) => self.scale(&self.terms[e].inv().expect("nonzero")),
            None => self.clone(),
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero(self.ctx)),
            1 => {
                let (e, c) = self.terms.iter().next().expect("one term");
                e.iter().all(|&k| k == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn uses(&self, i: usize) -> bool {
        self.terms.keys().any(|e| e[i] > 0)
    }

    pub fn used_vars(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&i| self.uses(i)).collect()
    }

    /// Coefficients as a polynomial in variable `i`: `result[k]` multiplies `x_i^k`.
    pub fn coeffs_in(&self, i: usize) -> Vec<MPoly> {
        let d = self.degree_in(i) as usize;
        let mut out = vec![MPoly::zero(self.ctx, self.nvars); d + 1];
        for (e, c) in &self.terms {
            let k = e[i] as usize;
            let mut e2 = e.clone();
            e2[i] = 0;
            out[k].add_term(e2, c);
        }
        out
    }

    /// The polynomial as univariate in `i` when no other variable occurs.
    pub fn to_unipoly(&self, i: usize) -> Option<UniPoly> {
        let cs = self.coeffs_in(i);
        let coeffs: Option<Vec<Scalar>> = cs.iter().map(MPoly::as_constant).collect();
        UniPoly::from_coeffs(self.ctx, coeffs?).ok()
    }

    pub fn scale(&self, c: &Scalar) -> MPoly {
        let mut out = MPoly::zero(self.ctx, self.nvars);
        for (e, a) in &self.terms {
            out.add_term(e.clone(), &(a * c));
        }
        out
    }

    pub fn add(&self, o: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn sub(&self, o: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), &-c);
        }
        out
    }

    pub fn mul(&self, o: &MPoly) -> MPoly {
        let mut out = MPoly::zero(self.ctx, self.nvars);
        for (e1, a) in &self.terms {
            for (e2, b) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(x, y)| x + y).collect();
                out.add_term(e, &(a * b));
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> MPoly {
        let mut acc = MPoly::constant(Scalar::one(self.ctx), self.nvars);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Replaces variable `i` by `num / den`, multiplying through by
    /// `den^deg_i(self)` so the result stays polynomial.
    pub fn substitute_fraction(&self, i: usize, num: &MPoly, den: &MPoly) -> MPoly {
        let cs = self.coeffs_in(i);
        let d = cs.len() - 1;
        let mut out = MPoly::zero(self.ctx, self.nvars);
        let mut num_pow = MPoly::constant(Scalar::one(self.ctx), self.nvars);
        let den_pows: Vec<MPoly> = {
            let mut v = vec![MPoly::constant(Scalar::one(self.ctx), self.nvars)];
            for k in 1..=d {
                let next = v[k - 1].mul(den);
                v.push(next);
            }
            v
        };
        for (k, c) in cs.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&c.mul(&num_pow).mul(&den_pows[d - k]));
            }
            if k < d {
                num_pow = num_pow.mul(num);
            }
        }
        out
    }

    /// Evaluates with every variable assigned.
    pub fn eval(&self, values: &[Scalar]) -> Scalar {
        let mut acc = Scalar::zero(self.ctx);
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (k, &p) in e.iter().enumerate() {
                if p > 0 {
                    t = &t * &values[k].pow(p as u64);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Smallest exponent of each variable across all terms.
    pub fn monomial_content(&self) -> Vec<u32> {
        let mut m: Option<Vec<u32>> = None;
        for e in self.terms.keys() {
            m = Some(match m {
                None => e.clone(),
                Some(cur) => cur.iter().zip(e).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        m.unwrap_or_else(|| vec![0; self.nvars])
    }

    /// Divides every term by the monomial `x^e` (each term must be divisible).
    pub fn divide_monomial(&self, e: &[u32]) -> MPoly {
        let mut out = MPoly::zero(self.ctx, self.nvars);
        for (t, c) in &self.terms {
            let t2: Vec<u32> = t.iter().zip(e).map(|(a, b)| a - b).collect();
            out.add_term(t2, c);
        }
        out
    }

    /// Single-term polynomial whose variables all lie in `allowed`.
    pub fn is_monomial_in(&self, allowed: &[bool]) -> bool {
        self.terms.len() == 1 && self.terms.keys().all(|e| e.iter().enumerate().all(|(k, &p)| p == 0 || allowed[k]))
    }
}

/// Determinant by cofactor expansion along rows, memoized on the set of
/// columns still available.
fn determinant(m: &[Vec<MPoly>], ctx: FieldCtx, nvars: usize) -> MPoly {
    use std::collections::HashMap;
    fn go(
        m: &[Vec<MPoly>],
        row: usize,
        cols: u32,
        memo: &mut HashMap<u32, MPoly>,
        ctx: FieldCtx,
        nvars: usize,
    ) -> MPoly {
        if row == m.len() {
            return MPoly::constant(Scalar::one(ctx), nvars);
        }
        if let Some(v) = memo.get(&cols) {
            return v.clone();
        }
        let mut acc = MPoly::zero(ctx, nvars);
        let mut sign_neg = false;
        for c in 0..m.len() {
            if cols & (1 << c) == 0 {
                continue;
            }
            if !m[row][c].is_zero() {
                let minor = go(m, row + 1, cols & !(1 << c), memo, ctx, nvars);
                let term = m[row][c].mul(&minor);
                acc = if sign_neg { acc.sub(&term) } else { acc.add(&term) };
            }
            sign_neg = !sign_neg;
        }
        memo.insert(cols, acc.clone());
        acc
    }
    let full = if m.len() == 32 { u32::MAX } else { (1u32 << m.len()) - 1 };
    go(m, 0, full, &mut HashMap::new(), ctx, nvars)
}

impl MPoly {
    /// Resultant with respect to variable `i` (Sylvester determinant); it lies
    /// in the ideal generated by the two polynomials and does not involve `i`.
    pub fn resultant(&self, other: &MPoly, i: usize) -> MPoly {
        let a = self.coeffs_in(i);
        let b = other.coeffs_in(i);
        let (m, n) = (a.len() - 1, b.len() - 1);
        let size = m + n;
        let zero = MPoly::zero(self.ctx, self.nvars);
        let mut rows = vec![vec![zero; size]; size];
        for r in 0..n {
            for (k, c) in a.iter().rev().enumerate() {
                rows[r][r + k] = c.clone();
            }
        }
        for r in 0..m {
            for (k, c) in b.iter().rev().enumerate() {
                rows[n + r][r + k] = c.clone();
            }
        }
        determinant(&rows, self.ctx, self.nvars)
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &p)| p > 0)
                    .map(|(k, &p)| if p == 1 { format!("z{k}") } else { format!("z{k}^{p}") })
                    .collect();
                if mono.is_empty() {
                    c.to_string()
                } else {
                    format!("{c}*{}", mono.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
