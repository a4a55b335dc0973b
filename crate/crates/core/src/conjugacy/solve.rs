//! Branching elimination for small polynomial systems: pivot on variables that
//! occur linearly, split on roots of univariate equations, and give up
//! (undecided) when neither applies.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::mpoly::MPoly;
use crate::algebra::{arith, FieldCtx, Scalar, UniPoly};

/// Largest field size searched exhaustively for roots or values.
const ENUM_ROOT_LIMIT: u64 = 1 << 20;
const ENUM_VALUE_LIMIT: u64 = 257;
/// Largest integer factored by trial division in the rational-root search.
const FACTOR_LIMIT: u64 = 100_000_000_000_000;
const NODE_BUDGET: usize = 20_000;
/// Largest Sylvester matrix used for elimination.
const MAX_SYLVESTER: u32 = 12;

#[derive(Debug, Default)]
pub struct Outcome {
    pub solutions: Vec<Vec<Scalar>>,
    /// Set when some branch could not be resolved.
    pub undecided: Option<String>,
    /// Variables left free (given a default value) in some solution family.
    pub free: Vec<bool>,
}

impl Outcome {
    /// Whether `solutions` lists every value the variables `vars` take on
    /// the solution set.
    pub fn is_complete(&self, vars: &[usize], max_solutions: usize) -> bool {
        self.undecided.is_none()
            && self.solutions.len() < max_solutions
            && vars.iter().all(|&v| !self.free.get(v).copied().unwrap_or(false))
    }
}

struct Sub {
    var: usize,
    num: MPoly,
    den: MPoly,
}

struct Solver<'a> {
    ctx: FieldCtx,
    nvars: usize,
    nonzero: &'a [bool],
    original: &'a [MPoly],
    max_solutions: usize,
    nodes: usize,
    out: Outcome,
}

/// Solves `eqs = 0` with the variables flagged in `nonzero` required to be
/// nonzero. Returned solutions are verified against the original equations.
pub fn solve(ctx: FieldCtx, nvars: usize, eqs: &[MPoly], nonzero: &[bool], max_solutions: usize) -> Outcome {
    let mut s = Solver { ctx, nvars, nonzero, original: eqs, max_solutions, nodes: 0, out: Outcome::default() };
    s.branch(eqs.to_vec(), Vec::new());
    s.out
}

impl Solver<'_> {
    fn done(&self) -> bool {
        self.out.solutions.len() >= self.max_solutions
    }

    fn undecided(&mut self, why: impl Into<String>) {
        if self.out.undecided.is_none() {
            self.out.undecided = Some(why.into());
        }
    }

    /// Drops zero equations, divides out powers of nonzero variables and
    /// normalizes. `None` when some equation became a nonzero constant.
    fn simplify(&self, eqs: Vec<MPoly>) -> Option<Vec<MPoly>> {
        let mut out: Vec<MPoly> = Vec::new();
        for e in eqs {
            if e.is_zero() {
                continue;
            }
            let mut content = e.monomial_content();
            for (k, c) in content.iter_mut().enumerate() {
                if !self.nonzero[k] {
                    *c = 0;
                }
            }
            let e = e.divide_monomial(&content).monic_by_leading();
            if e.as_constant().is_some() {
                return None;
            }
            if !out.contains(&e) {
                out.push(e);
            }
        }
        let mut out = row_reduce(&out);
        out.sort_by_key(|e| (e.num_terms(), e.total_degree()));
        Some(out)
    }

    fn branch(&mut self, eqs: Vec<MPoly>, subs: Vec<Sub>) {
        if self.done() {
            return;
        }
        self.nodes += 1;
        if self.nodes > NODE_BUDGET {
            self.undecided("search budget exhausted");
            return;
        }
        let Some(eqs) = self.simplify(eqs) else { return };
        if eqs.is_empty() {
            self.finish(&subs);
            return;
        }
        if let Some((var, num, den)) = self.linear_pivot(&eqs) {
            self.substitute(eqs, subs, var, num, den);
            return;
        }
        if let Some(e) = eqs.iter().find(|e| e.used_vars().len() == 1) {
            let var = e.used_vars()[0];
            let poly = e.to_unipoly(var).expect("univariate");
            match roots(&poly) {
                Some(rs) => {
                    for r in rs {
                        if self.nonzero[var] && r.is_zero() {
                            continue;
                        }
                        let num = MPoly::constant(r, self.nvars);
                        let den = MPoly::constant(Scalar::one(self.ctx), self.nvars);
                        self.substitute(eqs.clone(), clone_subs(&subs), var, num, den);
                    }
                }
                None => self.undecided(format!("cannot find the roots of {poly}")),
            }
            return;
        }
        if let Some(p) = self.ctx.modulus().filter(|&p| p <= ENUM_VALUE_LIMIT) {
            let var = eqs[0].used_vars()[0];
            for r in 0..p {
                if self.nonzero[var] && r == 0 {
                    continue;
                }
                let num = MPoly::constant(Scalar::from_residue(self.ctx, r), self.nvars);
                let den = MPoly::constant(Scalar::one(self.ctx), self.nvars);
                self.substitute(eqs.clone(), clone_subs(&subs), var, num, den);
            }
            return;
        }
        if let Some(r) = self.elimination(&eqs) {
            let mut next = eqs;
            next.push(r);
            self.branch(next, subs);
            return;
        }
        self.undecided("nonlinear constraints could not be triangularized");
    }

    /// A variable occurring to the first power whose coefficient is a nonzero
    /// constant, or failing that a monomial in variables known to be nonzero.
    fn linear_pivot(&self, eqs: &[MPoly]) -> Option<(usize, MPoly, MPoly)> {
        let mut fallback = None;
        for e in eqs {
            for v in e.used_vars() {
                if e.degree_in(v) != 1 {
                    continue;
                }
                let cs = e.coeffs_in(v);
                if let Some(c) = cs[1].as_constant() {
                    let num = cs[0].scale(&-c.inv().expect("nonzero"));
                    let den = MPoly::constant(Scalar::one(self.ctx), self.nvars);
                    return Some((v, num, den));
                }
                if fallback.is_none() && cs[1].is_monomial_in(self.nonzero) {
                    fallback = Some((v, cs[0].scale(&-Scalar::one(self.ctx)), cs[1].clone()));
                }
            }
        }
        fallback
    }

    /// A resultant of two equations that is not already a linear combination
    /// of the system, preferring pairs with few variables.
    fn elimination(&self, eqs: &[MPoly]) -> Option<MPoly> {
        let mut pairs = Vec::new();
        for i in 0..eqs.len() {
            for j in i + 1..eqs.len() {
                let mut vars = eqs[i].used_vars();
                vars.extend(eqs[j].used_vars());
                vars.sort_unstable();
                vars.dedup();
                for &v in &vars {
                    let (di, dj) = (eqs[i].degree_in(v), eqs[j].degree_in(v));
                    if di > 0 && dj > 0 && di + dj <= MAX_SYLVESTER {
                        pairs.push((vars.len(), di + dj, i, j, v));
                    }
                }
            }
        }
        pairs.sort_unstable();
        let rank = eqs.len();
        for (_, _, i, j, v) in pairs {
            let r = eqs[i].resultant(&eqs[j], v);
            if r.is_zero() {
                continue;
            }
            let mut with = eqs.to_vec();
            with.push(r.clone());
            if row_reduce(&with).len() > rank {
                return Some(r);
            }
        }
        None
    }

    fn substitute(&mut self, eqs: Vec<MPoly>, mut subs: Vec<Sub>, var: usize, num: MPoly, den: MPoly) {
        let next: Vec<MPoly> = eqs.iter().map(|e| e.substitute_fraction(var, &num, &den)).collect();
        subs.push(Sub { var, num, den });
        self.branch(next, subs);
    }

    /// Assigns free variables, back-substitutes and checks the constraints.
    fn finish(&mut self, subs: &[Sub]) {
        self.out.free.resize(self.nvars, false);
        for v in 0..self.nvars {
            if subs.iter().all(|s| s.var != v) {
                self.out.free[v] = true;
            }
        }
        let one = Scalar::one(self.ctx);
        let zero = Scalar::zero(self.ctx);
        let two = Scalar::from_int(self.ctx, 2);
        let defaults: [(Scalar, Scalar); 4] = [
            (one.clone(), zero.clone()),
            (one.clone(), one.clone()),
            (two.clone(), one.clone()),
            (-one.clone(), two.clone()),
        ];
        for (nz, other) in defaults {
            let mut values: Vec<Scalar> =
                (0..self.nvars).map(|k| if self.nonzero[k] { nz.clone() } else { other.clone() }).collect();
            let mut ok = true;
            for s in subs.iter().rev() {
                let d = s.den.eval(&values);
                if d.is_zero() {
                    ok = false;
                    break;
                }
                values[s.var] = &s.num.eval(&values) / &d;
            }
            if !ok || (0..self.nvars).any(|k| self.nonzero[k] && values[k].is_zero()) {
                continue;
            }
            if self.original.iter().all(|e| e.eval(&values).is_zero()) {
                if !self.out.solutions.contains(&values) {
                    self.out.solutions.push(values);
                }
                return;
            }
        }
    }
}

/// Gaussian elimination treating each monomial as a coordinate, largest
/// monomials first; exposes low-degree consequences such as the difference of
/// two equations with the same nonlinear part.
fn row_reduce(eqs: &[MPoly]) -> Vec<MPoly> {
    let graded = |p: &MPoly| p.leading_monomial().map(|e| (e.iter().sum::<u32>(), e.clone()));
    let mut rows: Vec<MPoly> = eqs.iter().filter(|e| !e.is_zero()).cloned().collect();
    let mut reduced: Vec<MPoly> = Vec::new();
    while let Some(i) = (0..rows.len()).max_by_key(|&i| graded(&rows[i])) {
        let pivot = rows.swap_remove(i).monic_by_leading();
        let lm = pivot.leading_monomial().expect("nonzero").clone();
        for r in rows.iter_mut().chain(reduced.iter_mut()) {
            let c = r.coeff_of(&lm);
            if !c.is_zero() {
                *r = r.sub(&pivot.scale(&c));
            }
        }
        rows.retain(|r| !r.is_zero());
        reduced.push(pivot);
    }
    reduced
}

fn clone_subs(subs: &[Sub]) -> Vec<Sub> {
    subs.iter().map(|s| Sub { var: s.var, num: s.num.clone(), den: s.den.clone() }).collect()
}

/// All roots in the field of a nonzero univariate polynomial, or `None` when
/// they cannot be determined (large coefficients over Q, large p).
pub fn roots(poly: &UniPoly) -> Option<Vec<Scalar>> {
    let ctx = poly.ctx();
    let low = poly.coeffs().iter().position(|c| !c.is_zero())?;
    let mut out = Vec::new();
    if low > 0 {
        out.push(Scalar::zero(ctx));
    }
    let q = poly.shift_down(low);
    let deg = q.degree()?;
    if deg == 0 {
        return Some(out);
    }
    if deg == 1 {
        out.push(&-&q.coeff(0) / &q.coeff(1));
        return Some(out);
    }
    match ctx.modulus() {
        Some(p) => {
            if p > ENUM_ROOT_LIMIT {
                return None;
            }
            out.extend((1..p).map(|r| Scalar::from_residue(ctx, r)).filter(|r| q.eval(r).is_zero()));
        }
        None => out.extend(rational_roots(&q)?),
    }
    Some(out)
}

fn integer_coeffs(q: &UniPoly) -> Vec<BigInt> {
    let rats: Vec<_> = q.coeffs().iter().map(|c| c.as_rational().expect("rational").clone()).collect();
    let l = rats.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    rats.iter().map(|r| r.numer() * (&l / r.denom())).collect()
}

/// Exact rational `n`-th root of `c`, if one exists.
fn rational_nth_roots(num: &BigInt, den: &BigInt, n: u32) -> Vec<(BigInt, BigInt)> {
    let (num, den) = if den.is_negative() { (-num, -den) } else { (num.clone(), den.clone()) };
    let g = num.gcd(&den);
    let (num, den) = (num / &g, den / &g);
    if n.is_multiple_of(2) && num.is_negative() {
        return Vec::new();
    }
    let rn = num.abs().nth_root(n);
    let rd = den.nth_root(n);
    if rn.pow(n) != num.abs() || rd.pow(n) != den {
        return Vec::new();
    }
    let rn = if num.is_negative() { -rn } else { rn };
    if n.is_multiple_of(2) {
        vec![(rn.clone(), rd.clone()), (-rn, rd)]
    } else {
        vec![(rn, rd)]
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for (p, e) in arith::factorize(n) {
        let cur = ds.clone();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            ds.extend(cur.iter().map(|d| d * pk));
        }
    }
    ds.sort_unstable();
    ds
}

/// Rational roots of a polynomial with nonzero constant term, degree >= 2.
fn rational_roots(q: &UniPoly) -> Option<Vec<Scalar>> {
    let ctx = q.ctx();
    let a = integer_coeffs(q);
    let n = a.len() - 1;
    let mk = |num: &BigInt, den: &BigInt| Scalar::from_fraction(ctx, num, den).expect("nonzero denominator");
    if a[1..n].iter().all(Zero::is_zero) {
        let roots = rational_nth_roots(&-&a[0], &a[n], n as u32);
        return Some(roots.iter().map(|(p, d)| mk(p, d)).collect());
    }
    let a0 = a[0].abs().to_u64().filter(|&v| v <= FACTOR_LIMIT)?;
    let an = a[n].abs().to_u64().filter(|&v| v <= FACTOR_LIMIT)?;
    let mut out: Vec<Scalar> = Vec::new();
    for p in divisors(a0) {
        for d in divisors(an) {
            if arith::gcd(p, d) != 1 {
                continue;
            }
            for sign in [1i64, -1] {
                let r = mk(&(BigInt::from(p) * sign), &BigInt::from(d));
                if q.eval(&r).is_zero() && !out.contains(&r) {
                    out.push(r);
                }
            }
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldCtx {
        FieldCtx::rationals()
    }

    fn s(n: i64) -> Scalar {
        Scalar::from_int(q(), n)
    }

    #[test]
    fn rational_roots_of_small_polynomials() {
        // (t - 2)(2t + 3)(t^2 + 1)
        let p = UniPoly::from_ints(q(), &[-6, -1, -4, -1, 2]);
        let mut rs: Vec<String> = roots(&p).unwrap().iter().map(|r| r.to_string()).collect();
        rs.sort();
        assert_eq!(rs, vec!["-3/2", "2"]);
        // t^3 = 27/8
        let c = Scalar::from_fraction(q(), &(-27).into(), &8.into()).unwrap();
        let p = UniPoly::from_coeffs(q(), vec![c, s(0), s(0), s(1)]).unwrap();
        assert_eq!(roots(&p).unwrap(), vec![Scalar::from_fraction(q(), &3.into(), &2.into()).unwrap()]);
        let p = UniPoly::from_ints(q(), &[-2, 0, 1]);
        assert!(roots(&p).unwrap().is_empty());
    }

    #[test]
    fn roots_mod_p() {
        let f7 = FieldCtx::prime(7).unwrap();
        let p = UniPoly::from_ints(f7, &[-2, 0, 1]);
        let rs: Vec<u64> = roots(&p).unwrap().iter().map(|r| r.residue().unwrap()).collect();
        assert_eq!(rs, vec![3, 4]);
    }

    #[test]
    fn solves_triangular_system() {
        // z0 * z1 = 6, z1 = z0 + 1, z0 nonzero
        let x = MPoly::var(q(), 2, 0);
        let y = MPoly::var(q(), 2, 1);
        let e1 = x.mul(&y).sub(&MPoly::constant(s(6), 2));
        let e2 = y.sub(&x).sub(&MPoly::constant(s(1), 2));
        let out = solve(q(), 2, &[e1, e2], &[true, false], 8);
        assert!(out.undecided.is_none());
        let mut sols: Vec<(String, String)> =
            out.solutions.iter().map(|v| (v[0].to_string(), v[1].to_string())).collect();
        sols.sort();
        assert_eq!(sols, vec![("-3".into(), "-2".into()), ("2".into(), "3".into())]);
    }

    #[test]
    fn inconsistent_system_has_no_solutions() {
        let x = MPoly::var(q(), 1, 0);
        let e1 = x.sub(&MPoly::constant(s(1), 1));
        let e2 = x.sub(&MPoly::constant(s(2), 1));
        let out = solve(q(), 1, &[e1, e2], &[false], 8);
        assert!(out.solutions.is_empty() && out.undecided.is_none());
    }
}
