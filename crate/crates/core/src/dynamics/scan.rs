use std::num::NonZeroUsize;
use std::ops::Range;
use std::thread;

use crate::algebra::arith::mul_mod;
use crate::algebra::{BiPoly, FieldCtx, Scalar};
use crate::amalgam::{decompose, normalize};
use crate::error::{Error, Result};
use crate::generators::PolyMap;

/// Largest prime scanned unless the caller raises the cap.
pub const DEFAULT_PRIME_CAP: u64 = 101;

/// Settings for exhaustive scans of `F_p²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScanOptions {
    pub prime_cap: u64,
    /// Worker count; 0 means one per available core.
    pub threads: usize,
    /// Also evaluate the normal form at every point and compare.
    pub cross_check: bool,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions { prime_cap: DEFAULT_PRIME_CAP, threads: 0, cross_check: false }
    }
}

impl ScanOptions {
    fn workers(&self, points: usize) -> usize {
        let n = if self.threads == 0 {
            thread::available_parallelism().map(NonZeroUsize::get).unwrap_or(1)
        } else {
            self.threads
        };
        // small fields are not worth a thread each
        n.clamp(1, points.div_ceil(1024).max(1))
    }
}

pub(crate) fn scanned_prime(ctx: FieldCtx, opts: &ScanOptions) -> Result<u64> {
    let p = ctx.modulus().ok_or(Error::NotFiniteField)?;
    if p > opts.prime_cap {
        return Err(Error::FieldTooLarge { p, cap: opts.prime_cap });
    }
    Ok(p)
}

/// A polynomial reduced to residue terms for fast evaluation.
struct ResiduePoly {
    terms: Vec<(usize, usize, u64)>,
}

impl ResiduePoly {
    fn new(f: &BiPoly) -> Self {
        let terms = f
            .terms()
            .map(|(&(i, j), c)| (i as usize, j as usize, c.residue().expect("prime field coefficient")))
            .collect();
        ResiduePoly { terms }
    }

    fn max_degrees(&self) -> (usize, usize) {
        self.terms.iter().fold((0, 0), |(a, b), &(i, j, _)| (a.max(i), b.max(j)))
    }

    fn eval(&self, xp: &[u64], yp: &[u64], p: u64) -> u64 {
        self.terms.iter().fold(0, |acc, &(i, j, c)| (acc + mul_mod(c, mul_mod(xp[i], yp[j], p), p)) % p)
    }
}

/// Evaluates a polynomial map at residue points.
pub(crate) struct FpEvaluator {
    p: u64,
    f: ResiduePoly,
    g: ResiduePoly,
    dx: usize,
    dy: usize,
}

fn powers(base: u64, n: usize, p: u64) -> Vec<u64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut cur = 1 % p;
    for _ in 0..=n {
        out.push(cur);
        cur = mul_mod(cur, base, p);
    }
    out
}

impl FpEvaluator {
    pub(crate) fn new(map: &PolyMap) -> Result<Self> {
        let p = map.ctx().modulus().ok_or(Error::NotFiniteField)?;
        let (f, g) = (ResiduePoly::new(map.p()), ResiduePoly::new(map.q()));
        let (a, b) = f.max_degrees();
        let (c, d) = g.max_degrees();
        Ok(FpEvaluator { p, f, g, dx: a.max(c), dy: b.max(d) })
    }

    pub(crate) fn apply(&self, x: u64, y: u64) -> (u64, u64) {
        let xp = powers(x, self.dx, self.p);
        let yp = powers(y, self.dy, self.p);
        (self.f.eval(&xp, &yp, self.p), self.g.eval(&xp, &yp, self.p))
    }

    /// Image of the point with index `x + p·y`, as an index.
    pub(crate) fn apply_index(&self, idx: u64) -> u64 {
        let (x, y) = self.apply(idx % self.p, idx / self.p);
        x + self.p * y
    }
}

/// Runs `work` over disjoint index ranges and concatenates the results in
/// index order.
pub(crate) fn partitioned<T, F>(points: usize, opts: &ScanOptions, work: F) -> Vec<T>
where
    T: Send,
    F: Fn(Range<usize>) -> Vec<T> + Sync,
{
    let workers = opts.workers(points);
    if workers == 1 {
        return work(0..points);
    }
    let chunk = points.div_ceil(workers);
    let work = &work;
    thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|k| {
                let r = (k * chunk).min(points)..((k + 1) * chunk).min(points);
                s.spawn(move || work(r))
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("scan worker panicked")).collect()
    })
}

/// Images of every point of `F_p²` under `f`, indexed by `x + p·y`.
pub(crate) fn image_table(f: &PolyMap, opts: &ScanOptions) -> Result<Vec<u32>> {
    let p = scanned_prime(f.ctx(), opts)?;
    let eval = FpEvaluator::new(f)?;
    let points = (p * p) as usize;
    let images = partitioned(points, opts, |r| r.map(|i| eval.apply_index(i as u64) as u32).collect());
    if opts.cross_check {
        cross_check(f, &images, opts)?;
    }
    Ok(images)
}

fn cross_check(f: &PolyMap, images: &[u32], opts: &ScanOptions) -> Result<()> {
    let ctx = f.ctx();
    let p = ctx.modulus().ok_or(Error::NotFiniteField)?;
    let word = normalize(&decompose(f)?).to_word();
    let bad = partitioned(images.len(), opts, |r| {
        r.filter(|&i| {
            let pt = [Scalar::from_residue(ctx, i as u64 % p), Scalar::from_residue(ctx, i as u64 / p)];
            let [x, y] = word.apply(&pt);
            let j = x.residue().expect("residue") + p * y.residue().expect("residue");
            j != u64::from(images[i])
        })
        .take(1)
        .collect()
    });
    match bad.first() {
        Some(i) => Err(Error::TheoremViolation(format!(
            "normal form and expanded map disagree at ({}, {})",
            *i as u64 % p,
            *i as u64 / p
        ))),
        None => Ok(()),
    }
}
