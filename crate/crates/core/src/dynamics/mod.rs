//! Exhaustive phase-space computations over `F_p²`: induced permutations,
//! cycle statistics, fixed points, and how symmetries and reversors act on
//! cycles. Point `(x, y)` has index `x + p·y`.

mod scan;

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{FieldCtx, Scalar};
use crate::amalgam::decompose;
use crate::error::{same_field, Error, Result};
use crate::generators::PolyMap;
use crate::symmetry::{is_reversor, is_symmetry};

use scan::{image_table, scanned_prime};
pub use scan::{ScanOptions, DEFAULT_PRIME_CAP};

/// A permutation of the `p²` points of `F_p²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermTable {
    p: u64,
    images: Vec<u32>,
}

impl PermTable {
    /// Checks that `images` is a bijection of `0..p²`.
    pub fn from_images(p: u64, images: Vec<u32>) -> Result<Self> {
        let n = p.checked_mul(p).filter(|&n| n == images.len() as u64);
        if n.is_none() {
            return Err(Error::InvalidArgument(format!("expected {} images, found {}", p * p, images.len())));
        }
        let mut seen = vec![false; images.len()];
        for &j in &images {
            let slot =
                seen.get_mut(j as usize).ok_or_else(|| Error::InvalidArgument(format!("image {j} out of range")))?;
            if std::mem::replace(slot, true) {
                return Err(Error::InvalidArgument(format!("point {j} is hit twice")));
            }
        }
        Ok(PermTable { p, images })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn image(&self, idx: usize) -> usize {
        self.images[idx] as usize
    }

    pub fn index(&self, x: u64, y: u64) -> usize {
        (x + self.p * y) as usize
    }

    pub fn point(&self, idx: usize) -> (u64, u64) {
        (idx as u64 % self.p, idx as u64 / self.p)
    }

    pub fn inverse(&self) -> PermTable {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        PermTable { p: self.p, images: inv }
    }

    /// Cycles in order of their smallest point, each starting there.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cycle.push(cur);
                cur = self.image(cur);
            }
            out.push(cycle);
        }
        out
    }
}

/// Cycle lengths of a permutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleStats {
    /// Sorted ascending.
    pub cycle_lengths: Vec<u64>,
    pub fixed_point_count: u64,
}

impl CycleStats {
    pub fn cycle_count(&self) -> usize {
        self.cycle_lengths.len()
    }

    /// Length → number of cycles of that length.
    pub fn histogram(&self) -> BTreeMap<u64, u64> {
        let mut h = BTreeMap::new();
        for &l in &self.cycle_lengths {
            *h.entry(l).or_insert(0) += 1;
        }
        h
    }

    pub fn mean_length(&self) -> f64 {
        let total: u64 = self.cycle_lengths.iter().sum();
        total as f64 / self.cycle_lengths.len().max(1) as f64
    }
}

impl fmt::Display for CycleStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (len, count) in self.histogram() {
            writeln!(f, "CYCLE len={len} count={count}")?;
        }
        write!(f, "FIXED {}", self.fixed_point_count)
    }
}

/// The permutation `f` induces on `F_p²`, with default scan settings.
pub fn induced_permutation(f: &PolyMap) -> Result<PermTable> {
    induced_permutation_with(f, &ScanOptions::default())
}

pub fn induced_permutation_with(f: &PolyMap, opts: &ScanOptions) -> Result<PermTable> {
    let p = f.ctx().modulus().ok_or(Error::NotFiniteField)?;
    decompose(f)?;
    let images = image_table(f, opts)?;
    PermTable::from_images(p, images)
        .map_err(|e| Error::TheoremViolation(format!("automorphism does not permute F_{p}²: {e}")))
}

pub fn cycle_statistics(perm: &PermTable) -> CycleStats {
    let mut cycle_lengths: Vec<u64> = perm.cycles().iter().map(|c| c.len() as u64).collect();
    cycle_lengths.sort_unstable();
    let fixed_point_count = cycle_lengths.iter().take_while(|&&l| l == 1).count() as u64;
    CycleStats { cycle_lengths, fixed_point_count }
}

fn to_point(ctx: FieldCtx, p: u64, idx: usize) -> (Scalar, Scalar) {
    (Scalar::from_residue(ctx, idx as u64 % p), Scalar::from_residue(ctx, idx as u64 / p))
}

/// Every point with `f(pt) = pt`, in index order.
pub fn fixed_points_fp(f: &PolyMap) -> Result<Vec<(Scalar, Scalar)>> {
    fixed_points_fp_with(f, &ScanOptions::default())
}

pub fn fixed_points_fp_with(f: &PolyMap, opts: &ScanOptions) -> Result<Vec<(Scalar, Scalar)>> {
    let ctx = f.ctx();
    let p = scanned_prime(ctx, opts)?;
    let images = image_table(f, opts)?;
    Ok(images.iter().enumerate().filter(|&(i, &j)| i == j as usize).map(|(i, _)| to_point(ctx, p, i)).collect())
}

/// How a reversor acts on the cycles of `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingReport {
    pub stats: CycleStats,
    /// Cycles mapped onto themselves by the reversor.
    pub invariant_cycles: usize,
    pub involutory: bool,
    /// For an involutory reversor, the number of its fixed points on each
    /// cycle, cycles in order of their smallest point.
    pub symmetric_points: Option<Vec<(u64, usize)>>,
}

impl fmt::Display for PairingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.stats)?;
        write!(f, "INVARIANT {}", self.invariant_cycles)?;
        if let Some(sym) = &self.symmetric_points {
            let mut by_len: BTreeMap<(u64, usize), u64> = BTreeMap::new();
            for &key in sym {
                *by_len.entry(key).or_insert(0) += 1;
            }
            for ((len, pts), count) in by_len {
                write!(f, "\nSYMMETRIC len={len} points={pts} count={count}")?;
            }
        }
        Ok(())
    }
}

struct CycleIndex {
    cycles: Vec<Vec<usize>>,
    of_point: Vec<usize>,
    pos: Vec<usize>,
}

impl CycleIndex {
    fn new(perm: &PermTable) -> Self {
        let cycles = perm.cycles();
        let mut of_point = vec![0; perm.len()];
        let mut pos = vec![0; perm.len()];
        for (c, cycle) in cycles.iter().enumerate() {
            for (k, &i) in cycle.iter().enumerate() {
                of_point[i] = c;
                pos[i] = k;
            }
        }
        CycleIndex { cycles, of_point, pos }
    }
}

fn finite_pair(f: &PolyMap, g: &PolyMap, opts: &ScanOptions) -> Result<(PermTable, PermTable)> {
    same_field(f.ctx(), g.ctx())?;
    scanned_prime(f.ctx(), opts)?;
    Ok((induced_permutation_with(f, opts)?, induced_permutation_with(g, opts)?))
}

/// Checks that the reversor `r` sends every cycle of `f` to a cycle of the
/// same length and reports how the cycles pair up.
pub fn reversor_cycle_pairing(f: &PolyMap, r: &PolyMap) -> Result<PairingReport> {
    reversor_cycle_pairing_with(f, r, &ScanOptions::default())
}

pub fn reversor_cycle_pairing_with(f: &PolyMap, r: &PolyMap, opts: &ScanOptions) -> Result<PairingReport> {
    same_field(f.ctx(), r.ctx())?;
    f.ctx().modulus().ok_or(Error::NotFiniteField)?;
    if !is_reversor(f, r)? {
        return Err(Error::ReversorCheckFailed);
    }
    let (fp, rp) = finite_pair(f, r, opts)?;
    let idx = CycleIndex::new(&fp);
    let involutory = (0..rp.len()).all(|i| rp.image(rp.image(i)) == i);
    let mut partner = Vec::with_capacity(idx.cycles.len());
    for cycle in &idx.cycles {
        let target = idx.of_point[rp.image(cycle[0])];
        let same = cycle.iter().all(|&i| idx.of_point[rp.image(i)] == target);
        if !same || idx.cycles[target].len() != cycle.len() {
            return Err(Error::TheoremViolation("reversor does not map a cycle onto a cycle of equal length".into()));
        }
        partner.push(target);
    }
    if involutory && partner.iter().enumerate().any(|(c, &d)| partner[d] != c) {
        return Err(Error::TheoremViolation("involutory reversor does not pair cycles involutively".into()));
    }
    let invariant_cycles = partner.iter().enumerate().filter(|&(c, &d)| c == d).count();
    let symmetric_points = involutory.then(|| {
        idx.cycles
            .iter()
            .map(|cycle| (cycle.len() as u64, cycle.iter().filter(|&&i| rp.image(i) == i).count()))
            .collect()
    });
    Ok(PairingReport { stats: cycle_statistics(&fp), invariant_cycles, involutory, symmetric_points })
}

/// Whether the symmetry `s` maps every cycle of `f` onto a cycle of the same
/// length, preserving the cyclic order: `s(f^k(c)) = f^k(s(c))` along each
/// cycle.
pub fn symmetry_orbit_check(f: &PolyMap, s: &PolyMap) -> Result<bool> {
    symmetry_orbit_check_with(f, s, &ScanOptions::default())
}

pub fn symmetry_orbit_check_with(f: &PolyMap, s: &PolyMap, opts: &ScanOptions) -> Result<bool> {
    same_field(f.ctx(), s.ctx())?;
    f.ctx().modulus().ok_or(Error::NotFiniteField)?;
    if !is_symmetry(f, s)? {
        return Err(Error::SymmetryCheckFailed);
    }
    let (fp, sp) = finite_pair(f, s, opts)?;
    let idx = CycleIndex::new(&fp);
    Ok(idx.cycles.iter().all(|cycle| {
        let start = sp.image(cycle[0]);
        let target = &idx.cycles[idx.of_point[start]];
        let offset = idx.pos[start];
        target.len() == cycle.len()
            && cycle.iter().enumerate().all(|(k, &i)| sp.image(i) == target[(offset + k) % target.len()])
    }))
}
