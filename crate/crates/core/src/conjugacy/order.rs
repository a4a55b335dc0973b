use crate::algebra::{arith, mult_order, OrderResult, Scalar, UniPoly};
use crate::amalgam::{cyclically_reduce, CRStatus, NormalForm};
use crate::generators::{AffineMap, BasicMap, ElementaryMap, Letter, Matrix2};

pub const DEFAULT_ORDER_CAP: u64 = 64;

fn scalar_order(s: &Scalar) -> Option<u64> {
    match mult_order(s).expect("nonzero") {
        OrderResult::Finite(n) => Some(n),
        OrderResult::Infinite => None,
    }
}

/// `1 + M + … + M^{n−1}` by binary splitting.
fn geometric_sum(m: &Matrix2, n: u64) -> Matrix2 {
    let ctx = m.ctx();
    if n == 0 {
        return Matrix2::scalar(Scalar::zero(ctx));
    }
    if n == 1 {
        return Matrix2::identity(ctx);
    }
    let half = geometric_sum(m, n / 2);
    let doubled = half.add(&m.pow(n / 2).mul(&half));
    if n.is_multiple_of(2) {
        doubled
    } else {
        Matrix2::identity(ctx).add(&m.mul(&doubled))
    }
}

/// Order of `(a, M)` once the order `n` of `M` is known: `(a, M)^n` is the
/// translation by `(1 + M + … + M^{n−1}) a`, of order 1, `p`, or infinite.
fn extend_by_translation(m: &Matrix2, t: &[Scalar; 2], n: u64) -> OrderResult {
    let s = geometric_sum(m, n).apply(t);
    if s[0].is_zero() && s[1].is_zero() {
        return OrderResult::Finite(n);
    }
    match m.ctx().modulus() {
        Some(p) => n.checked_mul(p).map_or(OrderResult::Infinite, OrderResult::Finite),
        None => OrderResult::Infinite,
    }
}

/// Exact order of a basic map. The matrix `(α γ; 0 β)` has order
/// `lcm(ord α, ord β)` when `α ≠ β` or `γ = 0`; when `α = β` and `γ ≠ 0` the
/// unipotent part adds a factor of the characteristic (infinite over Q).
pub fn order_of_basic(b: &BasicMap) -> OrderResult {
    let (Some(oa), Some(ob)) = (scalar_order(&b.alpha), scalar_order(&b.beta)) else {
        return OrderResult::Infinite;
    };
    let mut n = arith::lcm(oa, ob).expect("orders fit in u64");
    if b.alpha == b.beta && !b.gamma.is_zero() {
        match b.ctx().modulus() {
            Some(p) => n *= p,
            None => return OrderResult::Infinite,
        }
    }
    let a = b.to_affine();
    extend_by_translation(&a.m, &a.t, n)
}

/// Order of an invertible 2×2 matrix, `None` when it exceeds `cap`. Over Q a
/// finite order is one of 1, 2, 3, 4, 6, so powers up to 12 decide it.
fn matrix_order(m: &Matrix2, cap: u64) -> Option<OrderResult> {
    let limit = if m.ctx().is_rationals() { 12 } else { cap };
    let mut acc = m.clone();
    for k in 1..=limit {
        if acc.is_identity() {
            return Some(OrderResult::Finite(k));
        }
        acc = acc.mul(m);
    }
    m.ctx().is_rationals().then_some(OrderResult::Infinite)
}

fn affine_order(a: &AffineMap, cap: u64) -> Option<OrderResult> {
    match matrix_order(&a.m, cap)? {
        OrderResult::Finite(n) => Some(extend_by_translation(&a.m, &a.t, n)),
        OrderResult::Infinite => Some(OrderResult::Infinite),
    }
}

/// `e^n = (α^n x + P_n(y), β^n y + v_n)`; once `α^n = β^n = 1` what is left is
/// `(x + Q(y), y + w)`, whose order is 1, `p` or `p²` over F_p.
fn elementary_order(e: &ElementaryMap, cap: u64) -> Option<OrderResult> {
    let ctx = e.ctx();
    let (Some(oa), Some(ob)) = (scalar_order(&e.alpha), scalar_order(&e.beta)) else {
        return Some(OrderResult::Infinite);
    };
    let n0 = arith::lcm(oa, ob)?;
    if n0 > cap {
        return None;
    }
    let mut pow = e.clone();
    for _ in 1..n0 {
        pow = pow.compose(e);
    }
    let (q, w) = (pow.p.clone(), pow.v.clone());
    if q.is_zero() && w.is_zero() {
        return Some(OrderResult::Finite(n0));
    }
    let Some(p) = ctx.modulus() else {
        return Some(OrderResult::Infinite);
    };
    if w.is_zero() {
        return Some(OrderResult::Finite(n0 * p));
    }
    // (x + Q(y), y + w)^p = (x + Σ_j Q(y + j w), y)
    let one = Scalar::one(ctx);
    let mut sum = UniPoly::zero(ctx);
    for j in 0..p {
        let shift = &w * &Scalar::from_int(ctx, j as i64);
        sum = &sum + &q.compose_affine(&one, &shift);
    }
    let k = if sum.is_zero() { p } else { p * p };
    n0.checked_mul(k).map(OrderResult::Finite)
}

/// Order of an element given in normal form. Cyclically reduced elements have
/// infinite order; basic ones use the closed formula; elements conjugate into
/// one factor are analysed letter-wise, `None` (unknown) past `cap`.
pub fn order_of_element(nf: &NormalForm, cap: u64) -> Option<OrderResult> {
    match cyclically_reduce(nf) {
        CRStatus::CR { .. } => Some(OrderResult::Infinite),
        CRStatus::Basic => Some(order_of_basic(nf.b())),
        CRStatus::InFactorConjugate { letter, .. } => match letter {
            Letter::Basic(b) => Some(order_of_basic(&b)),
            Letter::Affine(a) => affine_order(&a, cap),
            Letter::Elementary(e) => elementary_order(&e, cap),
        },
    }
}
