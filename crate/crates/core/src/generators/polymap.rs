use std::fmt;

use crate::algebra::{bipoly_compose, BiPoly, FieldCtx, Scalar};
use crate::error::{same_field, Result};

/// A polynomial map `(x, y) ↦ (P(x, y), Q(x, y))`. Nothing here guarantees
/// invertibility.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyMap {
    p: BiPoly,
    q: BiPoly,
}

impl PolyMap {
    pub fn new(p: BiPoly, q: BiPoly) -> Result<Self> {
        same_field(p.ctx(), q.ctx())?;
        Ok(PolyMap { p, q })
    }

    pub fn identity(ctx: FieldCtx) -> Self {
        PolyMap { p: BiPoly::x(ctx), q: BiPoly::y(ctx) }
    }

    pub fn ctx(&self) -> FieldCtx {
        self.p.ctx()
    }

    pub fn p(&self) -> &BiPoly {
        &self.p
    }

    pub fn q(&self) -> &BiPoly {
        &self.q
    }

    pub fn is_identity(&self) -> bool {
        *self == PolyMap::identity(self.ctx())
    }

    /// `self ∘ g`: apply `g`, then `self`.
    pub fn compose(&self, g: &PolyMap) -> Result<PolyMap> {
        compose(self, g)
    }

    pub fn apply(&self, pt: &(Scalar, Scalar)) -> Result<(Scalar, Scalar)> {
        apply(self, pt)
    }

    pub fn jacobian_det(&self) -> BiPoly {
        jacobian_det(self)
    }

    /// Degree of the map: the larger component degree (0 for constant maps).
    pub fn degree(&self) -> u32 {
        let d = |f: &BiPoly| f.total_degree().unwrap_or(0);
        d(&self.p).max(d(&self.q))
    }

    /// Jacobian matrix entries `[[P_x, P_y], [Q_x, Q_y]]` at a point.
    pub fn jacobian_at(&self, pt: &(Scalar, Scalar)) -> Result<[[Scalar; 2]; 2]> {
        let e = |f: &BiPoly| f.eval(&pt.0, &pt.1);
        Ok([[e(&self.p.deriv_x())?, e(&self.p.deriv_y())?], [e(&self.q.deriv_x())?, e(&self.q.deriv_y())?]])
    }
}

/// `f ∘ g`: the result applies `g` first, then `f`.
pub fn compose(f: &PolyMap, g: &PolyMap) -> Result<PolyMap> {
    same_field(f.ctx(), g.ctx())?;
    Ok(PolyMap { p: bipoly_compose(&f.p, &g.p, &g.q)?, q: bipoly_compose(&f.q, &g.p, &g.q)? })
}

pub fn apply(f: &PolyMap, pt: &(Scalar, Scalar)) -> Result<(Scalar, Scalar)> {
    Ok((f.p.eval(&pt.0, &pt.1)?, f.q.eval(&pt.0, &pt.1)?))
}

/// `P_x Q_y − P_y Q_x` as a polynomial; constancy is the caller's concern.
pub fn jacobian_det(f: &PolyMap) -> BiPoly {
    &(&f.p.deriv_x() * &f.q.deriv_y()) - &(&f.p.deriv_y() * &f.q.deriv_x())
}

impl fmt::Display for PolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.p, self.q)
    }
}

impl fmt::Debug for PolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyMap{} over {}", self, self.ctx())
    }
}
