use std::fmt;

use crate::algebra::{FieldCtx, Scalar};
use crate::error::{same_field, Error, Result};

/// A 2×2 matrix `[[m11, m12], [m21, m22]]` acting on column vectors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix2 {
    pub m11: Scalar,
    pub m12: Scalar,
    pub m21: Scalar,
    pub m22: Scalar,
}

impl Matrix2 {
    pub fn new(m11: Scalar, m12: Scalar, m21: Scalar, m22: Scalar) -> Result<Self> {
        let ctx = m11.ctx();
        for s in [&m12, &m21, &m22] {
            same_field(ctx, s.ctx())?;
        }
        Ok(Matrix2 { m11, m12, m21, m22 })
    }

    pub fn from_ints(ctx: FieldCtx, m: [[i64; 2]; 2]) -> Self {
        let s = |n| Scalar::from_int(ctx, n);
        Matrix2 { m11: s(m[0][0]), m12: s(m[0][1]), m21: s(m[1][0]), m22: s(m[1][1]) }
    }

    pub fn identity(ctx: FieldCtx) -> Self {
        Matrix2::from_ints(ctx, [[1, 0], [0, 1]])
    }

    pub fn scalar(c: Scalar) -> Self {
        let z = Scalar::zero(c.ctx());
        Matrix2 { m11: c.clone(), m12: z.clone(), m21: z, m22: c }
    }

    /// The swap `(0 1; 1 0)`.
    pub fn swap(ctx: FieldCtx) -> Self {
        Matrix2::from_ints(ctx, [[0, 1], [1, 0]])
    }

    /// Quarter turn `(0 −1; 1 0)`.
    pub fn rotation(ctx: FieldCtx) -> Self {
        Matrix2::from_ints(ctx, [[0, -1], [1, 0]])
    }

    pub fn ctx(&self) -> FieldCtx {
        self.m11.ctx()
    }

    pub fn det(&self) -> Scalar {
        &(&self.m11 * &self.m22) - &(&self.m12 * &self.m21)
    }

    pub fn trace(&self) -> Scalar {
        &self.m11 + &self.m22
    }

    pub fn is_identity(&self) -> bool {
        self.m11.is_one() && self.m22.is_one() && self.m12.is_zero() && self.m21.is_zero()
    }

    pub fn is_scalar(&self) -> bool {
        self.m12.is_zero() && self.m21.is_zero() && self.m11 == self.m22
    }

    pub fn mul(&self, o: &Matrix2) -> Matrix2 {
        Matrix2 {
            m11: &(&self.m11 * &o.m11) + &(&self.m12 * &o.m21),
            m12: &(&self.m11 * &o.m12) + &(&self.m12 * &o.m22),
            m21: &(&self.m21 * &o.m11) + &(&self.m22 * &o.m21),
            m22: &(&self.m21 * &o.m12) + &(&self.m22 * &o.m22),
        }
    }

    pub fn add(&self, o: &Matrix2) -> Matrix2 {
        Matrix2 { m11: &self.m11 + &o.m11, m12: &self.m12 + &o.m12, m21: &self.m21 + &o.m21, m22: &self.m22 + &o.m22 }
    }

    pub fn sub(&self, o: &Matrix2) -> Matrix2 {
        Matrix2 { m11: &self.m11 - &o.m11, m12: &self.m12 - &o.m12, m21: &self.m21 - &o.m21, m22: &self.m22 - &o.m22 }
    }

    pub fn inverse(&self) -> Result<Matrix2> {
        let d = self.det();
        if d.is_zero() {
            return Err(Error::Singular);
        }
        let di = d.inv()?;
        Ok(Matrix2 { m11: &self.m22 * &di, m12: -&(&self.m12 * &di), m21: -&(&self.m21 * &di), m22: &self.m11 * &di })
    }

    pub fn apply(&self, v: &[Scalar; 2]) -> [Scalar; 2] {
        [&(&self.m11 * &v[0]) + &(&self.m12 * &v[1]), &(&self.m21 * &v[0]) + &(&self.m22 * &v[1])]
    }

    pub fn pow(&self, n: u64) -> Matrix2 {
        let mut acc = Matrix2::identity(self.ctx());
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

impl fmt::Display for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {}; {} {})", self.m11, self.m12, self.m21, self.m22)
    }
}

impl fmt::Debug for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix2{self}")
    }
}
