use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::arith::{factorize, is_prime, mul_mod, pow_mod};
use crate::error::{same_field, Error, Result};

/// Largest modulus accepted for prime fields. Residues then fit comfortably in
/// a `u64` and products in a `u128`.
pub const MAX_PRIME: u64 = 1 << 32;

/// The coefficient field: either the rationals or a prime field.
///
/// `p == 0` encodes the rationals; any other value is a verified prime.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct FieldCtx {
    p: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FieldKind {
    Rationals,
    PrimeField(u64),
}

impl FieldCtx {
    pub const fn rationals() -> Self {
        FieldCtx { p: 0 }
    }

    pub fn prime(p: u64) -> Result<Self> {
        if p >= MAX_PRIME {
            return Err(Error::InvalidField(format!("modulus {p} is too large (limit 2^32)")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(FieldCtx { p })
    }

    pub fn kind(&self) -> FieldKind {
        if self.p == 0 {
            FieldKind::Rationals
        } else {
            FieldKind::PrimeField(self.p)
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn is_rationals(&self) -> bool {
        self.p == 0
    }

    /// The modulus of a prime field.
    pub fn modulus(&self) -> Option<u64> {
        (self.p != 0).then_some(self.p)
    }

    pub fn require_odd_characteristic(&self) -> Result<()> {
        if self.p == 2 {
            Err(Error::CharacteristicTwo)
        } else {
            Ok(())
        }
    }

    /// Every element of a prime field, in residue order.
    pub fn elements(&self) -> Option<impl Iterator<Item = Scalar> + '_> {
        let p = self.modulus()?;
        let ctx = *self;
        Some((0..p).map(move |r| Scalar::from_residue(ctx, r)))
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            FieldKind::Rationals => write!(f, "Q"),
            FieldKind::PrimeField(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for FieldCtx {
    type Err = Error;

    /// Accepts `Q` or `Fp:<prime>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" {
            return Ok(FieldCtx::rationals());
        }
        let digits = s
            .strip_prefix("Fp:")
            .or_else(|| s.strip_prefix("F"))
            .ok_or_else(|| Error::InvalidField(format!("expected `Q` or `Fp:<prime>`, got `{s}`")))?;
        let p: u64 = digits.parse().map_err(|_| Error::InvalidField(format!("bad modulus `{digits}`")))?;
        FieldCtx::prime(p)
    }
}

/// Least `n >= 1` with `u^n = 1`, or infinite.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum OrderResult {
    Finite(u64),
    Infinite,
}

impl fmt::Display for OrderResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderResult::Finite(n) => write!(f, "{n}"),
            OrderResult::Infinite => write!(f, "infinite"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Rat(BigRational),
    Mod(u64),
}

/// An exact field element tagged with its field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    ctx: FieldCtx,
    repr: Repr,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl Scalar {
    pub fn zero(ctx: FieldCtx) -> Self {
        Scalar::from_int(ctx, 0)
    }

    pub fn one(ctx: FieldCtx) -> Self {
        Scalar::from_int(ctx, 1)
    }

    pub fn from_int(ctx: FieldCtx, n: i64) -> Self {
        match ctx.modulus() {
            None => Scalar { ctx, repr: Repr::Rat(BigRational::from_integer(n.into())) },
            Some(p) => Scalar { ctx, repr: Repr::Mod((n as i128).rem_euclid(p as i128) as u64) },
        }
    }

    pub fn from_bigint(ctx: FieldCtx, n: &BigInt) -> Self {
        match ctx.modulus() {
            None => Scalar { ctx, repr: Repr::Rat(BigRational::from_integer(n.clone())) },
            Some(p) => Scalar { ctx, repr: Repr::Mod(reduce_bigint(n, p)) },
        }
    }

    /// `num / den` as a field element. Over a prime field a denominator
    /// divisible by p has no meaning and is rejected.
    pub fn from_fraction(ctx: FieldCtx, num: &BigInt, den: &BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match ctx.modulus() {
            None => Ok(Scalar { ctx, repr: Repr::Rat(BigRational::new(num.clone(), den.clone())) }),
            Some(p) => {
                let d = reduce_bigint(den, p);
                if d == 0 {
                    return Err(Error::FieldLiteral(format!("{num}/{den} has denominator divisible by {p}")));
                }
                let n = reduce_bigint(num, p);
                Ok(Scalar { ctx, repr: Repr::Mod(mul_mod(n, pow_mod(d, p - 2, p), p)) })
            }
        }
    }

    pub fn from_rational(ctx: FieldCtx, q: &BigRational) -> Result<Self> {
        Scalar::from_fraction(ctx, q.numer(), q.denom())
    }

    pub fn from_residue(ctx: FieldCtx, r: u64) -> Self {
        match ctx.modulus() {
            None => Scalar::from_bigint(ctx, &BigInt::from(r)),
            Some(p) => Scalar { ctx, repr: Repr::Mod(r % p) },
        }
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Rat(q) => q.is_zero(),
            Repr::Mod(r) => *r == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Rat(q) => q.is_one(),
            Repr::Mod(r) => *r == 1,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.repr {
            Repr::Rat(q) => Some(q),
            Repr::Mod(_) => None,
        }
    }

    pub fn residue(&self) -> Option<u64> {
        match &self.repr {
            Repr::Rat(_) => None,
            Repr::Mod(r) => Some(*r),
        }
    }

    /// Small integer value, if the element is one (over a prime field: the residue).
    pub fn to_i64(&self) -> Option<i64> {
        match &self.repr {
            Repr::Rat(q) if q.is_integer() => q.numer().to_i64(),
            Repr::Rat(_) => None,
            Repr::Mod(r) => i64::try_from(*r).ok(),
        }
    }

    pub fn is_negative(&self) -> bool {
        matches!(&self.repr, Repr::Rat(q) if q.is_negative())
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.repr {
            Repr::Rat(q) => Scalar { ctx: self.ctx, repr: Repr::Rat(q.recip()) },
            Repr::Mod(r) => {
                let p = self.ctx.p;
                Scalar { ctx: self.ctx, repr: Repr::Mod(pow_mod(*r, p - 2, p)) }
            }
        })
    }

    pub fn pow(&self, e: u64) -> Scalar {
        match &self.repr {
            Repr::Rat(q) => {
                let mut acc = BigRational::one();
                let mut base = q.clone();
                let mut e = e;
                while e > 0 {
                    if e & 1 == 1 {
                        acc *= &base;
                    }
                    e >>= 1;
                    if e > 0 {
                        base = &base * &base;
                    }
                }
                Scalar { ctx: self.ctx, repr: Repr::Rat(acc) }
            }
            Repr::Mod(r) => Scalar { ctx: self.ctx, repr: Repr::Mod(pow_mod(*r, e, self.ctx.p)) },
        }
    }

    /// Integer power allowing negative exponents.
    pub fn powi(&self, e: i64) -> Result<Scalar> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    pub fn try_add(&self, rhs: &Scalar) -> Result<Scalar> {
        field_arith(self, rhs, ArithOp::Add)
    }

    pub fn try_sub(&self, rhs: &Scalar) -> Result<Scalar> {
        field_arith(self, rhs, ArithOp::Sub)
    }

    pub fn try_mul(&self, rhs: &Scalar) -> Result<Scalar> {
        field_arith(self, rhs, ArithOp::Mul)
    }

    pub fn try_div(&self, rhs: &Scalar) -> Result<Scalar> {
        field_arith(self, rhs, ArithOp::Div)
    }

    /// Multiplicative order: least `n >= 1` with `self^n = 1`.
    pub fn mult_order(&self) -> Result<OrderResult> {
        mult_order(self)
    }
}

fn reduce_bigint(n: &BigInt, p: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

/// Exact field arithmetic with explicit error reporting.
pub fn field_arith(a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar> {
    same_field(a.ctx, b.ctx)?;
    let ctx = a.ctx;
    if op == ArithOp::Div && b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let repr = match (&a.repr, &b.repr) {
        (Repr::Rat(x), Repr::Rat(y)) => Repr::Rat(match op {
            ArithOp::Add => x + y,
            ArithOp::Sub => x - y,
            ArithOp::Mul => x * y,
            ArithOp::Div => x / y,
        }),
        (Repr::Mod(x), Repr::Mod(y)) => {
            let p = ctx.p;
            Repr::Mod(match op {
                ArithOp::Add => (x + y) % p,
                ArithOp::Sub => (x + p - y) % p,
                ArithOp::Mul => mul_mod(*x, *y, p),
                ArithOp::Div => mul_mod(*x, pow_mod(*y, p - 2, p), p),
            })
        }
        _ => unreachable!("representation always follows the context"),
    };
    Ok(Scalar { ctx, repr })
}

/// Multiplicative order of a nonzero scalar. Over the rationals only ±1 have
/// finite order.
pub fn mult_order(u: &Scalar) -> Result<OrderResult> {
    if u.is_zero() {
        return Err(Error::ZeroInput);
    }
    match &u.repr {
        Repr::Rat(q) => Ok(if q.is_one() {
            OrderResult::Finite(1)
        } else if (-q).is_one() {
            OrderResult::Finite(2)
        } else {
            OrderResult::Infinite
        }),
        Repr::Mod(r) => {
            let p = u.ctx.p;
            let mut n = p - 1;
            for (q, _) in factorize(p - 1) {
                while n.is_multiple_of(q) && pow_mod(*r, n / q, p) == 1 {
                    n /= q;
                }
            }
            Ok(OrderResult::Finite(n))
        }
    }
}

/// Whether some element squares to −1 without being ±1 itself.
///
/// In characteristic 2 we have −1 = 1, so the only square root of −1 is 1,
/// which is not a primitive fourth root; the answer there is false.
pub fn has_primitive_fourth_root(ctx: FieldCtx) -> bool {
    match ctx.modulus() {
        None => false,
        Some(p) => p % 4 == 1,
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Rat(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Repr::Mod(r) => write!(f, "{r}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self, self.ctx)
    }
}

// Operator sugar. Mixing fields here is a programming error and panics; the
// checked `try_*` methods are the fallible counterpart.
macro_rules! scalar_binop {
    ($tr:ident, $method:ident, $op:expr) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                field_arith(self, rhs, $op).unwrap_or_else(|e| panic!("scalar arithmetic: {e}"))
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

scalar_binop!(Add, add, ArithOp::Add);
scalar_binop!(Sub, sub, ArithOp::Sub);
scalar_binop!(Mul, mul, ArithOp::Mul);
scalar_binop!(Div, div, ArithOp::Div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match &self.repr {
            Repr::Rat(q) => Scalar { ctx: self.ctx, repr: Repr::Rat(-q) },
            Repr::Mod(r) => Scalar { ctx: self.ctx, repr: Repr::Mod((self.ctx.p - r) % self.ctx.p) },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}
