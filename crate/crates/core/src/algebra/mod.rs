//! Exact scalars and polynomials over the rationals or a prime field.

pub mod arith;
mod bipoly;
mod field;
mod unipoly;

pub use bipoly::{bipoly_compose, leading_form, total_degree, BiPoly};
pub use field::{
    field_arith, has_primitive_fourth_root, mult_order, ArithOp, FieldCtx, FieldKind, OrderResult, Scalar, MAX_PRIME,
};
pub use unipoly::{is_odd_poly, UniPoly};
