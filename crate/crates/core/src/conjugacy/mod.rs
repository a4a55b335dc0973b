//! Conjugacy of cyclically reduced elements, conjugacy of linear maps,
//! linearization of involutions, and orders of elements of finite order.

mod crnf;
mod linear;
pub(crate) mod mpoly;
mod order;
pub(crate) mod solve;

pub use crate::algebra::OrderResult;
pub use crate::generators::Matrix2;
pub use crnf::{crnf_conjugacy_necessary, crnf_conjugate};
pub(crate) use crnf::{equation_stages, SymBasic, NVARS};
pub use linear::{linear_conjugate, linearize_involution, LinearInvolution};
pub use order::{order_of_basic, order_of_element, DEFAULT_ORDER_CAP};
