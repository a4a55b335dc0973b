//! Planar polynomial automorphisms over Q and F_p: normal forms in the
//! amalgamated product of the affine and elementary subgroups, conjugacy,
//! symmetries and reversing symmetries, and finite-field dynamics.
//!
//! Composition convention used throughout: `compose(f, g)` applies `g` first,
//! then `f`. Words are written left to right and applied right to left.

pub mod algebra;
pub mod amalgam;
pub mod cli;
pub mod conjugacy;
pub mod dynamics;
pub mod error;
pub mod generators;
pub mod parse;
pub mod random;
pub mod symmetry;

pub use error::{Error, Result};
