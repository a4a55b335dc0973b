//! Symmetries and reversing symmetries of cyclically reduced elements:
//! exact checks, point-reflection symmetry detection, necessary conditions
//! for reversibility, constructions of reversible forms, and group labels.

mod build;
mod detect;
mod group;

use std::fmt;

use crate::algebra::{FieldCtx, Scalar};
use crate::amalgam::{parse_normal_form, NormalForm, Word};
use crate::error::{Error, Result};
use crate::generators::{BasicMap, PolyMap};
use crate::parse::parse_scalar;

pub use build::{build_reversible_involutory, build_reversible_order4, InvolutoryForm, InvolutoryParams, Order4Params};
pub(crate) use detect::reversor_order_nf;
pub use detect::{
    commutes, fixed_point_spectrum_check, involutory_symmetry_of_crnf, is_reversor, is_symmetry, reverses,
    reversibility_necessary, reversor_order, symmetry_nf_check,
};
pub use group::{classify_reversing_group, Certificates, GroupStructureTag};

/// The point reflection `(−x + u, −y + v)` commuting with some element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymWitness {
    pub u: Scalar,
    pub v: Scalar,
}

impl SymWitness {
    pub fn to_basic(&self) -> BasicMap {
        let m1 = -Scalar::one(self.u.ctx());
        BasicMap::new(m1.clone(), m1, Scalar::zero(self.u.ctx()), self.u.clone(), self.v.clone()).expect("invertible")
    }

    pub fn to_word(&self) -> Word {
        Word::single(self.to_basic())
    }

    pub fn to_polymap(&self) -> PolyMap {
        self.to_basic().to_polymap()
    }
}

impl fmt::Display for SymWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SYM u={} v={}", self.u, self.v)
    }
}

/// A reversor `r` (with `r ∘ f ∘ r⁻¹ = f⁻¹`) and its exact order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReversorWitness {
    pub r: NormalForm,
    pub order: u64,
}

impl fmt::Display for ReversorWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = self.r.serialize();
        let word: Vec<&str> = text.lines().map(str::trim).collect();
        write!(f, "REV order={} word={}", self.order, word.join("; "))
    }
}

/// One line of certificate text.
#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)] // parsed a handful at a time
pub enum Certificate {
    Sym(SymWitness),
    Rev(ReversorWitness),
    Group(GroupStructureTag),
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::Sym(s) => s.fmt(f),
            Certificate::Rev(r) => r.fmt(f),
            Certificate::Group(g) => write!(f, "GROUP tag={g}"),
        }
    }
}

fn field<'a>(rest: &'a str, key: &str) -> Result<&'a str> {
    rest.strip_prefix(key)
        .ok_or_else(|| Error::InvalidArgument(format!("expected `{key}` in certificate, found `{rest}`")))
}

/// Parses one `SYM`, `REV` or `GROUP` line.
pub fn parse_certificate(line: &str, ctx: FieldCtx) -> Result<Certificate> {
    let line = line.trim();
    let (head, rest) = line.split_once(' ').unwrap_or((line, ""));
    let rest = rest.trim();
    match head {
        "SYM" => {
            let (u, v) = rest
                .split_once(' ')
                .ok_or_else(|| Error::InvalidArgument(format!("expected `SYM u=<u> v=<v>`, found `{line}`")))?;
            let u = parse_scalar(field(u.trim(), "u=")?, ctx)?;
            let v = parse_scalar(field(v.trim(), "v=")?, ctx)?;
            Ok(Certificate::Sym(SymWitness { u, v }))
        }
        "REV" => {
            let (order, word) = rest
                .split_once(' ')
                .ok_or_else(|| Error::InvalidArgument(format!("expected `REV order=<n> word=<nf>`, found `{line}`")))?;
            let order = field(order, "order=")?
                .parse::<u64>()
                .map_err(|e| Error::InvalidArgument(format!("bad order: {e}")))?;
            let r = parse_normal_form(field(word.trim(), "word=")?, ctx)?;
            Ok(Certificate::Rev(ReversorWitness { r, order }))
        }
        "GROUP" => Ok(Certificate::Group(field(rest, "tag=")?.parse()?)),
        _ => Err(Error::InvalidArgument(format!("unknown certificate `{head}`"))),
    }
}
