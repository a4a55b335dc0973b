use std::fmt;
use std::str::FromStr;

use super::detect::{commutes, involutory_symmetry_of_crnf, reverses, reversibility_necessary, reversor_order_nf};
use super::{ReversorWitness, SymWitness};
use crate::amalgam::NormalForm;
use crate::error::{Error, Result};

/// Which group the symmetries and reversors of an element generate, as far
/// as the certificates show.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupStructureTag {
    Cinf,
    C2xCinf,
    Dinf,
    CinfRtimesC4,
    CinfxC2RtimesC2,
    UnknownOrIrreversible,
}

const TAGS: [(GroupStructureTag, &str); 6] = [
    (GroupStructureTag::Cinf, "Cinf"),
    (GroupStructureTag::C2xCinf, "C2xCinf"),
    (GroupStructureTag::Dinf, "Dinf"),
    (GroupStructureTag::CinfRtimesC4, "CinfRtimesC4"),
    (GroupStructureTag::CinfxC2RtimesC2, "CinfxC2RtimesC2"),
    (GroupStructureTag::UnknownOrIrreversible, "UnknownOrIrreversible"),
];

impl fmt::Display for GroupStructureTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = TAGS.iter().find(|(t, _)| t == self).map(|(_, n)| *n).expect("every tag is named");
        f.write_str(name)
    }
}

impl FromStr for GroupStructureTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TAGS.iter()
            .find(|(_, n)| *n == s.trim())
            .map(|(t, _)| *t)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown group tag `{s}`")))
    }
}

#[derive(Clone, Debug, Default)]
pub struct Certificates {
    pub sym: Option<SymWitness>,
    pub revs: Vec<ReversorWitness>,
}

fn inconsistent(msg: impl Into<String>) -> Error {
    Error::InconsistentCertificates(msg.into())
}

/// Labels the reversing symmetry group of the cyclically reduced `f` from
/// verified certificates. Every certificate is re-checked against `f`.
///
/// With no certificates the answer is `Cinf` only when absence is proved:
/// `f` fails the necessary reversibility test and has no point-reflection
/// symmetry. Otherwise it is `UnknownOrIrreversible`.
pub fn classify_reversing_group(f: &NormalForm, certs: &Certificates) -> Result<GroupStructureTag> {
    let ctx = f.ctx();
    if !ctx.is_rationals() {
        return Err(Error::RationalsRequired);
    }
    if !f.is_crnf() {
        return Err(Error::NotCyclicallyReduced);
    }
    let fw = f.to_word();
    if let Some(s) = &certs.sym {
        if s.u.ctx() != ctx || !commutes(&fw, &s.to_word()) {
            return Err(inconsistent(format!("`{s}` does not commute with the element")));
        }
    }
    let mut involutory = false;
    let mut order4 = false;
    for rev in &certs.revs {
        if rev.r.ctx() != ctx || !reverses(&fw, &rev.r.to_word()) {
            return Err(inconsistent(format!("`{rev}` does not reverse the element")));
        }
        let actual = reversor_order_nf(&rev.r, 8).map_err(|e| inconsistent(e.to_string()))?;
        if actual != rev.order {
            return Err(inconsistent(format!("stated order {} but the reversor has order {actual}", rev.order)));
        }
        if actual == 4 {
            let sq = rev.r.compose(&rev.r)?;
            if !commutes(&fw, &sq.to_word()) {
                return Err(inconsistent("square of an order-4 reversor is not a symmetry"));
            }
            order4 = true;
        } else {
            involutory = true;
        }
    }
    let has_sym = certs.sym.is_some();
    Ok(match (order4, involutory, has_sym) {
        (true, true, _) => GroupStructureTag::CinfxC2RtimesC2,
        (true, false, _) => GroupStructureTag::CinfRtimesC4,
        (false, true, true) => GroupStructureTag::CinfxC2RtimesC2,
        (false, true, false) => GroupStructureTag::Dinf,
        (false, false, true) => GroupStructureTag::C2xCinf,
        (false, false, false) => {
            let no_sym = matches!(involutory_symmetry_of_crnf(f), Ok(None));
            if no_sym && !reversibility_necessary(f)? {
                GroupStructureTag::Cinf
            } else {
                GroupStructureTag::UnknownOrIrreversible
            }
        }
    })
}
