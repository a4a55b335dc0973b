use super::normal_form::{normalize, NfLetter, NormalForm};
use super::word::Word;
use crate::generators::Letter;

/// Outcome of cyclic reduction. In both conjugate cases
/// `conjugator ∘ result ∘ conjugator⁻¹` equals the input.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CRStatus {
    /// The element is basic (length 0).
    Basic,
    /// Conjugate to a single affine or elementary letter.
    InFactorConjugate { conjugator: Word, letter: Letter },
    /// Conjugate to a cyclically reduced normal form.
    CR { conjugator: Word, crnf: NormalForm },
}

/// Repeatedly conjugates by the rightmost letter while the outer letters share
/// a factor (odd length), until the length is even or a single letter remains.
pub fn cyclically_reduce(nf: &NormalForm) -> CRStatus {
    let ctx = nf.ctx();
    if nf.is_basic() {
        return CRStatus::Basic;
    }
    let mut conj = Word::empty(ctx);
    let mut cur = nf.clone();
    loop {
        let n = cur.length();
        if n.is_multiple_of(2) {
            return CRStatus::CR { conjugator: normalize(&conj).to_word(), crnf: cur };
        }
        if n == 1 {
            let b = cur.b();
            let letter = match &cur.letters()[0] {
                NfLetter::A(a) => Letter::Affine(b.to_affine().compose(&a.to_affine())),
                NfLetter::E(e) => Letter::Elementary(b.to_elementary().compose(&e.to_elementary())),
            };
            return CRStatus::InFactorConjugate { conjugator: normalize(&conj).to_word(), letter };
        }
        // cur = c⁻¹ ∘ (c ∘ cur ∘ c⁻¹) ∘ c with c the rightmost letter.
        let c = cur.letters()[n - 1].to_letter();
        let mut w = Word::single(c.clone());
        w = w.concat(&cur.to_word());
        w.push(c.inverse());
        cur = normalize(&w);
        conj.push(c.inverse());
    }
}
