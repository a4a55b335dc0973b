//! Words over the generators and the unique normal form in the amalgamated
//! product `affine *_basic elementary`.

mod cyclic;
mod decompose;
mod normal_form;
mod serial;
mod word;

pub use cyclic::{cyclically_reduce, CRStatus};
pub use decompose::{decompose, decompose_raw};
pub use normal_form::{
    invert_nf, length, nf_degree, normalize, poly_degree, split_affine, split_elementary, NfLetter, NormalForm,
    PolyDegree,
};
pub use serial::{parse_normal_form, parse_word, word_inline};
pub use word::{word_to_polymap, Word};
