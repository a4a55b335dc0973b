//! Text form of letters, words and normal forms.
//!
//! One letter per line (`;` also separates letters):
//!
//! ```text
//! B alpha beta gamma u v      basic map (αx + γy + u, βy + v)
//! A beta                      affine representative (y, x + βy)
//! E <poly in y>               elementary representative (x + y²P(y), y)
//! AFF m11 m12 m21 m22 t1 t2   general affine map
//! ELE alpha beta v <poly>     general elementary map (αx + P(y), βy + v)
//! ```

use super::normal_form::{NfLetter, NormalForm};
use super::word::Word;
use crate::algebra::{FieldCtx, Scalar};
use crate::error::{Error, Result};
use crate::generators::{AffineMap, BasicMap, CosetRepA, CosetRepE, ElementaryMap, Letter, Matrix2};
use crate::parse::{parse_scalar, parse_unipoly_y};

fn scalars(toks: &[&str], n: usize, line: &str, ctx: FieldCtx) -> Result<Vec<Scalar>> {
    if toks.len() != n {
        return Err(Error::InvalidArgument(format!("expected {n} scalars in `{line}`")));
    }
    toks.iter().map(|t| parse_scalar(t, ctx)).collect()
}

/// A parsed line: either a normal-form letter or a general letter.
enum Item {
    B(BasicMap),
    Rep(NfLetter),
    General(Letter),
}

fn parse_item(line: &str, ctx: FieldCtx) -> Result<Item> {
    let line = line.trim();
    let (tag, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
    let rest = rest.trim();
    let toks: Vec<&str> = rest.split_whitespace().collect();
    match tag {
        "B" => {
            let s = scalars(&toks, 5, line, ctx)?;
            let [a, b, g, u, v]: [Scalar; 5] = s.try_into().expect("five scalars");
            Ok(Item::B(BasicMap::new(a, b, g, u, v)?))
        }
        "A" => {
            let s = scalars(&toks, 1, line, ctx)?;
            Ok(Item::Rep(NfLetter::A(CosetRepA::new(s[0].clone()))))
        }
        "E" => Ok(Item::Rep(NfLetter::E(CosetRepE::new(parse_unipoly_y(rest, ctx)?)?))),
        "AFF" => {
            let s = scalars(&toks, 6, line, ctx)?;
            let [m11, m12, m21, m22, t1, t2]: [Scalar; 6] = s.try_into().expect("six scalars");
            Ok(Item::General(Letter::Affine(AffineMap::new(Matrix2::new(m11, m12, m21, m22)?, [t1, t2])?)))
        }
        "ELE" => {
            if toks.len() < 4 {
                return Err(Error::InvalidArgument(format!("expected `ELE alpha beta v poly`, found `{line}`")));
            }
            let s = scalars(&toks[..3], 3, line, ctx)?;
            let poly_text = toks[3..].join(" ");
            let p = parse_unipoly_y(&poly_text, ctx)?;
            let [a, b, v]: [Scalar; 3] = s.try_into().expect("three scalars");
            Ok(Item::General(Letter::Elementary(ElementaryMap::new(a, b, v, p)?)))
        }
        _ => Err(Error::InvalidArgument(format!("unknown letter tag `{tag}`"))),
    }
}

fn lines(text: &str) -> impl Iterator<Item = &str> {
    text.split(['\n', ';']).map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'))
}

/// Parses any sequence of letters.
pub fn parse_word(text: &str, ctx: FieldCtx) -> Result<Word> {
    let mut letters = Vec::new();
    for line in lines(text) {
        letters.push(match parse_item(line, ctx)? {
            Item::B(b) => Letter::Basic(b),
            Item::Rep(r) => r.to_letter(),
            Item::General(l) => l,
        });
    }
    Word::new(ctx, letters)
}

/// Parses the normal-form serialization; the letters must already be in
/// normal form (optional leading `B`, then alternating `A`/`E`).
pub fn parse_normal_form(text: &str, ctx: FieldCtx) -> Result<NormalForm> {
    let mut b = None;
    let mut letters = Vec::new();
    for (i, line) in lines(text).enumerate() {
        match parse_item(line, ctx)? {
            Item::B(basic) if i == 0 => b = Some(basic),
            Item::B(_) => return Err(Error::InvalidArgument("`B` may only appear first".into())),
            Item::Rep(r) => letters.push(r),
            Item::General(_) => {
                return Err(Error::InvalidArgument("general letters are not allowed in a normal form".into()))
            }
        }
    }
    NormalForm::from_parts(b.unwrap_or_else(|| BasicMap::identity(ctx)), letters)
}

/// Renders a word with letters separated by `"; "`, one line.
pub fn word_inline(w: &Word) -> String {
    w.letters().iter().map(|l| l.to_string()).collect::<Vec<_>>().join("; ")
}
