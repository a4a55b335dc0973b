//! Text grammar for polynomials and maps.
//!
//! ```text
//! map    := '(' expr ',' expr ')'
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' INT)?
//! atom   := INT | INT '/' INT | 'x' | 'y' | '(' expr ')'
//! ```
//!
//! Positions in errors are byte offsets into the input.

use num_bigint::BigInt;

use crate::algebra::{BiPoly, FieldCtx, Scalar, UniPoly};
use crate::error::{Error, Result};
use crate::generators::PolyMap;

/// Exponents above this are rejected rather than expanded.
pub const MAX_EXPONENT: u32 = 4096;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Frac(BigInt, BigInt),
    Var(char),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Comma,
    End,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let read_int = |i: &mut usize| -> BigInt {
        let start = *i;
        while *i < bytes.len() && bytes[*i].is_ascii_digit() {
            *i += 1;
        }
        text[start..*i].parse().expect("ascii digits")
    };
    while i < bytes.len() {
        let b = bytes[i];
        let start = i;
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                let num = read_int(&mut i);
                let mut j = i;
                while j < bytes.len() && bytes[j].is_ascii_whitespace() {
                    j += 1;
                }
                if j < bytes.len() && bytes[j] == b'/' {
                    j += 1;
                    while j < bytes.len() && bytes[j].is_ascii_whitespace() {
                        j += 1;
                    }
                    if j >= bytes.len() || !bytes[j].is_ascii_digit() {
                        return Err(Error::parse(j, "expected an integer denominator after '/'"));
                    }
                    i = j;
                    let den = read_int(&mut i);
                    out.push((start, Tok::Frac(num, den)));
                } else {
                    out.push((start, Tok::Int(num)));
                }
                continue;
            }
            b'x' | b'y' => out.push((start, Tok::Var(b as char))),
            b'+' => out.push((start, Tok::Plus)),
            b'-' => out.push((start, Tok::Minus)),
            b'*' => out.push((start, Tok::Star)),
            b'^' => out.push((start, Tok::Caret)),
            b'(' => out.push((start, Tok::LParen)),
            b')' => out.push((start, Tok::RParen)),
            b',' => out.push((start, Tok::Comma)),
            b'/' => return Err(Error::parse(start, "'/' is only allowed between integer literals")),
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(Error::parse(start, format!("unexpected character '{ch}'")));
            }
        }
        i += 1;
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    ctx: FieldCtx,
}

impl Parser {
    fn new(text: &str, ctx: FieldCtx) -> Result<Self> {
        Ok(Parser { toks: lex(text)?, at: 0, ctx })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(Error::parse(self.pos(), format!("expected {what}, found {}", describe(self.peek()))))
        }
    }

    fn expr(&mut self) -> Result<BiPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<BiPoly> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<BiPoly> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(-&self.unary()?)
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<BiPoly> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        match self.bump() {
            Tok::Int(n) => {
                let e: u32 = u32::try_from(&n)
                    .ok()
                    .filter(|&e| e <= MAX_EXPONENT)
                    .ok_or_else(|| Error::parse(pos, format!("exponent {n} exceeds {MAX_EXPONENT}")))?;
                Ok(base.pow(e))
            }
            other => Err(Error::parse(pos, format!("expected an integer exponent, found {}", describe(&other)))),
        }
    }

    fn atom(&mut self) -> Result<BiPoly> {
        let pos = self.pos();
        match self.bump() {
            Tok::Int(n) => Ok(BiPoly::constant(Scalar::from_bigint(self.ctx, &n))),
            Tok::Frac(n, d) => {
                let c = Scalar::from_fraction(self.ctx, &n, &d).map_err(|e| match e {
                    Error::DivisionByZero => Error::FieldLiteral(format!("{n}/{d} at position {pos}")),
                    Error::FieldLiteral(m) => Error::FieldLiteral(format!("{m} (position {pos})")),
                    other => other,
                })?;
                Ok(BiPoly::constant(c))
            }
            Tok::Var('x') => Ok(BiPoly::x(self.ctx)),
            Tok::Var(_) => Ok(BiPoly::y(self.ctx)),
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            other => Err(Error::parse(pos, format!("expected a term, found {}", describe(&other)))),
        }
    }

    fn finish(&mut self) -> Result<()> {
        self.expect(Tok::End, "end of input")
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("'{n}'"),
        Tok::Frac(n, d) => format!("'{n}/{d}'"),
        Tok::Var(c) => format!("'{c}'"),
        Tok::Plus => "'+'".into(),
        Tok::Minus => "'-'".into(),
        Tok::Star => "'*'".into(),
        Tok::Caret => "'^'".into(),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::Comma => "','".into(),
        Tok::End => "end of input".into(),
    }
}

pub fn parse_bipoly(text: &str, ctx: FieldCtx) -> Result<BiPoly> {
    let mut p = Parser::new(text, ctx)?;
    let out = p.expr()?;
    p.finish()?;
    Ok(out)
}

/// Parses a constant expression such as `-3/4` or `2^5`.
pub fn parse_scalar(text: &str, ctx: FieldCtx) -> Result<Scalar> {
    parse_bipoly(text, ctx)?
        .as_constant()
        .ok_or_else(|| Error::InvalidArgument(format!("expected a scalar, found `{text}`")))
}

/// Parses a polynomial in `y` alone (the form used for elementary letters).
pub fn parse_unipoly_y(text: &str, ctx: FieldCtx) -> Result<UniPoly> {
    let f = parse_bipoly(text, ctx)?;
    f.to_unipoly_y().ok_or_else(|| Error::parse(text.find('x').unwrap_or(0), "expected a polynomial in y only"))
}

/// Parses `(expr, expr)`.
pub fn parse_map_expr(text: &str, ctx: FieldCtx) -> Result<PolyMap> {
    let mut p = Parser::new(text, ctx)?;
    p.expect(Tok::LParen, "'(' opening a map")?;
    let first = p.expr()?;
    p.expect(Tok::Comma, "','")?;
    let second = p.expr()?;
    p.expect(Tok::RParen, "')' closing a map")?;
    p.finish()?;
    Ok(PolyMap::new(first, second).expect("parsed in one field"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldCtx {
        FieldCtx::rationals()
    }

    #[test]
    fn precedence() {
        let a = parse_bipoly("-x^2", q()).unwrap();
        assert_eq!(a, -&BiPoly::x(q()).pow(2));
        let b = parse_bipoly("2*x + 3*y*y - 1", q()).unwrap();
        assert_eq!(b.to_string(), "3*y^2 + 2*x - 1");
        let c = parse_bipoly("(x+y)^2", q()).unwrap();
        assert_eq!(c.to_string(), "x^2 + 2*x*y + y^2");
        let d = parse_bipoly("x - -y", q()).unwrap();
        assert_eq!(d.to_string(), "x + y");
    }

    #[test]
    fn fraction_literals() {
        let a = parse_bipoly("1/2*y^2 + 3 / 4", q()).unwrap();
        assert_eq!(a.to_string(), "1/2*y^2 + 3/4");
        let f7 = FieldCtx::prime(7).unwrap();
        assert!(matches!(parse_bipoly("1/7", f7), Err(Error::FieldLiteral(_))));
        assert!(matches!(parse_bipoly("1/0", q()), Err(Error::FieldLiteral(_))));
        assert_eq!(parse_bipoly("1/2", f7).unwrap().to_string(), "4");
    }

    #[test]
    fn error_positions() {
        match parse_bipoly("x + * y", q()) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        match parse_bipoly("x + z", q()) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        match parse_map_expr("(x, y", q()) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("{other:?}"),
        }
        assert!(parse_bipoly("x / y", q()).is_err());
        assert!(parse_bipoly("x^y", q()).is_err());
        assert!(parse_bipoly("x^99999", q()).is_err());
    }

    #[test]
    fn maps() {
        let m = parse_map_expr("(y, -x + y^2 + 1)", q()).unwrap();
        assert_eq!(m.to_string(), "(y, y^2 - x + 1)");
        let m = parse_map_expr(" ( x+y^3 ,y ) ", q()).unwrap();
        assert_eq!(m.to_string(), "(y^3 + x, y)");
    }

    #[test]
    fn unipoly_only_in_y() {
        assert_eq!(parse_unipoly_y("y^3 - 2*y", q()).unwrap().to_string(), "y^3 - 2*y");
        assert!(parse_unipoly_y("x*y", q()).is_err());
    }
}
