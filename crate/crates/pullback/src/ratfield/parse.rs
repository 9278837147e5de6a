//! Recursive-descent parser for rational expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := base ('^' uint)?
//! base   := int | symbol | '(' expr ')'
//! ```
//!
//! Integers are arbitrary precision and may carry a leading `-`. A `-` in
//! front of a symbol or parenthesis negates the factor. There is no
//! implicit multiplication.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::field::{ArithError, Elem, Field};
use super::poly::Poly;
use super::proj::ProjPoint;
use super::ratfunc::RatFunc;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown symbol `{name}` at byte {offset}")]
    UnknownSymbol { name: String, offset: usize },
    #[error("division by zero at byte {offset}")]
    DivisionByZero { offset: usize },
    #[error("expected {expected}, got `{text}`")]
    WrongShape { expected: &'static str, text: String },
    #[error("invalid field: {0}")]
    Field(ArithError),
}

impl ParseError {
    pub fn offset(&self) -> Option<usize> {
        match self {
            ParseError::Syntax { offset, .. }
            | ParseError::UnknownSymbol { offset, .. }
            | ParseError::DivisionByZero { offset } => Some(*offset),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let s = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push((Tok::Int(text[s..i].parse().unwrap()), s));
        } else if c.is_ascii_alphabetic() || c == b'_' {
            let s = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(text[s..i].to_string()), s));
        } else if b"+-*/^()".contains(&c) {
            out.push((Tok::Sym(c as char), i));
            i += 1;
        } else {
            let ch = text[i..].chars().next().unwrap();
            return Err(ParseError::Syntax { offset: i, message: format!("unexpected character `{ch}`") });
        }
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    field: &'a Field,
    var: Option<&'a str>,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, what: &str) -> ParseError {
        let found = match self.peek() {
            Tok::Int(n) => format!("integer {n}"),
            Tok::Ident(s) => format!("symbol `{s}`"),
            Tok::Sym(c) => format!("`{c}`"),
            Tok::End => "end of input".to_string(),
        };
        ParseError::Syntax { offset: self.offset(), message: format!("expected {what}, found {found}") }
    }

    fn expr(&mut self) -> Result<RatFunc, ParseError> {
        let mut acc = self.term()?;
        while let Tok::Sym(c @ ('+' | '-')) = *self.peek() {
            self.bump();
            let rhs = self.term()?;
            acc = if c == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc, ParseError> {
        let mut acc = self.factor()?;
        while let Tok::Sym(c @ ('*' | '/')) = *self.peek() {
            let (_, at) = self.bump();
            let rhs = self.factor()?;
            acc = if c == '*' {
                &acc * &rhs
            } else {
                acc.checked_div(&rhs).map_err(|_| ParseError::DivisionByZero { offset: at })?
            };
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<RatFunc, ParseError> {
        if *self.peek() == Tok::Sym('-') {
            self.bump();
            if let Tok::Int(n) = self.peek().clone() {
                self.bump();
                let base = self.int(-n);
                return self.power(base);
            }
            return Ok(-self.factor()?);
        }
        let base = self.base()?;
        self.power(base)
    }

    fn power(&mut self, base: RatFunc) -> Result<RatFunc, ParseError> {
        if *self.peek() != Tok::Sym('^') {
            return Ok(base);
        }
        let (_, at) = self.bump();
        let off = self.offset();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                let e: u32 = n
                    .try_into()
                    .map_err(|_| ParseError::Syntax { offset: off, message: "exponent too large".into() })?;
                base.pow(e as i64).map_err(|_| ParseError::DivisionByZero { offset: at })
            }
            _ => Err(self.unexpected("unsigned integer exponent")),
        }
    }

    fn int(&self, n: BigInt) -> RatFunc {
        RatFunc::constant(&self.field.from_rational(BigRational::from_integer(n)))
    }

    fn base(&mut self) -> Result<RatFunc, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(self.int(n))
            }
            Tok::Ident(name) => {
                let (_, at) = self.bump();
                if Some(name.as_str()) == self.var {
                    return Ok(RatFunc::x(self.field));
                }
                match self.field.generator_named(&name) {
                    Some(g) => Ok(RatFunc::constant(&g)),
                    None => Err(ParseError::UnknownSymbol { name, offset: at }),
                }
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.expr()?;
                if *self.peek() != Tok::Sym(')') {
                    return Err(self.unexpected("`)`"));
                }
                self.bump();
                Ok(e)
            }
            _ => Err(self.unexpected("integer, symbol or `(`")),
        }
    }
}

fn run(text: &str, field: &Field, var: Option<&str>) -> Result<RatFunc, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, field, var };
    let r = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected("operator or end of input"));
    }
    Ok(r)
}

/// Parses a rational function of `var` with coefficients in `field`.
pub fn parse_ratfunc(text: &str, field: &Field, var: &str) -> Result<RatFunc, ParseError> {
    run(text, field, Some(var))
}

pub fn parse_poly(text: &str, field: &Field, var: &str) -> Result<Poly, ParseError> {
    let r = parse_ratfunc(text, field, var)?;
    if !r.den().is_one() {
        return Err(ParseError::WrongShape { expected: "a polynomial", text: text.to_string() });
    }
    Ok(r.num().clone())
}

/// Parses a constant expression in the generators of `field`.
pub fn parse_elem(text: &str, field: &Field) -> Result<Elem, ParseError> {
    let r = run(text, field, None)?;
    Ok(r.num().coeff(0))
}

/// A field element or `inf` / `oo` / `∞`.
pub fn parse_point(text: &str, field: &Field) -> Result<ProjPoint, ParseError> {
    match text.trim() {
        "inf" | "oo" | "∞" | "infinity" => Ok(ProjPoint::Infinity),
        t => Ok(ProjPoint::Finite(parse_elem(t, field)?)),
    }
}

/// Builds a tower from `;`-separated layers. Each layer is `name: poly` or
/// just `poly` in the default generator `w`; an empty string or `Q` gives
/// the rationals.
pub fn parse_field(text: &str) -> Result<Field, ParseError> {
    let mut field = Field::rationals();
    let t = text.trim();
    if t.is_empty() || t == "Q" {
        return Ok(field);
    }
    for layer in t.split(';') {
        let (name, poly) = match layer.split_once(':') {
            Some((n, p)) => (n.trim(), p),
            None => ("w", layer),
        };
        let m = parse_poly(poly, &field, name)?;
        field = Field::algebraic(&m, name).map_err(ParseError::Field)?;
    }
    Ok(field)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfield::rat;

    #[test]
    fn reduces_on_parse() {
        let q = Field::rationals();
        let r = parse_ratfunc("(z^2-1)/(z-1)", &q, "z").unwrap();
        assert_eq!(r.to_string(), "z+1");
        let r = parse_ratfunc("2/3 + 1/6", &q, "z").unwrap();
        assert_eq!(r.num().coeff(0).as_q().unwrap(), rat(5, 6));
    }

    #[test]
    fn positioned_errors() {
        let q = Field::rationals();
        assert_eq!(parse_ratfunc("z^", &q, "z").unwrap_err().offset(), Some(2));
        assert_eq!(parse_ratfunc("(z+1", &q, "z").unwrap_err().offset(), Some(4));
        assert_eq!(
            parse_ratfunc("z + y", &q, "z").unwrap_err(),
            ParseError::UnknownSymbol { name: "y".into(), offset: 4 }
        );
        assert_eq!(parse_ratfunc("2 z", &q, "z").unwrap_err().offset(), Some(2));
        assert_eq!(parse_ratfunc("1/(z-z)", &q, "z").unwrap_err(), ParseError::DivisionByZero { offset: 1 });
        assert_eq!(parse_ratfunc("z $ 1", &q, "z").unwrap_err().offset(), Some(2));
    }

    #[test]
    fn negative_literals_and_negation() {
        let q = Field::rationals();
        assert_eq!(parse_ratfunc("-3^2", &q, "z").unwrap().to_string(), "9");
        assert_eq!(parse_ratfunc("-z^2", &q, "z").unwrap().to_string(), "-z^2");
        assert_eq!(parse_ratfunc("2*-3", &q, "z").unwrap().to_string(), "-6");
    }

    #[test]
    fn field_tower_spec() {
        let k = parse_field("w^2+w+1").unwrap();
        let e = parse_elem("w^3", &k).unwrap();
        assert!(e.is_one());
        let k2 = parse_field("w^2+w+1; s: s^2-2").unwrap();
        let s = parse_elem("s*s", &k2).unwrap();
        assert_eq!(s, k2.from_int(2));
        assert_eq!(parse_point("inf", &k).unwrap(), ProjPoint::Infinity);
    }
}
