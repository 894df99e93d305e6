//! Text syntax for rational functions of `s`.
//!
//! Accepted: integers, `s`, `+ - * / ^`, parentheses and whitespace; the
//! Unicode minus sign is read as `-`. Exponents are non-negative integers.
//! Printing via `Display` produces text that parses back to the same value.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{RationalFunction, Q};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    S,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn err(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse { offset, message: message.into() }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let mut chars = src.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        let tok = match c {
            c if c.is_whitespace() => {
                chars.next();
                continue;
            }
            '0'..='9' => {
                let mut end = i;
                while let Some(&(j, d)) = chars.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    end = j + 1;
                    chars.next();
                }
                let v: BigInt = src[i..end].parse().map_err(|_| err(i, "bad integer"))?;
                out.push((i, Tok::Int(v)));
                continue;
            }
            's' => Tok::S,
            '+' => Tok::Plus,
            '-' | '\u{2212}' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => return Err(err(i, format!("unexpected character {other:?}"))),
        };
        chars.next();
        out.push((i, tok));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.len, |(o, _)| *o)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<RationalFunction> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RationalFunction> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let at = self.offset();
                    let rhs = self.unary()?;
                    let inv = rhs.recip().map_err(|_| err(at, "division by zero"))?;
                    acc = &acc * &inv;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RationalFunction> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Ok(-self.unary()?)
            }
            Some(Tok::Plus) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RationalFunction> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        let at = self.offset();
        let exp = match self.bump() {
            Some(Tok::Int(v)) => v.to_u32().filter(|&e| e <= 4096).ok_or_else(|| err(at, "exponent too large"))?,
            _ => return Err(err(at, "expected a non-negative integer exponent")),
        };
        let mut acc = RationalFunction::one();
        for _ in 0..exp {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<RationalFunction> {
        let at = self.offset();
        match self.bump() {
            Some(Tok::Int(v)) => Ok(RationalFunction::constant(Q::from_integer(v))),
            Some(Tok::S) => Ok(RationalFunction::s()),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                let close = self.offset();
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(err(close, "expected ')'")),
                }
            }
            Some(t) => Err(err(at, format!("unexpected token {t:?}"))),
            None => Err(err(at, "unexpected end of input")),
        }
    }
}

pub fn parse_rational_function(src: &str) -> Result<RationalFunction> {
    let toks = lex(src)?;
    if toks.is_empty() {
        return Err(err(0, "empty expression"));
    }
    let mut p = Parser { toks, pos: 0, len: src.len() };
    let value = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(err(p.offset(), "trailing input"));
    }
    Ok(value)
}

/// Parses an exact rational constant such as `-178/12` or `3`.
pub fn parse_rational(src: &str) -> Result<Q> {
    let f = parse_rational_function(src)?;
    f.as_constant().ok_or_else(|| err(0, format!("{src:?} is not a constant")))
}

/// Canonical text for a rational constant: `a` or `a/b`.
pub fn fmt_q(q: &Q) -> String {
    if q.denom() == &BigInt::from(1) || q.numer().is_zero() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
