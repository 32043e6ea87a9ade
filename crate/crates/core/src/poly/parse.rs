//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' INT)?
//! atom   := INT | IDENT | '(' expr ')'
//! ```

use std::sync::Arc;

use super::{PolyContext, TruncPoly};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => out.push((Tok::Plus, i)),
            b'-' => out.push((Tok::Minus, i)),
            b'*' => out.push((Tok::Star, i)),
            b'^' => out.push((Tok::Caret, i)),
            b'(' => out.push((Tok::LParen, i)),
            b')' => out.push((Tok::RParen, i)),
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((Tok::Int(text[start..i].to_string()), start));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(Error::Parse {
                    offset: i,
                    message: format!("unexpected character `{ch}`"),
                });
            }
        }
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    ctx: &'a Arc<PolyContext>,
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

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            offset: self.offset(),
            message: message.into(),
        })
    }

    fn expr(&mut self) -> Result<TruncPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.term()?)?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<TruncPoly> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = acc.mul(&self.unary()?)?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<TruncPoly> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<TruncPoly> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        match self.bump() {
            (Tok::Int(digits), off) => {
                let e: u64 = digits.parse().map_err(|_| Error::Parse {
                    offset: off,
                    message: format!("exponent `{digits}` too large"),
                })?;
                Ok(base.pow(e))
            }
            (_, off) => Err(Error::Parse {
                offset: off,
                message: "exponent must be a nonnegative integer literal".into(),
            }),
        }
    }

    fn atom(&mut self) -> Result<TruncPoly> {
        match self.bump() {
            (Tok::Int(digits), _) => {
                let p = self.ctx.field().characteristic() as u64;
                let v = digits.bytes().fold(0u64, |acc, d| (acc * 10 + (d - b'0') as u64) % p);
                Ok(TruncPoly::constant(self.ctx, v as i64))
            }
            (Tok::Ident(name), off) => match self.ctx.vars().iter().position(|v| *v == name) {
                Some(i) => Ok(TruncPoly::var(self.ctx, i)),
                None => Err(Error::UnknownVariable { name, offset: off }),
            },
            (Tok::LParen, _) => {
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return self.err("expected `)`");
                }
                self.bump();
                Ok(inner)
            }
            (Tok::End, off) => Err(Error::Parse {
                offset: off,
                message: "unexpected end of expression".into(),
            }),
            (t, off) => Err(Error::Parse {
                offset: off,
                message: format!("unexpected token {t:?}"),
            }),
        }
    }
}

/// Parse `text` into a polynomial of `ctx`, reducing coefficients modulo p and
/// dropping terms at or above the truncation order.
pub fn parse_poly(text: &str, ctx: &Arc<PolyContext>) -> Result<TruncPoly> {
    let mut p = Parser {
        toks: tokenize(text)?,
        pos: 0,
        ctx,
    };
    let out = p.expr()?;
    if *p.peek() != Tok::End {
        return p.err(format!("unexpected trailing input {:?}", p.peek()));
    }
    Ok(out)
}
