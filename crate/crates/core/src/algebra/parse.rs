//! Recursive-descent parser for the expression language
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' uint)?
//! base   := var | rational | '(' expr ')'
//! ```
//!
//! A rational literal is `123` or `3/2` written without spaces. The
//! rational-function entry point additionally accepts `/` between factors.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{AlgebraError, Poly, RatFn, Rational, VarContext};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
}

fn position(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

fn error_at(src: &str, offset: usize, message: impl Into<String>) -> AlgebraError {
    let (line, column) = position(src, offset);
    AlgebraError::Parse {
        line,
        column,
        message: message.into(),
    }
}

impl<'a> Lexer<'a> {
    fn run(src: &'a str) -> Result<Vec<(Tok, usize)>, AlgebraError> {
        let mut lx = Lexer {
            src,
            toks: Vec::new(),
        };
        let bytes = src.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i];
            let start = i;
            match c {
                b' ' | b'\t' | b'\r' | b'\n' => {
                    i += 1;
                    continue;
                }
                b'+' => lx.toks.push((Tok::Plus, start)),
                b'-' => lx.toks.push((Tok::Minus, start)),
                b'*' => lx.toks.push((Tok::Star, start)),
                b'/' => lx.toks.push((Tok::Slash, start)),
                b'^' => lx.toks.push((Tok::Caret, start)),
                b'(' => lx.toks.push((Tok::LParen, start)),
                b')' => lx.toks.push((Tok::RParen, start)),
                b'0'..=b'9' => {
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let num: BigInt = src[start..i].parse().expect("digits");
                    let mut den = BigInt::from(1);
                    if i + 1 < bytes.len() && bytes[i] == b'/' && bytes[i + 1].is_ascii_digit() {
                        let ds = i + 1;
                        i = ds;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                        den = src[ds..i].parse().expect("digits");
                        if den.is_zero() {
                            return Err(error_at(src, ds, "zero denominator in literal"));
                        }
                    }
                    lx.toks.push((Tok::Num(Rational::new(num, den)), start));
                    continue;
                }
                c if c.is_ascii_alphabetic() || c == b'_' => {
                    while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                        i += 1;
                    }
                    lx.toks.push((Tok::Ident(src[start..i].to_string()), start));
                    continue;
                }
                _ => {
                    let ch = src[start..].chars().next().unwrap_or('?');
                    return Err(error_at(lx.src, start, format!("unexpected character `{ch}`")));
                }
            }
            i += 1;
        }
        Ok(lx.toks)
    }
}

struct Parser<'a> {
    src: &'a str,
    ctx: &'a VarContext,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    allow_div: bool,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.src.len(), |(_, o)| *o)
    }

    fn err(&self, message: impl Into<String>) -> AlgebraError {
        error_at(self.src, self.offset(), message)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RatFn, AlgebraError> {
        let neg = self.eat(&Tok::Minus);
        let mut acc = self.term()?;
        if neg {
            acc = -acc;
        }
        loop {
            if self.eat(&Tok::Plus) {
                acc = &acc + &self.term()?;
            } else if self.eat(&Tok::Minus) {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RatFn, AlgebraError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(&Tok::Star) {
                acc = &acc * &self.factor()?;
            } else if self.peek() == Some(&Tok::Slash) {
                if !self.allow_div {
                    return Err(self.err("division is only allowed inside a rational literal"));
                }
                self.pos += 1;
                let at = self.offset();
                let d = self.factor()?;
                if d.is_zero() {
                    return Err(error_at(self.src, at, "division by zero"));
                }
                acc = &acc / &d;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<RatFn, AlgebraError> {
        let base = self.base()?;
        if self.eat(&Tok::Caret) {
            match self.peek().cloned() {
                Some(Tok::Num(r)) if r.is_integer() => {
                    let e: u32 = r
                        .to_integer()
                        .try_into()
                        .map_err(|_| self.err("exponent too large"))?;
                    self.pos += 1;
                    Ok(base.pow(e))
                }
                _ => Err(self.err("expected a non-negative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<RatFn, AlgebraError> {
        match self.peek().cloned() {
            Some(Tok::Num(r)) => {
                self.pos += 1;
                Ok(RatFn::constant(self.ctx, r))
            }
            Some(Tok::Ident(name)) => match self.ctx.index_of(&name) {
                Some(i) => {
                    self.pos += 1;
                    Ok(Poly::var(self.ctx, i).into())
                }
                None => Err(self.err(format!("unknown variable `{name}`"))),
            },
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(&Tok::RParen) {
                    return Err(self.err("expected `)`"));
                }
                Ok(e)
            }
            Some(t) => Err(self.err(format!("unexpected token {}", describe(&t)))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(r) => format!("`{r}`"),
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Slash => "`/`".into(),
        Tok::Caret => "`^`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
    }
}

fn parse(src: &str, ctx: &VarContext, allow_div: bool) -> Result<RatFn, AlgebraError> {
    let toks = Lexer::run(src)?;
    let mut p = Parser {
        src,
        ctx,
        toks,
        pos: 0,
        allow_div,
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        let t = p.toks[p.pos].0.clone();
        return Err(p.err(format!("unexpected token {}", describe(&t))));
    }
    Ok(e)
}

pub fn parse_poly(src: &str, ctx: &VarContext) -> Result<Poly, AlgebraError> {
    let r = parse(src, ctx, false)?;
    Ok(r.numer().clone())
}

/// Like [`parse_poly`] but `/` may also divide arbitrary factors.
pub fn parse_ratfn(src: &str, ctx: &VarContext) -> Result<RatFn, AlgebraError> {
    parse(src, ctx, true)
}

/// A bare literal such as `-3/4`.
pub fn parse_rational(src: &str) -> Result<Rational, AlgebraError> {
    let s = src.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let toks = Lexer::run(body)?;
    match toks.as_slice() {
        [(Tok::Num(r), _)] => Ok(if neg { -r.clone() } else { r.clone() }),
        _ => Err(error_at(src, 0, "expected a rational literal")),
    }
}
