//! Text grammar for polynomials and ideal files.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := power (['*'|'/'] power)*          // juxtaposition is a product
//! power  := atom ['^' integer]
//! atom   := integer | identifier | '(' expr ')'
//! ```
//!
//! Division is only allowed by nonzero constants, so `3/2*x` is a literal.
//! An ideal file holds one generator per line, an optional `vars:` header,
//! and `#` comments.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Polynomial, Rational, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn tokenize(text: &str, line: usize, col0: usize) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = col0 + i + 1;
        let single = match c {
            '+' => Some(Tok::Plus),
            // U+2212 MINUS SIGN shows up in pasted math
            '-' | '\u{2212}' => Some(Tok::Minus),
            '*' | '\u{00b7}' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Spanned { tok, line, column });
            i += 1;
        } else if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Spanned {
                tok: Tok::Int(s.parse().unwrap()),
                line,
                column,
            });
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Spanned {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                line,
                column,
            });
        } else {
            return Err(err(line, column, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Spanned],
    pos: usize,
    ring: &'a Ring,
    end: (usize, usize),
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map_or(self.end, |t| (t.line, t.column))
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T> {
        let (l, c) = self.here();
        Err(err(l, c, message))
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut negate = false;
        match self.peek() {
            Some(Tok::Minus) => {
                negate = true;
                self.pos += 1;
            }
            Some(Tok::Plus) => self.pos += 1,
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let here = self.here();
                    let d = self.power()?;
                    match d.constant_value() {
                        Some(c) if !c.is_zero() => acc = acc.scale(&c.recip()),
                        Some(_) => return Err(err(here.0, here.1, "division by zero")),
                        None => {
                            return Err(err(
                                here.0,
                                here.1,
                                "division is only allowed by constants",
                            ))
                        }
                    }
                }
                Some(Tok::Int(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Int(k)) => {
                    let k: u32 = match k.try_into() {
                        Ok(k) if k <= 1000 => k,
                        _ => return self.fail("exponent too large"),
                    };
                    self.pos += 1;
                    return Ok(base.pow(k));
                }
                _ => return self.fail("expected a non-negative integer exponent"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Polynomial::constant(self.ring, Rational::from_integer(n)))
            }
            Some(Tok::Ident(name)) => {
                let i = match self.ring.index_of(&name) {
                    Some(i) => i,
                    None => return self.fail(format!("unknown variable `{name}`")),
                };
                self.pos += 1;
                Ok(Polynomial::var(self.ring, i))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.fail("expected `)`");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(t) => self.fail(format!("unexpected token {t:?}")),
            None => self.fail("unexpected end of input"),
        }
    }
}

fn parse_tokens(toks: &[Spanned], ring: &Ring, end: (usize, usize)) -> Result<Polynomial> {
    let mut p = Parser {
        toks,
        pos: 0,
        ring,
        end,
    };
    let out = p.expr()?;
    if p.pos != toks.len() {
        return p.fail("trailing input");
    }
    Ok(out)
}

fn identifiers(toks: &[Spanned]) -> Vec<String> {
    let mut names: Vec<String> = toks
        .iter()
        .filter_map(|t| match &t.tok {
            Tok::Ident(s) => Some(s.clone()),
            _ => None,
        })
        .collect();
    names.sort();
    names.dedup();
    names
}

/// Parses one polynomial. Without a ring, the variables are the identifiers in
/// the text, sorted alphabetically.
pub fn parse_polynomial(text: &str, ring: Option<&Ring>) -> Result<Polynomial> {
    let toks = tokenize(text, 1, 0)?;
    let ring = match ring {
        Some(r) => r.clone(),
        None => Ring::new(&identifiers(&toks))?,
    };
    parse_tokens(&toks, &ring, (1, text.chars().count() + 1))
}

/// Parsed ideal file: the ring and the generators in input order.
#[derive(Clone, Debug)]
pub struct ParsedInput {
    pub ring: Ring,
    pub generators: Vec<Polynomial>,
}

/// Parses an ideal block: optional `vars: x, y, z` header, one generator per
/// line, `#` starts a comment.
pub fn parse_input(text: &str) -> Result<ParsedInput> {
    let mut declared: Option<Vec<String>> = None;
    let mut lines: Vec<(usize, Vec<Spanned>, usize)> = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix("vars:") {
            if declared.is_some() || !lines.is_empty() {
                return Err(err(line, 1, "`vars:` header must come first and only once"));
            }
            let names: Vec<String> = rest
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(str::to_string)
                .collect();
            if names.is_empty() {
                return Err(err(line, 1, "`vars:` header lists no variables"));
            }
            declared = Some(names);
            continue;
        }
        let toks = tokenize(content, line, 0)?;
        lines.push((line, toks, content.chars().count() + 1));
    }
    if lines.is_empty() {
        return Err(Error::EmptyIdeal);
    }
    let ring = match declared {
        Some(names) => Ring::new(&names)?,
        None => {
            let all: Vec<Spanned> = lines.iter().flat_map(|(_, t, _)| t.clone()).collect();
            Ring::new(&identifiers(&all))?
        }
    };
    let mut generators = Vec::with_capacity(lines.len());
    for (line, toks, endcol) in &lines {
        let p = parse_tokens(toks, &ring, (*line, *endcol))?;
        if p.is_zero() {
            continue;
        }
        generators.push(p);
    }
    if generators.is_empty() {
        return Err(Error::EmptyIdeal);
    }
    Ok(ParsedInput { ring, generators })
}

#[cfg(test)]
pub(crate) fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}
