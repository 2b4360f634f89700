//! Text grammar for polynomials and divisor specifications.
//!
//! Polynomials: variables `x1..xd` (or `x`, `y`, `z` aliases for d <= 3),
//! integer coefficients reduced mod p, operators `+ - * ^`, parentheses,
//! insignificant whitespace. Exponents are plain integer literals.
//!
//! Divisor specs: semicolon-separated `t*div(f)` terms with `t` a rational
//! literal `a/b` (a bare `div(f)` means `t = 1`); the empty string is the
//! zero divisor.

use num_traits::Signed;

use crate::arith::{parse_ratio, Fp, Ratio};
use crate::error::{Error, Result};
use crate::poly::{Exponent, Polynomial};
use crate::testideal::DivisorSpec;

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Int(u64),
    Var(usize),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn err(&self, pos: usize, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn next_token(&mut self, p: u64, dim: usize) -> Result<(usize, Token)> {
        self.skip_ws();
        let start = self.pos;
        if self.pos >= self.src.len() {
            return Ok((start, Token::End));
        }
        let c = self.src[self.pos];
        let tok = match c {
            b'+' => Token::Plus,
            b'-' => Token::Minus,
            b'*' => Token::Star,
            b'^' => Token::Caret,
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b'0'..=b'9' => {
                let mut v: u64 = 0;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    // reduce mod p on the fly, so arbitrarily long literals cannot overflow
                    v = (v * 10 + (self.src[self.pos] - b'0') as u64) % p.max(2);
                    self.pos += 1;
                }
                return Ok((start, Token::Int(v)));
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                let mut end = self.pos + 1;
                while end < self.src.len() && self.src[end].is_ascii_digit() {
                    end += 1;
                }
                let name = std::str::from_utf8(&self.src[self.pos..end]).unwrap();
                self.pos = end;
                let idx = resolve_variable(name, dim)
                    .ok_or_else(|| self.err(start, format!("unknown variable `{name}`")))?;
                return Ok((start, Token::Var(idx)));
            }
            _ => {
                return Err(self.err(start, format!("unexpected character `{}`", c as char)));
            }
        };
        self.pos += 1;
        Ok((start, tok))
    }
}

fn resolve_variable(name: &str, dim: usize) -> Option<usize> {
    if dim <= 3 {
        let alias = match name {
            "x" => Some(0),
            "y" => Some(1),
            "z" => Some(2),
            _ => None,
        };
        if let Some(i) = alias {
            return (i < dim).then_some(i);
        }
    }
    let rest = name.strip_prefix('x')?;
    let i: usize = rest.parse().ok()?;
    (1..=dim).contains(&i).then(|| i - 1)
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    p: u64,
    dim: usize,
    lookahead: (usize, Token),
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, p: u64, dim: usize) -> Result<Self> {
        let mut lexer = Lexer::new(src);
        let lookahead = lexer.next_token(p, dim)?;
        Ok(Parser {
            lexer,
            p,
            dim,
            lookahead,
        })
    }

    fn bump(&mut self) -> Result<(usize, Token)> {
        let next = self.lexer.next_token(self.p, self.dim)?;
        Ok(std::mem::replace(&mut self.lookahead, next))
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut negate = false;
        if self.lookahead.1 == Token::Minus {
            self.bump()?;
            negate = true;
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.lookahead.1 {
                Token::Plus => {
                    self.bump()?;
                    let t = self.term()?;
                    acc = acc.add(&t)?;
                }
                Token::Minus => {
                    self.bump()?;
                    let t = self.term()?;
                    acc = acc.sub(&t)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while self.lookahead.1 == Token::Star {
            self.bump()?;
            let f = self.factor()?;
            acc = acc.mul(&f)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.lookahead.1 == Token::Caret {
            self.bump()?;
            let (pos, tok) = self.bump()?;
            // The exponent must be a bare integer literal; the lexer already
            // reduced integer tokens mod p, so re-scan the digits here.
            match tok {
                Token::Int(_) => {
                    let digits = &self.lexer.src[pos..];
                    let mut n: u64 = 0;
                    let mut i = 0;
                    while i < digits.len() && digits[i].is_ascii_digit() {
                        n = n
                            .checked_mul(10)
                            .and_then(|v| v.checked_add((digits[i] - b'0') as u64))
                            .ok_or(Error::ExponentOverflow)?;
                        i += 1;
                    }
                    base.pow(n)
                }
                _ => Err(self.lexer.err(pos, "expected integer exponent after `^`")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let (pos, tok) = self.bump()?;
        match tok {
            Token::Int(v) => Ok(Polynomial::monomial(
                self.p,
                Exponent::zero(self.dim),
                v as i64,
            )),
            Token::Var(i) => Ok(Polynomial::variable(self.p, self.dim, i)),
            Token::LParen => {
                let inner = self.expr()?;
                let (pos, tok) = self.bump()?;
                if tok != Token::RParen {
                    return Err(self.lexer.err(pos, "expected `)`"));
                }
                Ok(inner)
            }
            Token::End => Err(self.lexer.err(pos, "unexpected end of input")),
            _ => Err(self.lexer.err(pos, "expected a coefficient, variable, or `(`")),
        }
    }
}

/// Parse a polynomial over F_p in `dim` variables.
pub fn parse_polynomial(src: &str, p: u64, dim: usize) -> Result<Polynomial> {
    let mut parser = Parser::new(src, p, dim)?;
    let f = parser.expr()?;
    let (pos, tok) = parser.bump()?;
    if tok != Token::End {
        return Err(Error::Parse {
            pos,
            msg: "trailing input after polynomial".into(),
        });
    }
    Ok(f)
}

/// Parse a comma-separated list of polynomials (an ideal's generators).
pub fn parse_ideal_generators(src: &str, p: u64, dim: usize) -> Result<Vec<Polynomial>> {
    let s = src.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|part| parse_polynomial(part, p, dim))
        .collect()
}

/// Parse a divisor spec: `t1*div(f1); t2*div(f2); ...`.
pub fn parse_divisor(src: &str, p: u64, dim: usize) -> Result<DivisorSpec> {
    let s = src.trim();
    let mut spec = DivisorSpec::zero();
    if s.is_empty() || s == "0" {
        return Ok(spec);
    }
    for part in s.split(';') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (t, poly_src) = match part.find("div(") {
            Some(idx) => {
                let prefix = part[..idx].trim().trim_end_matches('*').trim();
                let t = if prefix.is_empty() {
                    Ratio::from_integer(1.into())
                } else {
                    parse_ratio(prefix)?
                };
                let body = &part[idx + 4..];
                let close = body.rfind(')').ok_or(Error::Parse {
                    pos: part.len(),
                    msg: "missing `)` in div(...)".into(),
                })?;
                if !body[close + 1..].trim().is_empty() {
                    return Err(Error::Parse {
                        pos: idx + 4 + close,
                        msg: "trailing input after div(...)".into(),
                    });
                }
                (t, &body[..close])
            }
            None => {
                return Err(Error::Parse {
                    pos: 0,
                    msg: format!("expected `t*div(f)` term, got `{part}`"),
                })
            }
        };
        if t.is_negative() {
            return Err(Error::NegativeDivisorCoefficient);
        }
        let f = parse_polynomial(poly_src, p, dim)?;
        spec = spec.with_part(f, t)?;
    }
    Ok(spec)
}

/// Parse `lo,hi` as a rational interval.
pub fn parse_range(src: &str) -> Result<(Ratio, Ratio)> {
    let (lo, hi) = src.split_once(',').ok_or(Error::Parse {
        pos: 0,
        msg: "expected `lo,hi`".into(),
    })?;
    Ok((parse_ratio(lo)?, parse_ratio(hi)?))
}

#[allow(dead_code)]
fn unused_fp_guard(_: Fp) {}
