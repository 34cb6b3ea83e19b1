//! Recursive-descent parser for the polynomial input grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' natural)?
//! atom   := integer | integer '/' integer | var | '(' expr ')' | '-' factor
//! var    := 'x' positive-integer
//! ```
//!
//! Whitespace is ignored between tokens.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use super::Polynomial;
use crate::arith;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at position {position}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    /// Byte offset into the source.
    pub position: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character {0:?}")]
    UnexpectedChar(char),
    #[error("expected {expected}, found {found}")]
    Unexpected {
        expected: &'static str,
        found: String,
    },
    #[error("unexpected end of input, expected {0}")]
    UnexpectedEnd(&'static str),
    #[error("unknown variable x{index} (dimension is {n})")]
    UnknownVariable { index: usize, n: usize },
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("denominator {den} does not divide a power of {base}")]
    DenominatorNotAllowed { den: BigInt, base: u64 },
    #[error("exponent too large")]
    ExponentTooLarge,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(i) => format!("integer {i}"),
            Tok::Var(i) => format!("variable x{i}"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Caret => "'^'".into(),
            Tok::Slash => "'/'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = src.as_bytes();
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
            b'+' => out.push((Tok::Plus, start)),
            b'-' => out.push((Tok::Minus, start)),
            b'*' => out.push((Tok::Star, start)),
            b'^' => out.push((Tok::Caret, start)),
            b'/' => out.push((Tok::Slash, start)),
            b'(' => out.push((Tok::LParen, start)),
            b')' => out.push((Tok::RParen, start)),
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let digits = &src[start..i];
                out.push((Tok::Int(digits.parse().expect("ascii digits")), start));
                continue;
            }
            b'x' => {
                i += 1;
                let ds = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let index = src[ds..i].parse::<usize>().ok().filter(|&k| k > 0);
                match index {
                    Some(k) => out.push((Tok::Var(k), start)),
                    None => {
                        return Err(ParseError {
                            kind: ParseErrorKind::Unexpected {
                                expected: "positive variable index after 'x'",
                                found: src[ds..i].to_string(),
                            },
                            position: ds,
                        })
                    }
                }
                continue;
            }
            _ => {
                let ch = src[start..].chars().next().unwrap_or('?');
                return Err(ParseError {
                    kind: ParseErrorKind::UnexpectedChar(ch),
                    position: start,
                });
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    n: usize,
    base: u64,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|&(_, p)| p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn err(&self, expected: &'static str) -> ParseError {
        match self.peek() {
            Some(t) => ParseError {
                kind: ParseErrorKind::Unexpected {
                    expected,
                    found: t.describe(),
                },
                position: self.here(),
            },
            None => ParseError {
                kind: ParseErrorKind::UnexpectedEnd(expected),
                position: self.end,
            },
        }
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
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

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        while let Some(Tok::Star) = self.peek() {
            self.bump();
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.bump();
            let at = self.here();
            match self.bump() {
                Some(Tok::Int(e)) => {
                    let e = e.to_u32().ok_or(ParseError {
                        kind: ParseErrorKind::ExponentTooLarge,
                        position: at,
                    })?;
                    return Ok(base.pow(e));
                }
                _ => {
                    self.pos -= 1;
                    return Err(self.err("natural exponent"));
                }
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let at = self.here();
        match self.peek().cloned() {
            Some(Tok::Int(num)) => {
                self.bump();
                if let Some(Tok::Slash) = self.peek() {
                    self.bump();
                    let den_at = self.here();
                    let den = match self.bump() {
                        Some(Tok::Int(d)) => d,
                        _ => {
                            self.pos -= 1;
                            return Err(self.err("integer denominator"));
                        }
                    };
                    if den.is_zero() {
                        return Err(ParseError {
                            kind: ParseErrorKind::ZeroDenominator,
                            position: den_at,
                        });
                    }
                    let r = BigRational::new(num, den);
                    if !arith::divides_power_of(r.denom(), self.base) {
                        return Err(ParseError {
                            kind: ParseErrorKind::DenominatorNotAllowed {
                                den: r.denom().clone(),
                                base: self.base,
                            },
                            position: at,
                        });
                    }
                    return Ok(Polynomial::constant(self.n, r));
                }
                Ok(Polynomial::constant(self.n, BigRational::from_integer(num)))
            }
            Some(Tok::Var(i)) => {
                self.bump();
                Polynomial::var(self.n, i).map_err(|_| ParseError {
                    kind: ParseErrorKind::UnknownVariable {
                        index: i,
                        n: self.n,
                    },
                    position: at,
                })
            }
            Some(Tok::LParen) => {
                self.bump();
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.bump();
                        Ok(inner)
                    }
                    _ => Err(self.err("')'")),
                }
            }
            Some(Tok::Minus) => {
                self.bump();
                Ok(-&self.factor()?)
            }
            _ => Err(self.err("integer, variable, '(' or '-'")),
        }
    }
}

/// Parses `src` as a polynomial in `x1..xn`.
///
/// Rational literals `a/b` are admitted only when `b` (in lowest terms)
/// divides a power of `base`; with `base = 1` every coefficient must be an
/// integer.
pub fn parse_poly(src: &str, n: usize, base: u64) -> Result<Polynomial, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: src.len(),
        n,
        base,
    };
    let out = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(p.err("operator or end of input"));
    }
    Ok(out)
}
