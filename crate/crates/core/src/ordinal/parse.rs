//! Parser for the ASCII ordinal syntax.
//!
//! ```text
//! ordinal := term ("+" term)* | "0"
//! term    := "w" ["^" exp] ["*" nat] | nat
//! exp     := nat | "(" ordinal ")"
//! nat     := [1-9][0-9]*
//! ```
//!
//! Whitespace is ignored. Sums whose exponents are not decreasing are read
//! left to right with ordinary addition, so `"1+w"` parses to `w`.

use num_bigint::BigUint;
use num_traits::One;

use super::{Ordinal, Term};
use crate::error::{Error, Result};

/// Nesting limit used by [`parse`] and `FromStr`.
pub const DEFAULT_MAX_DEPTH: usize = 64;

pub fn parse(text: &str) -> Result<Ordinal> {
    parse_with_depth(text, DEFAULT_MAX_DEPTH)
}

/// Parses with an explicit cap on parenthesised exponent nesting.
pub fn parse_with_depth(text: &str, max_depth: usize) -> Result<Ordinal> {
    let tokens: Vec<(usize, u8)> = text
        .bytes()
        .enumerate()
        .filter(|(_, b)| !b.is_ascii_whitespace())
        .collect();
    let mut p = Parser {
        tokens,
        pos: 0,
        end: text.len(),
        max_depth,
    };
    let value = p.ordinal(0)?;
    if let Some(&(at, b)) = p.tokens.get(p.pos) {
        return Err(p.error_at(at, format!("unexpected '{}'", b as char)));
    }
    Ok(value)
}

struct Parser {
    tokens: Vec<(usize, u8)>,
    pos: usize,
    end: usize,
    max_depth: usize,
}

impl Parser {
    fn peek(&self) -> Option<u8> {
        self.tokens.get(self.pos).map(|&(_, b)| b)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |&(i, _)| i)
    }

    fn error_at(&self, pos: usize, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        self.error_at(self.offset(), msg)
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn ordinal(&mut self, depth: usize) -> Result<Ordinal> {
        if self.peek() == Some(b'0') {
            self.pos += 1;
            return match self.peek() {
                None | Some(b')') => Ok(Ordinal::zero()),
                Some(_) => Err(self.error("'0' must stand alone")),
            };
        }
        let mut terms = vec![self.term(depth)?];
        while self.eat(b'+') {
            terms.push(self.term(depth)?);
        }
        Ok(Ordinal::from_sum(terms))
    }

    fn term(&mut self, depth: usize) -> Result<Term> {
        match self.peek() {
            Some(b'w') => {
                self.pos += 1;
                let exp = if self.eat(b'^') {
                    self.exponent(depth)?
                } else {
                    Ordinal::one()
                };
                let coeff = if self.eat(b'*') {
                    self.nat()?
                } else {
                    BigUint::one()
                };
                Ok(Term { exp, coeff })
            }
            Some(b'1'..=b'9') => Ok(Term {
                exp: Ordinal::zero(),
                coeff: self.nat()?,
            }),
            Some(b) => Err(self.error(format!("expected a term, found '{}'", b as char))),
            None => Err(self.error("expected a term, found end of input")),
        }
    }

    fn exponent(&mut self, depth: usize) -> Result<Ordinal> {
        if self.eat(b'(') {
            if depth + 1 > self.max_depth {
                return Err(self.error(format!("exponent nesting exceeds {}", self.max_depth)));
            }
            let inner = self.ordinal(depth + 1)?;
            if !self.eat(b')') {
                return Err(self.error("expected ')'"));
            }
            Ok(inner)
        } else {
            Ok(Ordinal::nat(self.nat()?))
        }
    }

    fn nat(&mut self) -> Result<BigUint> {
        let start = self.pos;
        match self.peek() {
            Some(b'1'..=b'9') => {}
            Some(b'0') => return Err(self.error("natural numbers may not start with 0")),
            _ => return Err(self.error("expected a natural number")),
        }
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        let digits: Vec<u8> = self.tokens[start..self.pos].iter().map(|&(_, b)| b).collect();
        Ok(BigUint::parse_bytes(&digits, 10).expect("digits were checked"))
    }
}
