//! Parser for ring expressions such as `(x1 + 2*x2)^3 - x1*x2`.
//!
//! Grammar:
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | power
//! power  := atom ('^' integer)?
//! atom   := integer | 'x' index | '(' expr ')'
//! ```
//! Generators are one-based: `x1, ..., xm`. Juxtaposition is not
//! multiplication.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::ring::{RingElement, RingSpec};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Int(BigInt),
    Gen(usize),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(input: &str) -> Result<Vec<(usize, Token)>> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        let tok = match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => Token::Plus,
            '-' => Token::Minus,
            '*' => Token::Star,
            '^' => Token::Caret,
            '(' => Token::LParen,
            ')' => Token::RParen,
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Token::Int(input[start..i].parse().expect("digits"))));
                continue;
            }
            'x' | 'X' => {
                i += 1;
                let digits = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let index: usize = input[digits..i]
                    .parse()
                    .map_err(|_| Error::Parse(format!("expected generator index after 'x' at column {}", start + 1)))?;
                if index == 0 {
                    return Err(Error::Parse(format!("generators start at x1 (column {})", start + 1)));
                }
                out.push((start, Token::Gen(index)));
                continue;
            }
            other => {
                return Err(Error::Parse(format!(
                    "unexpected character {other:?} at column {}",
                    start + 1
                )))
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    spec: &'a RingSpec,
    len: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn column(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.len, |(c, _)| *c) + 1
    }

    fn eat(&mut self, want: &Token) -> bool {
        if self.peek() == Some(want) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RingElement> {
        let mut acc = self.term()?;
        loop {
            if self.eat(&Token::Plus) {
                acc = acc.try_add(&self.term()?)?;
            } else if self.eat(&Token::Minus) {
                acc = acc.try_sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RingElement> {
        let mut acc = self.factor()?;
        while self.eat(&Token::Star) {
            acc = acc.try_mul(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<RingElement> {
        if self.eat(&Token::Minus) {
            return Ok(self.factor()?.neg());
        }
        let base = self.atom()?;
        if self.eat(&Token::Caret) {
            let col = self.column();
            match self.peek().cloned() {
                Some(Token::Int(k)) => {
                    self.pos += 1;
                    let k = u32::try_from(k)
                        .map_err(|_| Error::Parse(format!("exponent too large at column {col}")))?;
                    Ok(base.pow(k))
                }
                _ => Err(Error::Parse(format!(
                    "expected a nonnegative integer exponent at column {col}"
                ))),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<RingElement> {
        let col = self.column();
        match self.peek().cloned() {
            Some(Token::Int(c)) => {
                self.pos += 1;
                Ok(self.spec.constant(c))
            }
            Some(Token::Gen(k)) => {
                self.pos += 1;
                if k > self.spec.rank() {
                    return Err(Error::DimensionMismatch {
                        expected: self.spec.rank(),
                        found: k,
                    });
                }
                self.spec.generator(k - 1)
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(&Token::RParen) {
                    return Err(Error::Parse(format!("expected ')' at column {}", self.column())));
                }
                Ok(inner)
            }
            Some(t) => Err(Error::Parse(format!("unexpected {t:?} at column {col}"))),
            None => Err(Error::Parse("unexpected end of expression".into())),
        }
    }
}

/// Parses and evaluates an expression in `R`.
pub fn parse_element(input: &str, spec: &RingSpec) -> Result<RingElement> {
    let tokens = tokenize(input)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut parser = Parser {
        tokens,
        pos: 0,
        spec,
        len: input.len(),
    };
    let value = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(Error::Parse(format!(
            "trailing input at column {}",
            parser.column()
        )));
    }
    Ok(value)
}
