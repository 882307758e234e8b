//! Parser for basket expressions.
//!
//! Grammar: `basket := term ("+" term)*` with
//! `term := [mult "*"] "1/" r "(" a ")"`; whitespace is ignored anywhere.
//! Weights normalize on parse (`1/5(2)` is the class `1/5(3)`), duplicate
//! classes merge, and multiplicities default to 1.

use std::fmt;

use plurivol::{Basket, QuotientSingularity};

/// A syntax or value error, annotated with the byte offset it occurred at.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at offset {}: {}", self.position, self.message)
    }
}

struct Scanner<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_whitespace(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_whitespace();
        self.bytes.get(self.pos).copied()
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            position: self.pos,
            message: message.into(),
        }
    }

    fn expect(&mut self, expected: u8) -> Result<(), ParseError> {
        match self.peek() {
            Some(c) if c == expected => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => Err(self.error(format!(
                "expected `{}`, found `{}`",
                expected as char, c as char
            ))),
            None => Err(self.error(format!(
                "expected `{}`, found end of input",
                expected as char
            ))),
        }
    }

    fn number(&mut self, what: &str) -> Result<u32, ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {}
            _ => return Err(self.error(format!("expected {what}"))),
        }
        let start = self.pos;
        let mut value: u64 = 0;
        while let Some(&c) = self.bytes.get(self.pos) {
            if !c.is_ascii_digit() {
                break;
            }
            value = value * 10 + u64::from(c - b'0');
            if value > u32::MAX as u64 {
                self.pos = start;
                return Err(self.error(format!("{what} is out of range")));
            }
            self.pos += 1;
        }
        Ok(value as u32)
    }

    /// `[mult "*"] "1/" r "(" a ")"`.
    fn term(&mut self) -> Result<(QuotientSingularity, u32), ParseError> {
        let term_start = self.pos;
        let first = self.number("a multiplicity or `1/`")?;
        let mult = match self.peek() {
            Some(b'*') => {
                self.pos += 1;
                if first == 0 {
                    return Err(ParseError {
                        position: term_start,
                        message: "multiplicity must be positive".into(),
                    });
                }
                let one = self.number("`1` of `1/r(a)`")?;
                if one != 1 {
                    return Err(self.error(format!("expected `1/`, found `{one}/`")));
                }
                first
            }
            Some(b'/') if first == 1 => 1,
            Some(b'/') => return Err(self.error(format!("expected `1/`, found `{first}/`"))),
            _ => return Err(self.error("expected `*` or `/` after leading integer")),
        };
        self.expect(b'/')?;
        let r = self.number("an index r")?;
        self.expect(b'(')?;
        let a = self.number("a weight a")?;
        self.expect(b')')?;
        let singularity = QuotientSingularity::new(r, a).map_err(|e| ParseError {
            position: term_start,
            message: format!("1/{r}({a}): {e}"),
        })?;
        Ok((singularity, mult))
    }
}

/// Parses a basket expression into a canonical [`Basket`].
pub fn parse_basket(text: &str) -> Result<Basket, ParseError> {
    let mut scanner = Scanner::new(text);
    if scanner.peek().is_none() {
        return Err(scanner.error("empty basket expression"));
    }
    let mut entries = Vec::new();
    loop {
        entries.push(scanner.term()?);
        match scanner.peek() {
            Some(b'+') => scanner.pos += 1,
            Some(c) => {
                return Err(scanner.error(format!(
                    "expected `+` or end of input, found `{}`",
                    c as char
                )))
            }
            None => break,
        }
    }
    Ok(Basket::new(entries))
}
