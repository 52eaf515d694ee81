//! Recursive-descent parser for the concrete formula syntax.
//!
//! ```text
//! formula := cond
//! cond    := disj (("->" | "=>" | "<->") cond)?
//! disj    := conj ("|" conj)*
//! conj    := neg ("&" neg)*
//! neg     := "~" neg | atom | "T" | "F" | "(" formula ")"
//! atom    := [a-z][a-zA-Z0-9_]*
//! ```
//!
//! `A => B` is read as `~A | B` and `A <-> B` as `(A -> B) & (B -> A)`.

use std::fmt;

use thiserror::Error;

use crate::formula::Formula;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty input")]
    Empty,
    #[error("unbalanced parenthesis at byte {offset}")]
    UnbalancedParen { offset: usize },
    #[error("unexpected {found} at byte {offset}; expected one of: {}", .expected.join(", "))]
    Unexpected {
        offset: usize,
        found: String,
        expected: Vec<&'static str>,
    },
    #[error("invalid character {ch:?} at byte {offset}")]
    InvalidChar { offset: usize, ch: char },
}

impl ParseError {
    pub fn offset(&self) -> Option<usize> {
        match self {
            ParseError::Empty => None,
            ParseError::UnbalancedParen { offset }
            | ParseError::Unexpected { offset, .. }
            | ParseError::InvalidChar { offset, .. } => Some(*offset),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Top,
    Bot,
    Not,
    And,
    Or,
    Cond,
    Material,
    Bicond,
    LParen,
    RParen,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(name) => write!(f, "atom `{name}`"),
            Tok::Top => f.write_str("`T`"),
            Tok::Bot => f.write_str("`F`"),
            Tok::Not => f.write_str("`~`"),
            Tok::And => f.write_str("`&`"),
            Tok::Or => f.write_str("`|`"),
            Tok::Cond => f.write_str("`->`"),
            Tok::Material => f.write_str("`=>`"),
            Tok::Bicond => f.write_str("`<->`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

const OPERAND: &[&str] = &["atom", "T", "F", "~", "("];
const AFTER_OPERAND: &[&str] = &["&", "|", "->", "=>", "<->", "end of input"];

fn lex(text: &str, schema: bool) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'~' => Tok::Not,
            b'&' => Tok::And,
            b'|' => Tok::Or,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Cond
            }
            b'=' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Material
            }
            b'<' if bytes.get(i + 1) == Some(&b'-') && bytes.get(i + 2) == Some(&b'>') => {
                i += 2;
                Tok::Bicond
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                let mut j = i + 1;
                while j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_') {
                    j += 1;
                }
                let word = &text[i..j];
                i = j - 1;
                match word {
                    "T" => Tok::Top,
                    "F" => Tok::Bot,
                    _ if c.is_ascii_lowercase() => Tok::Ident(word.to_string()),
                    _ if schema && word.len() == 1 => Tok::Ident(word.to_string()),
                    _ => {
                        return Err(ParseError::InvalidChar {
                            offset: start,
                            ch: c as char,
                        })
                    }
                }
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(ParseError::InvalidChar { offset: i, ch });
            }
        };
        i += 1;
        toks.push((start, tok));
    }
    toks.push((text.len(), Tok::Eof));
    Ok(toks)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    open: Vec<usize>,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if t != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &[&'static str]) -> ParseError {
        match self.peek() {
            Tok::Eof if !self.open.is_empty() => ParseError::UnbalancedParen {
                offset: *self.open.last().unwrap(),
            },
            Tok::RParen if self.open.is_empty() => ParseError::UnbalancedParen { offset: self.offset() },
            tok => ParseError::Unexpected {
                offset: self.offset(),
                found: tok.to_string(),
                expected: expected.to_vec(),
            },
        }
    }

    fn cond(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disj()?;
        let ctor: fn(Formula, Formula) -> Formula = match self.peek() {
            Tok::Cond => Formula::cond,
            Tok::Material => Formula::material,
            Tok::Bicond => Formula::biconditional,
            _ => return Ok(lhs),
        };
        self.bump();
        let rhs = self.cond()?;
        Ok(ctor(lhs, rhs))
    }

    fn disj(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.conj()?;
        while *self.peek() == Tok::Or {
            self.bump();
            acc = Formula::or(acc, self.conj()?);
        }
        Ok(acc)
    }

    fn conj(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.neg()?;
        while *self.peek() == Tok::And {
            self.bump();
            acc = Formula::and(acc, self.neg()?);
        }
        Ok(acc)
    }

    fn neg(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Not => {
                self.bump();
                Ok(Formula::not(self.neg()?))
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(Formula::atom(&name))
            }
            Tok::Top => {
                self.bump();
                Ok(Formula::Top)
            }
            Tok::Bot => {
                self.bump();
                Ok(Formula::Bot)
            }
            Tok::LParen => {
                self.open.push(self.offset());
                self.bump();
                let inner = self.cond()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.unexpected(&["&", "|", "->", "=>", "<->", ")"]));
                }
                self.bump();
                self.open.pop();
                Ok(inner)
            }
            _ => Err(self.unexpected(OPERAND)),
        }
    }
}

fn parse_with(text: &str, schema: bool) -> Result<Formula, ParseError> {
    let toks = lex(text, schema)?;
    if toks.len() == 1 {
        return Err(ParseError::Empty);
    }
    let mut p = Parser {
        toks,
        pos: 0,
        open: Vec::new(),
    };
    let f = p.cond()?;
    if *p.peek() != Tok::Eof {
        return Err(p.unexpected(AFTER_OPERAND));
    }
    Ok(f)
}

pub fn parse(text: &str) -> Result<Formula, ParseError> {
    parse_with(text, false)
}

pub fn parse_schema(text: &str) -> Result<Formula, ParseError> {
    parse_with(text, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: &str) -> Formula {
        Formula::atom(n)
    }

    #[test]
    fn conditional_is_right_associative() {
        assert_eq!(
            parse("a -> b -> c").unwrap(),
            Formula::cond(a("a"), Formula::cond(a("b"), a("c")))
        );
    }

    #[test]
    fn negation_binds_tighter_than_disjunction() {
        assert_eq!(parse("~a | b").unwrap(), Formula::or(Formula::not(a("a")), a("b")));
    }

    #[test]
    fn conjunction_binds_tighter_than_disjunction() {
        assert_eq!(
            parse("a | b & c").unwrap(),
            Formula::or(a("a"), Formula::and(a("b"), a("c")))
        );
        assert_eq!(
            parse("a & b & c").unwrap(),
            Formula::and(Formula::and(a("a"), a("b")), a("c"))
        );
    }

    #[test]
    fn sugar_is_desugared() {
        assert_eq!(parse("a => b").unwrap(), Formula::or(Formula::not(a("a")), a("b")));
        assert_eq!(
            parse("a <-> b").unwrap(),
            Formula::and(Formula::cond(a("a"), a("b")), Formula::cond(a("b"), a("a")))
        );
    }

    #[test]
    fn constants_and_identifiers() {
        assert_eq!(parse("T -> F").unwrap(), Formula::cond(Formula::Top, Formula::Bot));
        assert_eq!(parse("rain_2day").unwrap(), a("rain_2day"));
        assert_eq!(parse("  xY1\t").unwrap(), a("xY1"));
    }

    #[test]
    fn uppercase_only_in_schema_mode() {
        assert!(matches!(
            parse("A -> b"),
            Err(ParseError::InvalidChar { offset: 0, .. })
        ));
        assert_eq!(parse_schema("A -> b").unwrap(), Formula::cond(a("A"), a("b")));
        assert!(parse_schema("AB").is_err());
    }

    #[test]
    fn error_cases() {
        assert_eq!(parse(""), Err(ParseError::Empty));
        assert_eq!(parse("   "), Err(ParseError::Empty));
        assert_eq!(parse("(a & b"), Err(ParseError::UnbalancedParen { offset: 0 }));
        assert_eq!(parse("a & b)"), Err(ParseError::UnbalancedParen { offset: 5 }));
        match parse("a & & b") {
            Err(ParseError::Unexpected { offset, expected, .. }) => {
                assert_eq!(offset, 4);
                assert!(expected.contains(&"atom"));
            }
            other => panic!("unexpected result {other:?}"),
        }
        match parse("a b") {
            Err(ParseError::Unexpected { offset, expected, .. }) => {
                assert_eq!(offset, 2);
                assert!(expected.contains(&"->"));
            }
            other => panic!("unexpected result {other:?}"),
        }
        assert!(matches!(
            parse("a + b"),
            Err(ParseError::InvalidChar { offset: 2, ch: '+' })
        ));
        assert!(matches!(parse("a -"), Err(ParseError::InvalidChar { offset: 2, .. })));
    }
}
