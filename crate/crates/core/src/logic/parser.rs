//! Recursive-descent parser.
//!
//! ```text
//! formula := imp
//! imp     := or [ "->" imp ]
//! or      := and { "|" and }
//! and     := not { "&" not }
//! not     := { "~" } atom
//! atom    := variable | "T" | "F" | "(" formula ")"
//! ```
//!
//! `¬ ∧ ∨ →` are accepted for `~ & | ->`. Positions in errors count
//! characters from 0.

use std::fmt;

use super::formula::Formula;

/// Deepest formula tree accepted.
pub const MAX_DEPTH: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    /// What was found, e.g. `")"` or `end of input`.
    pub found: String,
    /// Tokens that would have been accepted; empty for non-syntax failures.
    pub expected: Vec<&'static str>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.expected.is_empty() {
            write!(f, "{} at position {}", self.found, self.position)
        } else {
            write!(
                f,
                "unexpected {} at position {}; expected one of: {}",
                self.found,
                self.position,
                self.expected.join(", ")
            )
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Var(String),
    True,
    False,
    LParen,
    RParen,
    Not,
    And,
    Or,
    Imp,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Var(v) => format!("variable {v:?}"),
            Tok::True => "\"T\"".into(),
            Tok::False => "\"F\"".into(),
            Tok::LParen => "\"(\"".into(),
            Tok::RParen => "\")\"".into(),
            Tok::Not => "\"~\"".into(),
            Tok::And => "\"&\"".into(),
            Tok::Or => "\"|\"".into(),
            Tok::Imp => "\"->\"".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '~' | '¬' => Tok::Not,
            '&' | '∧' => Tok::And,
            '|' | '∨' => Tok::Or,
            '→' => Tok::Imp,
            'T' => Tok::True,
            'F' => Tok::False,
            '-' if chars.get(i + 1) == Some(&'>') => {
                i += 1;
                Tok::Imp
            }
            c if c.is_ascii_lowercase() => {
                while i + 1 < chars.len() && (chars[i + 1].is_ascii_alphanumeric() || chars[i + 1] == '_') {
                    i += 1;
                }
                Tok::Var(chars[start..=i].iter().collect())
            }
            other => {
                return Err(ParseError {
                    position: start,
                    found: format!("character {other:?}"),
                    expected: vec!["variable", "\"T\"", "\"F\"", "\"(\"", "\")\"", "\"~\"", "\"&\"", "\"|\"", "\"->\""],
                })
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, chars.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    depth: usize,
}

const ATOM_START: &[&str] = &["variable", "\"T\"", "\"F\"", "\"(\"", "\"~\""];

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn error(&self, expected: Vec<&'static str>) -> ParseError {
        let (tok, at) = &self.toks[self.pos];
        ParseError { position: *at, found: tok.describe(), expected }
    }

    fn enter(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(ParseError {
                position: self.toks[self.pos].1,
                found: format!("nesting deeper than {MAX_DEPTH}"),
                expected: vec![],
            });
        }
        Ok(())
    }

    fn imp(&mut self) -> Result<Formula, ParseError> {
        self.enter()?;
        let lhs = self.or()?;
        let f = if *self.peek() == Tok::Imp {
            self.pos += 1;
            Formula::imp(lhs, self.imp()?)
        } else {
            lhs
        };
        self.depth -= 1;
        Ok(f)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.and()?;
        while *self.peek() == Tok::Or {
            self.pos += 1;
            f = Formula::or(f, self.and()?);
        }
        Ok(f)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.not()?;
        while *self.peek() == Tok::And {
            self.pos += 1;
            f = Formula::and(f, self.not()?);
        }
        Ok(f)
    }

    fn not(&mut self) -> Result<Formula, ParseError> {
        let mut count = 0;
        while *self.peek() == Tok::Not {
            self.pos += 1;
            count += 1;
        }
        let mut f = self.atom()?;
        for _ in 0..count {
            f = Formula::not(f);
        }
        Ok(f)
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        let f = match self.peek().clone() {
            Tok::Var(v) => Formula::Var(v),
            Tok::True => Formula::Top,
            Tok::False => Formula::Bot,
            Tok::LParen => {
                self.pos += 1;
                let inner = self.imp()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error(vec!["\")\"", "\"&\"", "\"|\"", "\"->\""]));
                }
                inner
            }
            _ => return Err(self.error(ATOM_START.to_vec())),
        };
        self.pos += 1;
        Ok(f)
    }
}

/// Parse a formula; `→` is right-associative, `|` and `&` associate left.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser { toks: lex(text)?, pos: 0, depth: 0 };
    let f = p.imp()?;
    if *p.peek() != Tok::End {
        return Err(p.error(vec!["end of input", "\"&\"", "\"|\"", "\"->\""]));
    }
    if f.depth() > MAX_DEPTH {
        return Err(ParseError { position: 0, found: format!("formula deeper than {MAX_DEPTH}"), expected: vec![] });
    }
    Ok(f)
}
