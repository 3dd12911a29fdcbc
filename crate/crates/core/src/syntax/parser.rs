//! Recursive-descent parser for the ASCII formula grammar.
//!
//! ```text
//! formula := or ('->' formula)?            right-associative
//! or      := and ('|' or)?
//! and     := unary ('&' and)?
//! unary   := '~' unary
//!          | ('forall' | 'exists') IDENT '.' formula    extends maximally right
//!          | 'T' | '_|_' | '(' formula ')'
//!          | IDENT ('(' term (',' term)* ')')?
//! term    := IDENT ('(' term (',' term)* ')')?
//! ```
//!
//! In term position a bare lowercase identifier is a variable unless it
//! appears in the caller-supplied constant set (a file's `consts:`
//! header, or a model's element list). `#`-prefixed names are rejected
//! outright.

use std::collections::BTreeSet;
use std::fmt;

use super::{Formula, Ident, Term};

/// Syntax error with byte position and 1-based line/column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.msg)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    LParen,
    RParen,
    Comma,
    Dot,
    Arrow,
    Amp,
    Pipe,
    Tilde,
    Top,
    Bot,
    Forall,
    Exists,
    Ident(String),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::LParen => f.write_str("("),
            Tok::RParen => f.write_str(")"),
            Tok::Comma => f.write_str(","),
            Tok::Dot => f.write_str("."),
            Tok::Arrow => f.write_str("->"),
            Tok::Amp => f.write_str("&"),
            Tok::Pipe => f.write_str("|"),
            Tok::Tilde => f.write_str("~"),
            Tok::Top => f.write_str("T"),
            Tok::Bot => f.write_str("_|_"),
            Tok::Forall => f.write_str("forall"),
            Tok::Exists => f.write_str("exists"),
            Tok::Ident(s) => f.write_str(s),
        }
    }
}

struct Lexer<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

fn line_col(src: &str, pos: usize) -> (usize, usize) {
    let mut line = 1;
    let mut col = 1;
    for (i, ch) in src.char_indices() {
        if i >= pos {
            break;
        }
        if ch == '\n' {
            line += 1;
            col = 1;
        } else {
            col += 1;
        }
    }
    (line, col)
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src,
            bytes: src.as_bytes(),
            pos: 0,
        }
    }

    fn error(&self, pos: usize, msg: impl Into<String>) -> ParseError {
        let (line, col) = line_col(self.src, pos);
        ParseError {
            pos,
            line,
            col,
            msg: msg.into(),
        }
    }

    fn tokens(mut self) -> Result<Vec<(usize, Tok)>, ParseError> {
        let mut out = Vec::new();
        while self.pos < self.bytes.len() {
            let b = self.bytes[self.pos];
            let start = self.pos;
            match b {
                b' ' | b'\t' | b'\r' | b'\n' => {
                    self.pos += 1;
                }
                b'(' => {
                    self.pos += 1;
                    out.push((start, Tok::LParen));
                }
                b')' => {
                    self.pos += 1;
                    out.push((start, Tok::RParen));
                }
                b',' => {
                    self.pos += 1;
                    out.push((start, Tok::Comma));
                }
                b'.' => {
                    self.pos += 1;
                    out.push((start, Tok::Dot));
                }
                b'&' => {
                    self.pos += 1;
                    out.push((start, Tok::Amp));
                }
                b'|' => {
                    self.pos += 1;
                    out.push((start, Tok::Pipe));
                }
                b'~' => {
                    self.pos += 1;
                    out.push((start, Tok::Tilde));
                }
                b'-' => {
                    if self.bytes.get(self.pos + 1) == Some(&b'>') {
                        self.pos += 2;
                        out.push((start, Tok::Arrow));
                    } else {
                        return Err(self.error(start, "expected '->'"));
                    }
                }
                b'_' => {
                    if self.src[self.pos..].starts_with("_|_") {
                        self.pos += 3;
                        out.push((start, Tok::Bot));
                    } else {
                        return Err(self.error(start, "expected '_|_'"));
                    }
                }
                b'#' => {
                    return Err(self.error(
                        start,
                        "identifiers starting with '#' are reserved for generated constants",
                    ));
                }
                _ if b.is_ascii_alphabetic() => {
                    let mut end = self.pos + 1;
                    while end < self.bytes.len()
                        && (self.bytes[end].is_ascii_alphanumeric() || self.bytes[end] == b'_')
                    {
                        // `_|_` may directly follow an identifier only via whitespace;
                        // an underscore glues onto the identifier.
                        if self.bytes[end] == b'_' && self.src[end..].starts_with("_|_") {
                            break;
                        }
                        end += 1;
                    }
                    let word = &self.src[self.pos..end];
                    self.pos = end;
                    let tok = match word {
                        "T" => Tok::Top,
                        "forall" => Tok::Forall,
                        "exists" => Tok::Exists,
                        _ => Tok::Ident(word.to_string()),
                    };
                    out.push((start, tok));
                }
                _ => {
                    return Err(self.error(start, format!("unexpected character '{}'", b as char)))
                }
            }
        }
        Ok(out)
    }
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(usize, Tok)>,
    idx: usize,
    consts: &'a BTreeSet<Ident>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|(_, t)| t)
    }

    fn peek_pos(&self) -> usize {
        self.toks
            .get(self.idx)
            .map(|(p, _)| *p)
            .unwrap_or(self.src.len())
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.idx).map(|(_, t)| t.clone());
        if t.is_some() {
            self.idx += 1;
        }
        t
    }

    fn error(&self, msg: impl Into<String>) -> ParseError {
        let pos = self.peek_pos();
        let (line, col) = line_col(self.src, pos);
        ParseError {
            pos,
            line,
            col,
            msg: msg.into(),
        }
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        match self.next() {
            Some(t) if t == want => Ok(()),
            Some(t) => Err(ParseError {
                msg: format!("expected '{}', found '{}'", want, t),
                ..self_err(self)
            }),
            None => Err(ParseError {
                msg: format!("expected '{}', found end of input", want),
                ..self_err(self)
            }),
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or_level()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.next();
            let rhs = self.formula()?;
            Ok(Formula::imp(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn or_level(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.and_level()?;
        if self.peek() == Some(&Tok::Pipe) {
            self.next();
            let rhs = self.or_level()?;
            Ok(Formula::or(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn and_level(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.unary()?;
        if self.peek() == Some(&Tok::Amp) {
            self.next();
            let rhs = self.and_level()?;
            Ok(Formula::and(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(Tok::Tilde) => {
                self.next();
                Ok(Formula::neg(self.unary()?))
            }
            Some(Tok::Forall) | Some(Tok::Exists) => {
                let is_forall = self.peek() == Some(&Tok::Forall);
                self.next();
                let var = match self.next() {
                    Some(Tok::Ident(x)) => x,
                    _ => return Err(self.error("expected a variable after the quantifier")),
                };
                self.expect(Tok::Dot)?;
                // The body extends maximally to the right.
                let body = self.formula()?;
                Ok(if is_forall {
                    Formula::Forall(var, Box::new(body))
                } else {
                    Formula::Exists(var, Box::new(body))
                })
            }
            Some(Tok::Top) => {
                self.next();
                Ok(Formula::Top)
            }
            Some(Tok::Bot) => {
                self.next();
                Ok(Formula::Bot)
            }
            Some(Tok::LParen) => {
                self.next();
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Some(Tok::Ident(_)) => {
                let name = match self.next() {
                    Some(Tok::Ident(s)) => s,
                    _ => unreachable!(),
                };
                let args = if self.peek() == Some(&Tok::LParen) {
                    self.next();
                    let args = self.term_list()?;
                    self.expect(Tok::RParen)?;
                    args
                } else {
                    Vec::new()
                };
                Ok(Formula::Atom(name, args))
            }
            Some(t) => Err(self.error(format!("expected a formula, found '{}'", t))),
            None => Err(self.error("expected a formula, found end of input")),
        }
    }

    fn term_list(&mut self) -> Result<Vec<Term>, ParseError> {
        let mut out = vec![self.term()?];
        while self.peek() == Some(&Tok::Comma) {
            self.next();
            out.push(self.term()?);
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        match self.next() {
            Some(Tok::Ident(name)) => {
                if !name.chars().next().is_some_and(|c| c.is_ascii_lowercase()) {
                    return Err(ParseError {
                        msg: format!("term symbol '{}' must start with a lowercase letter", name),
                        ..self_err(self)
                    });
                }
                if self.peek() == Some(&Tok::LParen) {
                    self.next();
                    let args = self.term_list()?;
                    self.expect(Tok::RParen)?;
                    Ok(Term::App(name, args))
                } else if self.consts.contains(&name) {
                    Ok(Term::Const(name))
                } else {
                    Ok(Term::Var(name))
                }
            }
            Some(t) => Err(ParseError {
                msg: format!("expected a term, found '{}'", t),
                ..self_err(self)
            }),
            None => Err(ParseError {
                msg: "expected a term, found end of input".to_string(),
                ..self_err(self)
            }),
        }
    }
}

fn self_err(p: &Parser<'_>) -> ParseError {
    // Position of the token just consumed, if any, else the lookahead.
    let pos = if p.idx > 0 {
        p.toks[p.idx - 1].0
    } else {
        p.peek_pos()
    };
    let (line, col) = line_col(p.src, pos);
    ParseError {
        pos,
        line,
        col,
        msg: String::new(),
    }
}

/// Parse a formula. Bare lowercase identifiers in term position are
/// variables unless listed in `consts`.
pub fn parse_formula(src: &str, consts: &BTreeSet<Ident>) -> Result<Formula, ParseError> {
    let toks = Lexer::new(src).tokens()?;
    let mut p = Parser {
        src,
        toks,
        idx: 0,
        consts,
    };
    let f = p.formula()?;
    if let Some(t) = p.peek() {
        return Err(p.error(format!("unexpected trailing input '{}'", t)));
    }
    Ok(f)
}

/// Parse a single term under the same conventions as [`parse_formula`].
pub fn parse_term(src: &str, consts: &BTreeSet<Ident>) -> Result<Term, ParseError> {
    let toks = Lexer::new(src).tokens()?;
    let mut p = Parser {
        src,
        toks,
        idx: 0,
        consts,
    };
    let t = p.term()?;
    if let Some(t) = p.peek() {
        return Err(p.error(format!("unexpected trailing input '{}'", t)));
    }
    Ok(t)
}
