//! The derivation file format: nested parenthesised records, one node
//! per line.
//!
//! ```text
//! consts: c, d
//! (rule Cut (seq plain "X" "X")
//!   (rule AxR (seq rfocus "X" "X" "X"))
//!   (rule AxL (seq lfocus "X" "X" "X")))
//! ```
//!
//! Grammar per node:
//! `(rule <TAG> [term <t>] [eig <x>] (seq <kind> "<gamma>" ["<focus>"] "<delta>") <premise>*)`
//! with `kind` one of `plain`, `lfocus`, `rfocus`; contexts are
//! comma-separated formulae in the formula grammar; `lfocus`/`rfocus`
//! sequents carry three quoted strings, `plain` two. A witness `<t>` may
//! be a bare identifier or a quoted term; the printer always quotes.
//! The optional `consts:` header declares which lowercase identifiers
//! are constants.
//!
//! Positional rule data (which context occurrence an axiom consumes,
//! where a focus rule re-inserts its formula) is not written; the parser
//! infers the first position that satisfies the rule schema. Unknown
//! tags are rejected.

use std::collections::BTreeSet;
use std::fmt;

use super::{Derivation, Rule, Sequent};
use crate::syntax::{parse_formula, parse_term, print_formula, print_term, Context, Formula, Ident};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationParseError {
    pub line: usize,
    pub msg: String,
}

impl fmt::Display for DerivationParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.msg)
    }
}

impl std::error::Error for DerivationParseError {}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    LParen,
    RParen,
    Atom(String),
    Str(String),
}

fn tokenize(src: &str, header_lines: usize) -> Result<Vec<(usize, Tok)>, DerivationParseError> {
    let mut out = Vec::new();
    let mut line = header_lines + 1;
    let mut chars = src.char_indices().peekable();
    while let Some((_, c)) = chars.next() {
        match c {
            '\n' => line += 1,
            c if c.is_whitespace() => {}
            '(' => out.push((line, Tok::LParen)),
            ')' => out.push((line, Tok::RParen)),
            '"' => {
                let mut s = String::new();
                let mut closed = false;
                for (_, c2) in chars.by_ref() {
                    if c2 == '"' {
                        closed = true;
                        break;
                    }
                    if c2 == '\n' {
                        line += 1;
                    }
                    s.push(c2);
                }
                if !closed {
                    return Err(DerivationParseError {
                        line,
                        msg: "unterminated string".into(),
                    });
                }
                out.push((line, Tok::Str(s)));
            }
            _ => {
                let mut s = String::new();
                s.push(c);
                while let Some(&(_, c2)) = chars.peek() {
                    if c2.is_whitespace() || c2 == '(' || c2 == ')' || c2 == '"' {
                        break;
                    }
                    s.push(c2);
                    chars.next();
                }
                out.push((line, Tok::Atom(s)));
            }
        }
    }
    Ok(out)
}

struct P<'a> {
    toks: Vec<(usize, Tok)>,
    idx: usize,
    consts: &'a BTreeSet<Ident>,
}

impl<'a> P<'a> {
    fn line(&self) -> usize {
        self.toks
            .get(self.idx)
            .or_else(|| self.toks.last())
            .map(|(l, _)| *l)
            .unwrap_or(1)
    }

    fn err(&self, msg: impl Into<String>) -> DerivationParseError {
        DerivationParseError {
            line: self.line(),
            msg: msg.into(),
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|(_, t)| t)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.idx).map(|(_, t)| t.clone());
        if t.is_some() {
            self.idx += 1;
        }
        t
    }

    fn expect_lparen(&mut self) -> Result<(), DerivationParseError> {
        match self.next() {
            Some(Tok::LParen) => Ok(()),
            other => Err(self.err(format!("expected '(', found {:?}", other))),
        }
    }

    fn expect_rparen(&mut self) -> Result<(), DerivationParseError> {
        match self.next() {
            Some(Tok::RParen) => Ok(()),
            other => Err(self.err(format!("expected ')', found {:?}", other))),
        }
    }

    fn expect_atom(&mut self, want: &str) -> Result<(), DerivationParseError> {
        match self.next() {
            Some(Tok::Atom(a)) if a == want => Ok(()),
            other => Err(self.err(format!("expected '{}', found {:?}", want, other))),
        }
    }

    fn atom(&mut self) -> Result<String, DerivationParseError> {
        match self.next() {
            Some(Tok::Atom(a)) => Ok(a),
            other => Err(self.err(format!("expected an atom, found {:?}", other))),
        }
    }

    fn string(&mut self) -> Result<String, DerivationParseError> {
        match self.next() {
            Some(Tok::Str(s)) => Ok(s),
            other => Err(self.err(format!("expected a quoted string, found {:?}", other))),
        }
    }

    fn context(&mut self, s: &str) -> Result<Context, DerivationParseError> {
        let line = self.line();
        let mut items = Vec::new();
        let trimmed = s.trim();
        if !trimmed.is_empty() {
            for part in split_top_level(trimmed) {
                let f = parse_formula(part.trim(), self.consts).map_err(|e| {
                    DerivationParseError {
                        line,
                        msg: format!("in context formula '{}': {}", part.trim(), e),
                    }
                })?;
                items.push(f);
            }
        }
        Ok(Context::new(items))
    }

    fn formula(&mut self, s: &str) -> Result<Formula, DerivationParseError> {
        let line = self.line();
        parse_formula(s.trim(), self.consts).map_err(|e| DerivationParseError {
            line,
            msg: format!("in formula '{}': {}", s.trim(), e),
        })
    }

    fn node(&mut self) -> Result<Derivation, DerivationParseError> {
        self.expect_lparen()?;
        self.expect_atom("rule")?;
        let tag = self.atom()?;
        let mut witness = None;
        let mut eigen = None;
        loop {
            match self.peek() {
                Some(Tok::Atom(a)) if a == "term" => {
                    self.next();
                    let src = self.atom_or_string()?;
                    let line = self.line();
                    let t = parse_term(&src, self.consts).map_err(|e| DerivationParseError {
                        line,
                        msg: format!("in witness term '{}': {}", src, e),
                    })?;
                    witness = Some(t);
                }
                Some(Tok::Atom(a)) if a == "eig" => {
                    self.next();
                    eigen = Some(self.atom()?);
                }
                _ => break,
            }
        }
        let conclusion = self.sequent()?;
        let mut premises = Vec::new();
        while self.peek() == Some(&Tok::LParen) {
            premises.push(self.node()?);
        }
        self.expect_rparen()?;
        let rule = self.build_rule(&tag, witness, eigen, &conclusion, &premises)?;
        Ok(Derivation::new(rule, conclusion, premises))
    }

    fn atom_or_string(&mut self) -> Result<String, DerivationParseError> {
        match self.next() {
            Some(Tok::Atom(a)) => Ok(a),
            Some(Tok::Str(s)) => Ok(s),
            other => Err(self.err(format!("expected a term, found {:?}", other))),
        }
    }

    fn sequent(&mut self) -> Result<Sequent, DerivationParseError> {
        self.expect_lparen()?;
        self.expect_atom("seq")?;
        let kind = self.atom()?;
        let seq = match kind.as_str() {
            "plain" => {
                let g = self.string()?;
                let d = self.string()?;
                Sequent::plain(self.context(&g)?, self.context(&d)?)
            }
            "lfocus" => {
                let g = self.string()?;
                let f = self.string()?;
                let d = self.string()?;
                Sequent::left_focus(self.context(&g)?, self.formula(&f)?, self.context(&d)?)
            }
            "rfocus" => {
                let g = self.string()?;
                let f = self.string()?;
                let d = self.string()?;
                Sequent::right_focus(self.context(&g)?, self.formula(&f)?, self.context(&d)?)
            }
            other => return Err(self.err(format!("unknown sequent kind '{}'", other))),
        };
        self.expect_rparen()?;
        Ok(seq)
    }

    /// Reconstruct positional rule data by first fit against the schema.
    /// Inference never fails outright: ill-formed nodes get position 0
    /// and are reported by the checker, not the parser.
    fn build_rule(
        &self,
        tag: &str,
        witness: Option<crate::syntax::Term>,
        eigen: Option<String>,
        conclusion: &Sequent,
        premises: &[Derivation],
    ) -> Result<Rule, DerivationParseError> {
        let focus = conclusion.focus();
        let find_insertion = |concl: &Context, prem: &Context, f: Option<&Formula>| -> usize {
            if let Some(f) = f {
                for j in 0..prem.len() {
                    if prem.get(j).unwrap().alpha_eq(f) && prem.removed(j).alpha_eq(concl) {
                        return j;
                    }
                }
            }
            0
        };
        let rule = match tag {
            "AxL" => Rule::AxL {
                index: focus
                    .and_then(|f| conclusion.delta().find_alpha(f))
                    .unwrap_or(0),
            },
            "AxR" => Rule::AxR {
                index: focus
                    .and_then(|f| conclusion.gamma().find_alpha(f))
                    .unwrap_or(0),
            },
            "Mu" => {
                let index = premises.first().map_or(0, |p| {
                    find_insertion(conclusion.delta(), p.conclusion.delta(), focus)
                });
                Rule::Mu { index }
            }
            "MuTilde" => {
                let index = premises.first().map_or(0, |p| {
                    find_insertion(conclusion.gamma(), p.conclusion.gamma(), focus)
                });
                Rule::MuTilde { index }
            }
            "ImpL" => Rule::ImpL,
            "ImpR" => {
                let a = match focus {
                    Some(Formula::Imp(a, _)) => Some(a.as_ref()),
                    _ => None,
                };
                let index = premises.first().map_or(0, |p| {
                    find_insertion(conclusion.gamma(), p.conclusion.gamma(), a)
                });
                Rule::ImpR { index }
            }
            "OrL" => Rule::OrL,
            "OrR1" => Rule::OrR1,
            "OrR2" => Rule::OrR2,
            "AndL1" => Rule::AndL1,
            "AndL2" => Rule::AndL2,
            "AndR" => Rule::AndR,
            "ExL" => Rule::ExL {
                eigen: eigen.ok_or_else(|| self.err("ExL requires 'eig <x>'"))?,
            },
            "AllR" => Rule::AllR {
                eigen: eigen.ok_or_else(|| self.err("AllR requires 'eig <x>'"))?,
            },
            "ExR" => Rule::ExR {
                witness: witness.ok_or_else(|| self.err("ExR requires 'term <t>'"))?,
            },
            "AllL" => Rule::AllL {
                witness: witness.ok_or_else(|| self.err("AllL requires 'term <t>'"))?,
            },
            "BotL" => Rule::BotL,
            "TopR" => Rule::TopR,
            "Cut" => {
                let formula = premises
                    .iter()
                    .find_map(|p| match &p.conclusion {
                        Sequent::RightFocus { focus, .. } => Some(focus.clone()),
                        _ => None,
                    })
                    .or_else(|| {
                        premises.iter().find_map(|p| match &p.conclusion {
                            Sequent::LeftFocus { focus, .. } => Some(focus.clone()),
                            _ => None,
                        })
                    })
                    .unwrap_or(Formula::Bot);
                Rule::Cut { formula }
            }
            other => return Err(self.err(format!("unknown rule tag '{}'", other))),
        };
        Ok(rule)
    }
}

/// Split a context string on commas not enclosed in parentheses.
fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

/// Parse a derivation file: an optional `consts:` header, then a single
/// node record.
pub fn parse_derivation(src: &str) -> Result<Derivation, DerivationParseError> {
    let mut consts: BTreeSet<Ident> = BTreeSet::new();
    let mut body_start = 0usize;
    let mut header_lines = 0usize;
    for line in src.lines() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with("--") {
            body_start += line.len() + 1;
            header_lines += 1;
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix("consts:") {
            for name in rest.split(',') {
                let name = name.trim();
                if !name.is_empty() {
                    consts.insert(name.to_string());
                }
            }
            body_start += line.len() + 1;
            header_lines += 1;
            continue;
        }
        break;
    }
    let body = &src[body_start.min(src.len())..];
    let toks = tokenize(body, header_lines)?;
    let mut p = P {
        toks,
        idx: 0,
        consts: &consts,
    };
    let d = p.node()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input after the root node"));
    }
    Ok(d)
}

/// Print a derivation in the file format, one node per line, premises
/// indented two spaces per depth. Output is deterministic and reparses
/// to an alpha-equal tree.
pub fn print_derivation(d: &Derivation) -> String {
    let mut out = String::new();
    let consts: Vec<Ident> = d
        .all_consts()
        .into_iter()
        .filter(|c| !c.starts_with(crate::syntax::GENSYM_PREFIX))
        .collect();
    if !consts.is_empty() {
        out.push_str("consts: ");
        out.push_str(&consts.join(", "));
        out.push('\n');
    }
    print_node(d, 0, &mut out);
    out.push('\n');
    out
}

fn print_node(d: &Derivation, depth: usize, out: &mut String) {
    for _ in 0..depth {
        out.push_str("  ");
    }
    out.push_str("(rule ");
    out.push_str(d.rule.tag());
    match &d.rule {
        Rule::ExR { witness } | Rule::AllL { witness } => {
            // quoted so that application terms survive tokenisation
            out.push_str(" term \"");
            out.push_str(&print_term(witness));
            out.push('"');
        }
        Rule::ExL { eigen } | Rule::AllR { eigen } => {
            out.push_str(" eig ");
            out.push_str(eigen);
        }
        _ => {}
    }
    out.push(' ');
    print_sequent_record(&d.conclusion, out);
    for p in &d.premises {
        out.push('\n');
        print_node(p, depth + 1, out);
    }
    out.push(')');
}

fn print_sequent_record(s: &Sequent, out: &mut String) {
    let ctx = |c: &Context| {
        c.iter()
            .map(print_formula)
            .collect::<Vec<_>>()
            .join(", ")
    };
    match s {
        Sequent::Plain { gamma, delta } => {
            out.push_str("(seq plain \"");
            out.push_str(&ctx(gamma));
            out.push_str("\" \"");
            out.push_str(&ctx(delta));
            out.push_str("\")");
        }
        Sequent::LeftFocus {
            gamma,
            focus,
            delta,
        } => {
            out.push_str("(seq lfocus \"");
            out.push_str(&ctx(gamma));
            out.push_str("\" \"");
            out.push_str(&print_formula(focus));
            out.push_str("\" \"");
            out.push_str(&ctx(delta));
            out.push_str("\")");
        }
        Sequent::RightFocus {
            gamma,
            focus,
            delta,
        } => {
            out.push_str("(seq rfocus \"");
            out.push_str(&ctx(gamma));
            out.push_str("\" \"");
            out.push_str(&print_formula(focus));
            out.push_str("\" \"");
            out.push_str(&ctx(delta));
            out.push_str("\")");
        }
    }
}
