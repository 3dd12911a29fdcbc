//! The model file format.
//!
//! ```text
//! -- three worlds branching over one element
//! worlds: w0, w1, w2
//! leq: (w0, w1), (w0, w2)
//! dom: w0: [e0], w1: [e0], w2: [e0]
//! srefutes: (w1, X)
//! exploding:
//! ```
//!
//! Sections may appear in any order and repeat; `leq:` entries receive
//! the reflexive-transitive closure on load, and the loader reports the
//! pairs the closure added. Lines starting with `--` are comments.
//! Atoms in `srefutes:` are written in the formula grammar over the
//! model's elements.

use std::collections::BTreeSet;
use std::fmt;

use super::{FiniteModel, GroundAtom, ModelViolation};
use crate::syntax::{parse_formula, Formula, Ident, Term};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelParseError {
    Syntax { line: usize, msg: String },
    Invalid(ModelViolation),
}

impl fmt::Display for ModelParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelParseError::Syntax { line, msg } => write!(f, "line {line}: {msg}"),
            ModelParseError::Invalid(v) => write!(f, "invalid model: {v}"),
        }
    }
}

impl std::error::Error for ModelParseError {}

impl From<ModelViolation> for ModelParseError {
    fn from(v: ModelViolation) -> Self {
        ModelParseError::Invalid(v)
    }
}

/// Split on commas that are not nested inside parentheses or brackets.
fn split_entries(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts.into_iter().map(str::trim).filter(|p| !p.is_empty()).collect()
}

fn parse_pair(entry: &str, line: usize) -> Result<(String, String), ModelParseError> {
    let inner = entry
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| ModelParseError::Syntax {
            line,
            msg: format!("expected a parenthesised pair, found '{entry}'"),
        })?;
    let comma = inner.find(',').ok_or_else(|| ModelParseError::Syntax {
        line,
        msg: format!("expected a comma inside '{entry}'"),
    })?;
    Ok((
        inner[..comma].trim().to_string(),
        inner[comma + 1..].trim().to_string(),
    ))
}

/// Parse a model file, apply the order closure, validate, and return
/// the model along with the leq pairs the closure added.
pub fn parse_model(src: &str) -> Result<(FiniteModel, Vec<(Ident, Ident)>), ModelParseError> {
    let mut worlds: Vec<Ident> = Vec::new();
    let mut leq: Vec<(Ident, Ident)> = Vec::new();
    let mut dom: Vec<(Ident, Vec<Ident>)> = Vec::new();
    let mut srefutes: Vec<(Ident, GroundAtom)> = Vec::new();
    let mut exploding: Vec<Ident> = Vec::new();
    let mut elements: BTreeSet<Ident> = BTreeSet::new();
    let mut atom_texts: Vec<(usize, Ident, String)> = Vec::new();

    for (i, raw) in src.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with("--") {
            continue;
        }
        let (key, rest) = match line.split_once(':') {
            Some(kv) => kv,
            None => {
                return Err(ModelParseError::Syntax {
                    line: lineno,
                    msg: format!("expected 'section: entries', found '{line}'"),
                })
            }
        };
        match key.trim() {
            "worlds" => {
                for w in split_entries(rest) {
                    worlds.push(w.to_string());
                }
            }
            "leq" => {
                for entry in split_entries(rest) {
                    leq.push(parse_pair(entry, lineno)?);
                }
            }
            "dom" => {
                // entries of the form `w: [e0, e1]`
                for entry in split_entries(rest) {
                    let (w, list) =
                        entry
                            .split_once(':')
                            .ok_or_else(|| ModelParseError::Syntax {
                                line: lineno,
                                msg: format!("expected 'world: [elements]', found '{entry}'"),
                            })?;
                    let list = list.trim();
                    let inner = list
                        .strip_prefix('[')
                        .and_then(|s| s.strip_suffix(']'))
                        .ok_or_else(|| ModelParseError::Syntax {
                            line: lineno,
                            msg: format!("expected a bracketed element list, found '{list}'"),
                        })?;
                    let elems: Vec<Ident> = inner
                        .split(',')
                        .map(str::trim)
                        .filter(|e| !e.is_empty())
                        .map(|e| e.to_string())
                        .collect();
                    elements.extend(elems.iter().cloned());
                    dom.push((w.trim().to_string(), elems));
                }
            }
            "srefutes" => {
                for entry in split_entries(rest) {
                    let (w, atom) = parse_pair(entry, lineno)?;
                    atom_texts.push((lineno, w, atom));
                }
            }
            "exploding" => {
                for w in split_entries(rest) {
                    exploding.push(w.to_string());
                }
            }
            other => {
                return Err(ModelParseError::Syntax {
                    line: lineno,
                    msg: format!("unknown section '{other}'"),
                })
            }
        }
    }

    // Atom arguments are elements; parse them with the element set as
    // the constant environment.
    for (lineno, w, text) in atom_texts {
        let parsed =
            parse_formula(&text, &elements).map_err(|e| ModelParseError::Syntax {
                line: lineno,
                msg: format!("in atom '{text}': {e}"),
            })?;
        let atom = match parsed {
            Formula::Atom(pred, args) => {
                let mut elems = Vec::new();
                for t in args {
                    match t {
                        Term::Const(e) => elems.push(e),
                        other => {
                            return Err(ModelParseError::Syntax {
                                line: lineno,
                                msg: format!(
                                    "atom argument '{}' is not a declared element",
                                    other
                                ),
                            })
                        }
                    }
                }
                (pred, elems)
            }
            other => {
                return Err(ModelParseError::Syntax {
                    line: lineno,
                    msg: format!("'{other}' is not an atom"),
                })
            }
        };
        srefutes.push((w, atom));
    }

    let (model, added) = FiniteModel::new_closed(worlds, &leq, dom, srefutes, exploding)?;
    Ok((model, added))
}

/// Print a model in the file format. Reflexive leq pairs are omitted;
/// the loader's closure restores them.
pub fn print_model(m: &FiniteModel) -> String {
    let mut out = String::new();
    out.push_str("worlds: ");
    out.push_str(&m.world_names().join(", "));
    out.push('\n');
    let mut pairs = Vec::new();
    for i in 0..m.world_count() {
        for j in 0..m.world_count() {
            if i != j && m.leq_idx(i, j) {
                // skip pairs implied by transitivity through a third world
                let implied = (0..m.world_count()).any(|k| {
                    k != i && k != j && m.leq_idx(i, k) && m.leq_idx(k, j)
                });
                if !implied {
                    pairs.push(format!("({}, {})", m.world_names()[i], m.world_names()[j]));
                }
            }
        }
    }
    out.push_str("leq: ");
    out.push_str(&pairs.join(", "));
    out.push('\n');
    out.push_str("dom: ");
    let doms: Vec<String> = (0..m.world_count())
        .map(|w| {
            format!(
                "{}: [{}]",
                m.world_names()[w],
                m.dom_idx(w).iter().cloned().collect::<Vec<_>>().join(", ")
            )
        })
        .collect();
    out.push_str(&doms.join(", "));
    out.push('\n');
    out.push_str("srefutes: ");
    let atoms: Vec<String> = m
        .atoms()
        .map(|(w, (pred, args))| {
            let atom = if args.is_empty() {
                pred.clone()
            } else {
                format!("{}({})", pred, args.join(", "))
            };
            format!("({}, {})", m.world_names()[*w], atom)
        })
        .collect();
    out.push_str(&atoms.join(", "));
    out.push('\n');
    out.push_str("exploding: ");
    let expl: Vec<&str> = (0..m.world_count())
        .filter(|w| m.exploding_idx(*w))
        .map(|w| m.world_names()[w].as_str())
        .collect();
    out.push_str(&expl.join(", "));
    out.push('\n');
    out
}
