//! First-order syntax: terms, formulae, contexts, substitution, and the
//! double-negation translation.
//!
//! The connective set is `{T, _|_, &, |, ->, exists, forall}` over atoms
//! built from predicate symbols. Negation is notation only: `~A` is
//! `A -> _|_` and there is no `Neg` constructor. Identifiers beginning
//! with `#` form a reserved namespace for machine-generated constants;
//! the parser rejects them, so gensym output can never collide with
//! anything written by hand.

mod parser;
mod printer;

pub use parser::{parse_formula, parse_term, ParseError};
pub use printer::{print_formula, print_term};

use std::collections::BTreeSet;
use std::fmt;

/// Symbol name. Nonempty; `#`-prefixed names are reserved for gensyms.
pub type Ident = String;

/// Prefix of the reserved gensym namespace.
pub const GENSYM_PREFIX: &str = "#";

/// The distinguished constant used to close stray free variables when a
/// formula is instantiated under an association that misses them.
pub const C0: &str = "#c0";

/// A first-order term.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(Ident),
    Const(Ident),
    App(Ident, Vec<Term>),
}

impl Term {
    /// Free variables, in symbol order.
    pub fn free_vars(&self) -> BTreeSet<Ident> {
        let mut out = BTreeSet::new();
        self.collect_free_vars(&mut out);
        out
    }

    fn collect_free_vars(&self, out: &mut BTreeSet<Ident>) {
        match self {
            Term::Var(x) => {
                out.insert(x.clone());
            }
            Term::Const(_) => {}
            Term::App(_, args) => {
                for a in args {
                    a.collect_free_vars(out);
                }
            }
        }
    }

    /// Constant symbols occurring in the term.
    pub fn consts(&self) -> BTreeSet<Ident> {
        let mut out = BTreeSet::new();
        self.collect_consts(&mut out);
        out
    }

    fn collect_consts(&self, out: &mut BTreeSet<Ident>) {
        match self {
            Term::Var(_) => {}
            Term::Const(c) => {
                out.insert(c.clone());
            }
            Term::App(_, args) => {
                for a in args {
                    a.collect_consts(out);
                }
            }
        }
    }

    /// A term is closed iff it contains no variable.
    pub fn is_closed(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Const(_) => true,
            Term::App(_, args) => args.iter().all(Term::is_closed),
        }
    }

    /// Replace free occurrences of the variable `x` by `t`.
    pub fn subst_var(&self, x: &str, t: &Term) -> Term {
        match self {
            Term::Var(y) if y == x => t.clone(),
            Term::Var(_) | Term::Const(_) => self.clone(),
            Term::App(f, args) => {
                Term::App(f.clone(), args.iter().map(|a| a.subst_var(x, t)).collect())
            }
        }
    }

    /// Replace every occurrence of the constant `c` by `t`.
    pub fn replace_const(&self, c: &str, t: &Term) -> Term {
        match self {
            Term::Const(d) if d == c => t.clone(),
            Term::Var(_) | Term::Const(_) => self.clone(),
            Term::App(f, args) => Term::App(
                f.clone(),
                args.iter().map(|a| a.replace_const(c, t)).collect(),
            ),
        }
    }

    fn collect_idents(&self, out: &mut BTreeSet<Ident>) {
        match self {
            Term::Var(x) => {
                out.insert(x.clone());
            }
            Term::Const(c) => {
                out.insert(c.clone());
            }
            Term::App(f, args) => {
                out.insert(f.clone());
                for a in args {
                    a.collect_idents(out);
                }
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_term(self))
    }
}

/// A first-order formula.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(Ident, Vec<Term>),
    Top,
    Bot,
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Forall(Ident, Box<Formula>),
    Exists(Ident, Box<Formula>),
}

impl Formula {
    pub fn atom(pred: &str) -> Formula {
        Formula::Atom(pred.to_string(), Vec::new())
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    /// `~A`, i.e. `A -> _|_`.
    #[allow(clippy::should_implement_trait)] // constructor, not unary minus
    pub fn neg(a: Formula) -> Formula {
        Formula::imp(a, Formula::Bot)
    }

    pub fn forall(x: &str, body: Formula) -> Formula {
        Formula::Forall(x.to_string(), Box::new(body))
    }

    pub fn exists(x: &str, body: Formula) -> Formula {
        Formula::Exists(x.to_string(), Box::new(body))
    }

    /// Matches the `~A` sugar, returning the negated formula.
    pub fn as_neg(&self) -> Option<&Formula> {
        match self {
            Formula::Imp(a, b) if **b == Formula::Bot => Some(a),
            _ => None,
        }
    }

    /// Free variables, in symbol order.
    pub fn free_vars(&self) -> BTreeSet<Ident> {
        let mut out = BTreeSet::new();
        self.collect_free_vars(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free_vars(&self, bound: &mut Vec<Ident>, out: &mut BTreeSet<Ident>) {
        match self {
            Formula::Atom(_, args) => {
                for t in args {
                    for v in t.free_vars() {
                        if !bound.contains(&v) {
                            out.insert(v);
                        }
                    }
                }
            }
            Formula::Top | Formula::Bot => {}
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.collect_free_vars(bound, out);
                b.collect_free_vars(bound, out);
            }
            Formula::Forall(x, body) | Formula::Exists(x, body) => {
                bound.push(x.clone());
                body.collect_free_vars(bound, out);
                bound.pop();
            }
        }
    }

    /// A sentence is a formula with no free variables.
    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Constant symbols occurring anywhere in the formula.
    pub fn consts(&self) -> BTreeSet<Ident> {
        let mut out = BTreeSet::new();
        self.visit_terms(&mut |t| t.collect_consts(&mut out));
        out
    }

    /// Every identifier in the formula: variables free and bound,
    /// constants, function symbols, and predicate symbols. Used when
    /// picking names that must clash with nothing in sight.
    pub fn all_idents(&self) -> BTreeSet<Ident> {
        let mut out = BTreeSet::new();
        self.collect_idents(&mut out);
        out
    }

    fn collect_idents(&self, out: &mut BTreeSet<Ident>) {
        match self {
            Formula::Atom(p, args) => {
                out.insert(p.clone());
                for t in args {
                    t.collect_idents(out);
                }
            }
            Formula::Top | Formula::Bot => {}
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.collect_idents(out);
                b.collect_idents(out);
            }
            Formula::Forall(x, body) | Formula::Exists(x, body) => {
                out.insert(x.clone());
                body.collect_idents(out);
            }
        }
    }

    fn visit_terms(&self, f: &mut impl FnMut(&Term)) {
        match self {
            Formula::Atom(_, args) => {
                for t in args {
                    f(t);
                }
            }
            Formula::Top | Formula::Bot => {}
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.visit_terms(f);
                b.visit_terms(f);
            }
            Formula::Forall(_, body) | Formula::Exists(_, body) => body.visit_terms(f),
        }
    }

    /// Capture-avoiding substitution of `t` for free occurrences of `x`.
    ///
    /// Binders are renamed only when they would actually capture a free
    /// variable of `t`, so substitution with fresh terms is structurally
    /// transparent.
    pub fn subst_var(&self, x: &str, t: &Term) -> Formula {
        match self {
            Formula::Atom(p, args) => {
                Formula::Atom(p.clone(), args.iter().map(|a| a.subst_var(x, t)).collect())
            }
            Formula::Top => Formula::Top,
            Formula::Bot => Formula::Bot,
            Formula::And(a, b) => Formula::and(a.subst_var(x, t), b.subst_var(x, t)),
            Formula::Or(a, b) => Formula::or(a.subst_var(x, t), b.subst_var(x, t)),
            Formula::Imp(a, b) => Formula::imp(a.subst_var(x, t), b.subst_var(x, t)),
            Formula::Forall(y, body) => {
                if y == x {
                    self.clone()
                } else {
                    let (y, body) = avoid_capture(y, body, x, t);
                    Formula::Forall(y, Box::new(body.subst_var(x, t)))
                }
            }
            Formula::Exists(y, body) => {
                if y == x {
                    self.clone()
                } else {
                    let (y, body) = avoid_capture(y, body, x, t);
                    Formula::Exists(y, Box::new(body.subst_var(x, t)))
                }
            }
        }
    }

    /// Replace every occurrence of the constant `c` by the term `t`,
    /// renaming binders that would capture a variable of `t`.
    pub fn replace_const(&self, c: &str, t: &Term) -> Formula {
        match self {
            Formula::Atom(p, args) => Formula::Atom(
                p.clone(),
                args.iter().map(|a| a.replace_const(c, t)).collect(),
            ),
            Formula::Top => Formula::Top,
            Formula::Bot => Formula::Bot,
            Formula::And(a, b) => Formula::and(a.replace_const(c, t), b.replace_const(c, t)),
            Formula::Or(a, b) => Formula::or(a.replace_const(c, t), b.replace_const(c, t)),
            Formula::Imp(a, b) => Formula::imp(a.replace_const(c, t), b.replace_const(c, t)),
            Formula::Forall(y, body) => {
                let (y, body) = avoid_capture_const(y, body, t);
                Formula::Forall(y, Box::new(body.replace_const(c, t)))
            }
            Formula::Exists(y, body) => {
                let (y, body) = avoid_capture_const(y, body, t);
                Formula::Exists(y, Box::new(body.replace_const(c, t)))
            }
        }
    }

    /// The double-negation translation: atoms, `T` and `_|_` are fixed,
    /// `&`, `->` and `forall` are mapped homomorphically, while
    /// disjunction becomes `~(~A & ~B)` and the existential becomes
    /// `~forall x. ~A`.
    pub fn dn_translate(&self) -> Formula {
        match self {
            Formula::Atom(..) | Formula::Top | Formula::Bot => self.clone(),
            Formula::And(a, b) => Formula::and(a.dn_translate(), b.dn_translate()),
            Formula::Imp(a, b) => Formula::imp(a.dn_translate(), b.dn_translate()),
            Formula::Forall(x, body) => Formula::Forall(x.clone(), Box::new(body.dn_translate())),
            Formula::Or(a, b) => Formula::neg(Formula::and(
                Formula::neg(a.dn_translate()),
                Formula::neg(b.dn_translate()),
            )),
            Formula::Exists(x, body) => Formula::neg(Formula::Forall(
                x.clone(),
                Box::new(Formula::neg(body.dn_translate())),
            )),
        }
    }

    /// Canonical form under renaming of bound variables. Binders are
    /// renamed to `#b0, #b1, ...` in traversal order; two formulae are
    /// alpha-equivalent iff their canonical forms are equal.
    pub fn alpha_canon(&self) -> Formula {
        let mut counter = 0usize;
        self.canon_rec(&mut counter, &mut Vec::new())
    }

    fn canon_rec(&self, counter: &mut usize, env: &mut Vec<(Ident, Ident)>) -> Formula {
        match self {
            Formula::Atom(p, args) => {
                Formula::Atom(p.clone(), args.iter().map(|t| canon_term(t, env)).collect())
            }
            Formula::Top => Formula::Top,
            Formula::Bot => Formula::Bot,
            Formula::And(a, b) => {
                Formula::and(a.canon_rec(counter, env), b.canon_rec(counter, env))
            }
            Formula::Or(a, b) => Formula::or(a.canon_rec(counter, env), b.canon_rec(counter, env)),
            Formula::Imp(a, b) => {
                Formula::imp(a.canon_rec(counter, env), b.canon_rec(counter, env))
            }
            Formula::Forall(x, body) => {
                let fresh = format!("{}b{}", GENSYM_PREFIX, counter);
                *counter += 1;
                env.push((x.clone(), fresh.clone()));
                let body = body.canon_rec(counter, env);
                env.pop();
                Formula::Forall(fresh, Box::new(body))
            }
            Formula::Exists(x, body) => {
                let fresh = format!("{}b{}", GENSYM_PREFIX, counter);
                *counter += 1;
                env.push((x.clone(), fresh.clone()));
                let body = body.canon_rec(counter, env);
                env.pop();
                Formula::Exists(fresh, Box::new(body))
            }
        }
    }

    /// Structural equality up to renaming of bound variables.
    pub fn alpha_eq(&self, other: &Formula) -> bool {
        self == other || self.alpha_canon() == other.alpha_canon()
    }
}

fn canon_term(t: &Term, env: &[(Ident, Ident)]) -> Term {
    match t {
        Term::Var(x) => match env.iter().rev().find(|(orig, _)| orig == x) {
            Some((_, canon)) => Term::Var(canon.clone()),
            None => t.clone(),
        },
        Term::Const(_) => t.clone(),
        Term::App(f, args) => {
            Term::App(f.clone(), args.iter().map(|a| canon_term(a, env)).collect())
        }
    }
}

/// Rename the binder `y` when substituting `t` for `x` under it would
/// capture a free variable of `t`.
fn avoid_capture(y: &Ident, body: &Formula, x: &str, t: &Term) -> (Ident, Formula) {
    if t.free_vars().contains(y) {
        let mut avoid = body.all_idents();
        avoid.extend(t.free_vars());
        avoid.insert(x.to_string());
        let fresh = fresh_ident(y, &avoid);
        let body = body.subst_var(y, &Term::Var(fresh.clone()));
        (fresh, body)
    } else {
        (y.clone(), body.clone())
    }
}

fn avoid_capture_const(y: &Ident, body: &Formula, t: &Term) -> (Ident, Formula) {
    if t.free_vars().contains(y) {
        let mut avoid = body.all_idents();
        avoid.extend(t.free_vars());
        let fresh = fresh_ident(y, &avoid);
        let body = body.subst_var(y, &Term::Var(fresh.clone()));
        (fresh, body)
    } else {
        (y.clone(), body.clone())
    }
}

/// First identifier of the form `base`, `base0`, `base1`, ... not in `avoid`.
pub fn fresh_ident(base: &str, avoid: &BTreeSet<Ident>) -> Ident {
    if !avoid.contains(base) {
        return base.to_string();
    }
    for n in 0u64.. {
        let cand = format!("{base}{n}");
        if !avoid.contains(&cand) {
            return cand;
        }
    }
    unreachable!()
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_formula(self))
    }
}

/// An ordered sequence of formulae. Order is significant and duplicates
/// are permitted; "subset" between contexts means occurrence-set
/// inclusion, ignoring order and multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Context(Vec<Formula>);

impl Context {
    pub fn new(items: Vec<Formula>) -> Context {
        Context(items)
    }

    pub fn empty() -> Context {
        Context(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&Formula> {
        self.0.get(i)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Formula> {
        self.0.iter()
    }

    pub fn items(&self) -> &[Formula] {
        &self.0
    }

    /// Index of the first occurrence of `f`, up to alpha-equivalence.
    pub fn find_alpha(&self, f: &Formula) -> Option<usize> {
        self.0.iter().position(|g| g.alpha_eq(f))
    }

    /// Index of the last occurrence of `f`, up to alpha-equivalence.
    pub fn rfind_alpha(&self, f: &Formula) -> Option<usize> {
        self.0.iter().rposition(|g| g.alpha_eq(f))
    }

    /// Occurrence-set inclusion: every formula of `self` occurs
    /// (anywhere, any multiplicity) in `other`.
    pub fn subset_occ(&self, other: &Context) -> bool {
        self.0.iter().all(|f| other.find_alpha(f).is_some())
    }

    /// Pointwise alpha-equality as ordered sequences.
    pub fn alpha_eq(&self, other: &Context) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a.alpha_eq(b))
    }

    /// Copy of the context with `f` inserted at position `i`.
    pub fn inserted(&self, i: usize, f: Formula) -> Context {
        let mut v = self.0.clone();
        v.insert(i, f);
        Context(v)
    }

    /// Copy of the context with position `i` removed.
    pub fn removed(&self, i: usize) -> Context {
        let mut v = self.0.clone();
        v.remove(i);
        Context(v)
    }

    pub fn pushed(&self, f: Formula) -> Context {
        let mut v = self.0.clone();
        v.push(f);
        Context(v)
    }

    pub fn free_vars(&self) -> BTreeSet<Ident> {
        let mut out = BTreeSet::new();
        for f in &self.0 {
            out.extend(f.free_vars());
        }
        out
    }

    pub fn consts(&self) -> BTreeSet<Ident> {
        let mut out = BTreeSet::new();
        for f in &self.0 {
            out.extend(f.consts());
        }
        out
    }

    pub fn all_idents(&self) -> BTreeSet<Ident> {
        let mut out = BTreeSet::new();
        for f in &self.0 {
            out.extend(f.all_idents());
        }
        out
    }

    /// Apply a formula transformation to every member.
    pub fn map(&self, f: impl Fn(&Formula) -> Formula) -> Context {
        Context(self.0.iter().map(f).collect())
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for g in &self.0 {
            if !first {
                f.write_str(", ")?;
            }
            first = false;
            f.write_str(&print_formula(g))?;
        }
        Ok(())
    }
}

impl From<Vec<Formula>> for Context {
    fn from(v: Vec<Formula>) -> Context {
        Context(v)
    }
}

impl FromIterator<Formula> for Context {
    fn from_iter<I: IntoIterator<Item = Formula>>(iter: I) -> Context {
        Context(iter.into_iter().collect())
    }
}
