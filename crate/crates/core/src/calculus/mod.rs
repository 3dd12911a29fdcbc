//! The two-sided focused sequent calculus: derivation trees, the rule
//! checker, the normal-proof predicate, and the structural
//! transformations (weakening, constant-to-variable renaming,
//! contraction macros).
//!
//! Sequents come in three shapes: plain `Γ |- Δ`, left focus
//! `Γ | A |- Δ`, and right focus `Γ |- A | Δ`. Contexts are ordered
//! sequences; the active formula of an axiom and the landing position of
//! a focus rule are addressed by an explicit index stored in the rule.
//! There are no structural rules: contraction is the derived macro "cut
//! against an axiom", and weakening is a derivation transformer.
//!
//! A *normal* derivation is one whose every cut has an axiom as one of
//! its premises. This is the cut-freeness notion used throughout: the
//! contraction macros are normal, and a cut between two non-axiom
//! subproofs is not.

mod format;
mod transform;

pub use format::{parse_derivation, print_derivation, DerivationParseError};
pub use transform::{
    contract_left, contract_right, rename_const_to_var, subst_deriv_var, weaken, TransformError,
};

use std::fmt;

use crate::syntax::{Context, Formula, Ident, Term};

/// One of the three sequent shapes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sequent {
    Plain {
        gamma: Context,
        delta: Context,
    },
    LeftFocus {
        gamma: Context,
        focus: Formula,
        delta: Context,
    },
    RightFocus {
        gamma: Context,
        focus: Formula,
        delta: Context,
    },
}

impl Sequent {
    pub fn plain(gamma: Context, delta: Context) -> Sequent {
        Sequent::Plain { gamma, delta }
    }

    pub fn left_focus(gamma: Context, focus: Formula, delta: Context) -> Sequent {
        Sequent::LeftFocus {
            gamma,
            focus,
            delta,
        }
    }

    pub fn right_focus(gamma: Context, focus: Formula, delta: Context) -> Sequent {
        Sequent::RightFocus {
            gamma,
            focus,
            delta,
        }
    }

    pub fn gamma(&self) -> &Context {
        match self {
            Sequent::Plain { gamma, .. }
            | Sequent::LeftFocus { gamma, .. }
            | Sequent::RightFocus { gamma, .. } => gamma,
        }
    }

    pub fn delta(&self) -> &Context {
        match self {
            Sequent::Plain { delta, .. }
            | Sequent::LeftFocus { delta, .. }
            | Sequent::RightFocus { delta, .. } => delta,
        }
    }

    pub fn focus(&self) -> Option<&Formula> {
        match self {
            Sequent::Plain { .. } => None,
            Sequent::LeftFocus { focus, .. } | Sequent::RightFocus { focus, .. } => Some(focus),
        }
    }

    pub fn alpha_eq(&self, other: &Sequent) -> bool {
        match (self, other) {
            (
                Sequent::Plain { gamma, delta },
                Sequent::Plain {
                    gamma: g2,
                    delta: d2,
                },
            ) => gamma.alpha_eq(g2) && delta.alpha_eq(d2),
            (
                Sequent::LeftFocus {
                    gamma,
                    focus,
                    delta,
                },
                Sequent::LeftFocus {
                    gamma: g2,
                    focus: f2,
                    delta: d2,
                },
            )
            | (
                Sequent::RightFocus {
                    gamma,
                    focus,
                    delta,
                },
                Sequent::RightFocus {
                    gamma: g2,
                    focus: f2,
                    delta: d2,
                },
            ) => gamma.alpha_eq(g2) && focus.alpha_eq(f2) && delta.alpha_eq(d2),
            _ => false,
        }
    }

    /// Free variables of every formula in the sequent, focus included.
    pub fn free_vars(&self) -> std::collections::BTreeSet<Ident> {
        let mut out = self.gamma().free_vars();
        out.extend(self.delta().free_vars());
        if let Some(f) = self.focus() {
            out.extend(f.free_vars());
        }
        out
    }

    pub fn consts(&self) -> std::collections::BTreeSet<Ident> {
        let mut out = self.gamma().consts();
        out.extend(self.delta().consts());
        if let Some(f) = self.focus() {
            out.extend(f.consts());
        }
        out
    }

    pub fn all_idents(&self) -> std::collections::BTreeSet<Ident> {
        let mut out = self.gamma().all_idents();
        out.extend(self.delta().all_idents());
        if let Some(f) = self.focus() {
            out.extend(f.all_idents());
        }
        out
    }

    /// Transform every formula of the sequent.
    pub fn map(&self, f: impl Fn(&Formula) -> Formula) -> Sequent {
        match self {
            Sequent::Plain { gamma, delta } => Sequent::Plain {
                gamma: gamma.map(&f),
                delta: delta.map(&f),
            },
            Sequent::LeftFocus {
                gamma,
                focus,
                delta,
            } => Sequent::LeftFocus {
                gamma: gamma.map(&f),
                focus: f(focus),
                delta: delta.map(&f),
            },
            Sequent::RightFocus {
                gamma,
                focus,
                delta,
            } => Sequent::RightFocus {
                gamma: gamma.map(&f),
                focus: f(focus),
                delta: delta.map(&f),
            },
        }
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sequent::Plain { gamma, delta } => write!(f, "{} |- {}", gamma, delta),
            Sequent::LeftFocus {
                gamma,
                focus,
                delta,
            } => write!(f, "{} | {} |- {}", gamma, focus, delta),
            Sequent::RightFocus {
                gamma,
                focus,
                delta,
            } => write!(f, "{} |- {} | {}", gamma, focus, delta),
        }
    }
}

/// Rule tag plus instantiation data. `index` fields locate the active
/// formula inside an ordered context: for the axioms it selects the
/// context occurrence of the focus, for the focus-management rules it is
/// the position the focus occupies in the premise's context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rule {
    AxL { index: usize },
    AxR { index: usize },
    Mu { index: usize },
    MuTilde { index: usize },
    ImpL,
    ImpR { index: usize },
    OrL,
    OrR1,
    OrR2,
    AndL1,
    AndL2,
    AndR,
    ExL { eigen: Ident },
    ExR { witness: Term },
    AllL { witness: Term },
    AllR { eigen: Ident },
    BotL,
    TopR,
    Cut { formula: Formula },
}

impl Rule {
    pub fn tag(&self) -> &'static str {
        match self {
            Rule::AxL { .. } => "AxL",
            Rule::AxR { .. } => "AxR",
            Rule::Mu { .. } => "Mu",
            Rule::MuTilde { .. } => "MuTilde",
            Rule::ImpL => "ImpL",
            Rule::ImpR { .. } => "ImpR",
            Rule::OrL => "OrL",
            Rule::OrR1 => "OrR1",
            Rule::OrR2 => "OrR2",
            Rule::AndL1 => "AndL1",
            Rule::AndL2 => "AndL2",
            Rule::AndR => "AndR",
            Rule::ExL { .. } => "ExL",
            Rule::ExR { .. } => "ExR",
            Rule::AllL { .. } => "AllL",
            Rule::AllR { .. } => "AllR",
            Rule::BotL => "BotL",
            Rule::TopR => "TopR",
            Rule::Cut { .. } => "Cut",
        }
    }

    /// Number of premises the rule takes.
    pub fn arity(&self) -> usize {
        match self {
            Rule::AxL { .. } | Rule::AxR { .. } | Rule::BotL | Rule::TopR => 0,
            Rule::Mu { .. }
            | Rule::MuTilde { .. }
            | Rule::ImpR { .. }
            | Rule::OrR1
            | Rule::OrR2
            | Rule::AndL1
            | Rule::AndL2
            | Rule::ExL { .. }
            | Rule::ExR { .. }
            | Rule::AllL { .. }
            | Rule::AllR { .. } => 1,
            Rule::ImpL | Rule::OrL | Rule::AndR | Rule::Cut { .. } => 2,
        }
    }

    pub fn is_axiom(&self) -> bool {
        matches!(self, Rule::AxL { .. } | Rule::AxR { .. })
    }
}

/// A rule-tagged derivation tree. Nothing is implicit: every node
/// carries its full conclusion sequent, and [`Derivation::check`]
/// verifies that each node instantiates its rule schema exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub rule: Rule,
    pub conclusion: Sequent,
    pub premises: Vec<Derivation>,
}

/// The class of schema constraint a bad node violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Violation {
    /// Wrong sequent shape, wrong premise count, or a premise of the
    /// wrong focus kind.
    ShapeMismatch,
    /// The active/principal formula does not match the rule schema.
    WrongActiveFormula,
    /// The eigenvariable of an `ExL`/`AllR` node occurs free in its
    /// conclusion.
    EigenvarNotFresh,
    /// Side contexts fail the ordered-sequence equality the schema
    /// demands.
    ContextMismatch,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Violation::ShapeMismatch => "shape mismatch",
            Violation::WrongActiveFormula => "wrong active formula",
            Violation::EigenvarNotFresh => "eigenvariable occurs in conclusion",
            Violation::ContextMismatch => "context mismatch",
        };
        f.write_str(s)
    }
}

/// Checker failure: the path from the root (premise indices), the rule
/// tag of the offending node, the violation class, and a description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckError {
    pub path: Vec<usize>,
    pub rule: &'static str,
    pub violation: Violation,
    pub detail: String,
}

impl fmt::Display for CheckError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at [")?;
        for (i, p) in self.path.iter().enumerate() {
            if i > 0 {
                write!(f, ".")?;
            }
            write!(f, "{}", p)?;
        }
        write!(
            f,
            "] ({}): {}: {}",
            self.rule, self.violation, self.detail
        )
    }
}

impl std::error::Error for CheckError {}

macro_rules! bail {
    ($node:expr, $violation:expr, $($arg:tt)*) => {
        return Err(CheckError {
            path: Vec::new(),
            rule: $node.rule.tag(),
            violation: $violation,
            detail: format!($($arg)*),
        })
    };
}

impl Derivation {
    pub fn new(rule: Rule, conclusion: Sequent, premises: Vec<Derivation>) -> Derivation {
        Derivation {
            rule,
            conclusion,
            premises,
        }
    }

    /// Verify every node against its rule schema and return the root
    /// conclusion. Checking is local and deterministic; no search.
    pub fn check(&self) -> Result<&Sequent, CheckError> {
        self.check_node().map_err(|mut e| {
            e.path.reverse();
            e
        })?;
        Ok(&self.conclusion)
    }

    fn check_node(&self) -> Result<(), CheckError> {
        self.check_local()?;
        for (i, p) in self.premises.iter().enumerate() {
            p.check_node().map_err(|mut e| {
                e.path.push(i);
                e
            })?;
        }
        Ok(())
    }

    /// Total cut count.
    pub fn cut_count(&self) -> usize {
        let here = usize::from(matches!(self.rule, Rule::Cut { .. }));
        here + self.premises.iter().map(Derivation::cut_count).sum::<usize>()
    }

    /// Cuts with at least one axiom premise (the contraction pattern).
    pub fn axiom_guarded_cut_count(&self) -> usize {
        let here = usize::from(
            matches!(self.rule, Rule::Cut { .. })
                && self.premises.iter().any(|p| p.rule.is_axiom()),
        );
        here + self
            .premises
            .iter()
            .map(Derivation::axiom_guarded_cut_count)
            .sum::<usize>()
    }

    /// Normal-proof predicate: every cut is guarded by an axiom premise.
    pub fn is_normal(&self) -> bool {
        let ok_here = match self.rule {
            Rule::Cut { .. } => self.premises.iter().any(|p| p.rule.is_axiom()),
            _ => true,
        };
        ok_here && self.premises.iter().all(Derivation::is_normal)
    }

    pub fn node_count(&self) -> usize {
        1 + self.premises.iter().map(Derivation::node_count).sum::<usize>()
    }

    /// Every identifier in every sequent and rule datum of the tree.
    pub fn all_idents(&self) -> std::collections::BTreeSet<Ident> {
        let mut out = std::collections::BTreeSet::new();
        self.collect_idents(&mut out);
        out
    }

    fn collect_idents(&self, out: &mut std::collections::BTreeSet<Ident>) {
        out.extend(self.conclusion.all_idents());
        match &self.rule {
            Rule::ExL { eigen } | Rule::AllR { eigen } => {
                out.insert(eigen.clone());
            }
            Rule::ExR { witness } | Rule::AllL { witness } => {
                out.extend(witness.free_vars());
                out.extend(witness.consts());
            }
            Rule::Cut { formula } => out.extend(formula.all_idents()),
            _ => {}
        }
        for p in &self.premises {
            p.collect_idents(out);
        }
    }

    /// Constant symbols occurring anywhere in the tree.
    pub fn all_consts(&self) -> std::collections::BTreeSet<Ident> {
        let mut out = std::collections::BTreeSet::new();
        self.collect_consts(&mut out);
        out
    }

    fn collect_consts(&self, out: &mut std::collections::BTreeSet<Ident>) {
        out.extend(self.conclusion.consts());
        match &self.rule {
            Rule::ExR { witness } | Rule::AllL { witness } => out.extend(witness.consts()),
            Rule::Cut { formula } => out.extend(formula.consts()),
            _ => {}
        }
        for p in &self.premises {
            p.collect_consts(out);
        }
    }

    fn premise(&self, i: usize) -> Result<&Sequent, CheckError> {
        match self.premises.get(i) {
            Some(p) => Ok(&p.conclusion),
            None => Err(CheckError {
                path: Vec::new(),
                rule: self.rule.tag(),
                violation: Violation::ShapeMismatch,
                detail: format!(
                    "rule {} expects {} premise(s), found {}",
                    self.rule.tag(),
                    self.rule.arity(),
                    self.premises.len()
                ),
            }),
        }
    }

    fn check_local(&self) -> Result<(), CheckError> {
        if self.premises.len() != self.rule.arity() {
            bail!(
                self,
                Violation::ShapeMismatch,
                "rule {} expects {} premise(s), found {}",
                self.rule.tag(),
                self.rule.arity(),
                self.premises.len()
            );
        }
        match &self.rule {
            Rule::AxL { index } => {
                let (gamma, focus, delta) = self.expect_left_focus(&self.conclusion)?;
                let _ = gamma;
                match delta.get(*index) {
                    Some(f) if f.alpha_eq(focus) => Ok(()),
                    _ => bail!(
                        self,
                        Violation::WrongActiveFormula,
                        "focus {} does not occur at position {} of the right context",
                        focus,
                        index
                    ),
                }
            }
            Rule::AxR { index } => {
                let (gamma, focus, _delta) = self.expect_right_focus(&self.conclusion)?;
                match gamma.get(*index) {
                    Some(f) if f.alpha_eq(focus) => Ok(()),
                    _ => bail!(
                        self,
                        Violation::WrongActiveFormula,
                        "focus {} does not occur at position {} of the left context",
                        focus,
                        index
                    ),
                }
            }
            Rule::Mu { index } => {
                let (gamma, focus, delta) = self.expect_right_focus(&self.conclusion)?;
                let (pg, pd) = self.expect_plain(self.premise(0)?)?;
                self.contexts_equal(gamma, pg, "left")?;
                self.check_inserted(delta, pd, *index, focus, "right")
            }
            Rule::MuTilde { index } => {
                let (gamma, focus, delta) = self.expect_left_focus(&self.conclusion)?;
                let (pg, pd) = self.expect_plain(self.premise(0)?)?;
                self.contexts_equal(delta, pd, "right")?;
                self.check_inserted(gamma, pg, *index, focus, "left")
            }
            Rule::ImpL => {
                let (gamma, focus, delta) = self.expect_left_focus(&self.conclusion)?;
                let (a, b) = match focus {
                    Formula::Imp(a, b) => (a, b),
                    _ => bail!(
                        self,
                        Violation::WrongActiveFormula,
                        "focus {} is not an implication",
                        focus
                    ),
                };
                let (g1, f1, d1) = self.expect_right_focus(self.premise(0)?)?;
                let (g2, f2, d2) = self.expect_left_focus(self.premise(1)?)?;
                self.active_matches(f1, a)?;
                self.active_matches(f2, b)?;
                self.contexts_equal(gamma, g1, "left")?;
                self.contexts_equal(delta, d1, "right")?;
                self.contexts_equal(gamma, g2, "left")?;
                self.contexts_equal(delta, d2, "right")
            }
            Rule::ImpR { index } => {
                let (gamma, focus, delta) = self.expect_right_focus(&self.conclusion)?;
                let (a, b) = match focus {
                    Formula::Imp(a, b) => (a, b),
                    _ => bail!(
                        self,
                        Violation::WrongActiveFormula,
                        "focus {} is not an implication",
                        focus
                    ),
                };
                let (pg, pf, pd) = self.expect_right_focus(self.premise(0)?)?;
                self.active_matches(pf, b)?;
                self.contexts_equal(delta, pd, "right")?;
                self.check_inserted(gamma, pg, *index, a, "left")
            }
            Rule::OrL => {
                let (gamma, focus, delta) = self.expect_left_focus(&self.conclusion)?;
                let (a, b) = match focus {
                    Formula::Or(a, b) => (a, b),
                    _ => bail!(
                        self,
                        Violation::WrongActiveFormula,
                        "focus {} is not a disjunction",
                        focus
                    ),
                };
                let (g1, f1, d1) = self.expect_left_focus(self.premise(0)?)?;
                let (g2, f2, d2) = self.expect_left_focus(self.premise(1)?)?;
                self.active_matches(f1, a)?;
                self.active_matches(f2, b)?;
                self.contexts_equal(gamma, g1, "left")?;
                self.contexts_equal(delta, d1, "right")?;
                self.contexts_equal(gamma, g2, "left")?;
                self.contexts_equal(delta, d2, "right")
            }
            Rule::OrR1 | Rule::OrR2 => {
                let (gamma, focus, delta) = self.expect_right_focus(&self.conclusion)?;
                let (a, b) = match focus {
                    Formula::Or(a, b) => (a, b),
                    _ => bail!(
                        self,
                        Violation::WrongActiveFormula,
                        "focus {} is not a disjunction",
                        focus
                    ),
                };
                let side = if matches!(self.rule, Rule::OrR1) { a } else { b };
                let (pg, pf, pd) = self.expect_right_focus(self.premise(0)?)?;
                self.active_matches(pf, side)?;
                self.contexts_equal(gamma, pg, "left")?;
                self.contexts_equal(delta, pd, "right")
            }
            Rule::AndL1 | Rule::AndL2 => {
                let (gamma, focus, delta) = self.expect_left_focus(&self.conclusion)?;
                let (a, b) = match focus {
                    Formula::And(a, b) => (a, b),
                    _ => bail!(
                        self,
                        Violation::WrongActiveFormula,
                        "focus {} is not a conjunction",
                        focus
                    ),
                };
                let side = if matches!(self.rule, Rule::AndL1) { a } else { b };
                let (pg, pf, pd) = self.expect_left_focus(self.premise(0)?)?;
                self.active_matches(pf, side)?;
                self.contexts_equal(gamma, pg, "left")?;
                self.contexts_equal(delta, pd, "right")
            }
            Rule::AndR => {
                let (gamma, focus, delta) = self.expect_right_focus(&self.conclusion)?;
                let (a, b) = match focus {
                    Formula::And(a, b) => (a, b),
                    _ => bail!(
                        self,
                        Violation::WrongActiveFormula,
                        "focus {} is not a conjunction",
                        focus
                    ),
                };
                let (g1, f1, d1) = self.expect_right_focus(self.premise(0)?)?;
                let (g2, f2, d2) = self.expect_right_focus(self.premise(1)?)?;
                self.active_matches(f1, a)?;
                self.active_matches(f2, b)?;
                self.contexts_equal(gamma, g1, "left")?;
                self.contexts_equal(delta, d1, "right")?;
                self.contexts_equal(gamma, g2, "left")?;
                self.contexts_equal(delta, d2, "right")
            }
            Rule::ExR { witness } => {
                let (gamma, focus, delta) = self.expect_right_focus(&self.conclusion)?;
                let (x, body) = match focus {
                    Formula::Exists(x, body) => (x, body),
                    _ => bail!(
                        self,
                        Violation::WrongActiveFormula,
                        "focus {} is not existential",
                        focus
                    ),
                };
                let (pg, pf, pd) = self.expect_right_focus(self.premise(0)?)?;
                self.active_matches(pf, &body.subst_var(x, witness))?;
                self.contexts_equal(gamma, pg, "left")?;
                self.contexts_equal(delta, pd, "right")
            }
            Rule::AllL { witness } => {
                let (gamma, focus, delta) = self.expect_left_focus(&self.conclusion)?;
                let (x, body) = match focus {
                    Formula::Forall(x, body) => (x, body),
                    _ => bail!(
                        self,
                        Violation::WrongActiveFormula,
                        "focus {} is not universal",
                        focus
                    ),
                };
                let (pg, pf, pd) = self.expect_left_focus(self.premise(0)?)?;
                self.active_matches(pf, &body.subst_var(x, witness))?;
                self.contexts_equal(gamma, pg, "left")?;
                self.contexts_equal(delta, pd, "right")
            }
            Rule::ExL { eigen } => {
                let (gamma, focus, delta) = self.expect_left_focus(&self.conclusion)?;
                let (x, body) = match focus {
                    Formula::Exists(x, body) => (x, body),
                    _ => bail!(
                        self,
                        Violation::WrongActiveFormula,
                        "focus {} is not existential",
                        focus
                    ),
                };
                self.check_eigen_fresh(eigen, gamma, focus, delta)?;
                let (pg, pf, pd) = self.expect_left_focus(self.premise(0)?)?;
                self.active_matches(pf, &body.subst_var(x, &Term::Var(eigen.clone())))?;
                self.contexts_equal(gamma, pg, "left")?;
                self.contexts_equal(delta, pd, "right")
            }
            Rule::AllR { eigen } => {
                let (gamma, focus, delta) = self.expect_right_focus(&self.conclusion)?;
                let (x, body) = match focus {
                    Formula::Forall(x, body) => (x, body),
                    _ => bail!(
                        self,
                        Violation::WrongActiveFormula,
                        "focus {} is not universal",
                        focus
                    ),
                };
                self.check_eigen_fresh(eigen, gamma, focus, delta)?;
                let (pg, pf, pd) = self.expect_right_focus(self.premise(0)?)?;
                self.active_matches(pf, &body.subst_var(x, &Term::Var(eigen.clone())))?;
                self.contexts_equal(gamma, pg, "left")?;
                self.contexts_equal(delta, pd, "right")
            }
            Rule::BotL => {
                let (_gamma, focus, _delta) = self.expect_left_focus(&self.conclusion)?;
                if *focus != Formula::Bot {
                    bail!(
                        self,
                        Violation::WrongActiveFormula,
                        "focus {} is not _|_",
                        focus
                    );
                }
                Ok(())
            }
            Rule::TopR => {
                let (_gamma, focus, _delta) = self.expect_right_focus(&self.conclusion)?;
                if *focus != Formula::Top {
                    bail!(
                        self,
                        Violation::WrongActiveFormula,
                        "focus {} is not T",
                        focus
                    );
                }
                Ok(())
            }
            Rule::Cut { formula } => {
                let (gamma, delta) = self.expect_plain(&self.conclusion)?;
                let (g1, f1, d1) = self.expect_right_focus(self.premise(0)?)?;
                let (g2, f2, d2) = self.expect_left_focus(self.premise(1)?)?;
                self.active_matches(f1, formula)?;
                self.active_matches(f2, formula)?;
                self.contexts_equal(gamma, g1, "left")?;
                self.contexts_equal(delta, d1, "right")?;
                self.contexts_equal(gamma, g2, "left")?;
                self.contexts_equal(delta, d2, "right")
            }
        }
    }

    fn expect_plain<'s>(&self, s: &'s Sequent) -> Result<(&'s Context, &'s Context), CheckError> {
        match s {
            Sequent::Plain { gamma, delta } => Ok((gamma, delta)),
            _ => Err(CheckError {
                path: Vec::new(),
                rule: self.rule.tag(),
                violation: Violation::ShapeMismatch,
                detail: format!("expected a plain sequent, found '{}'", s),
            }),
        }
    }

    fn expect_left_focus<'s>(
        &self,
        s: &'s Sequent,
    ) -> Result<(&'s Context, &'s Formula, &'s Context), CheckError> {
        match s {
            Sequent::LeftFocus {
                gamma,
                focus,
                delta,
            } => Ok((gamma, focus, delta)),
            _ => Err(CheckError {
                path: Vec::new(),
                rule: self.rule.tag(),
                violation: Violation::ShapeMismatch,
                detail: format!("expected a left-focus sequent, found '{}'", s),
            }),
        }
    }

    fn expect_right_focus<'s>(
        &self,
        s: &'s Sequent,
    ) -> Result<(&'s Context, &'s Formula, &'s Context), CheckError> {
        match s {
            Sequent::RightFocus {
                gamma,
                focus,
                delta,
            } => Ok((gamma, focus, delta)),
            _ => Err(CheckError {
                path: Vec::new(),
                rule: self.rule.tag(),
                violation: Violation::ShapeMismatch,
                detail: format!("expected a right-focus sequent, found '{}'", s),
            }),
        }
    }

    fn active_matches(&self, found: &Formula, expected: &Formula) -> Result<(), CheckError> {
        if found.alpha_eq(expected) {
            Ok(())
        } else {
            Err(CheckError {
                path: Vec::new(),
                rule: self.rule.tag(),
                violation: Violation::WrongActiveFormula,
                detail: format!("expected active formula {}, found {}", expected, found),
            })
        }
    }

    fn contexts_equal(&self, concl: &Context, prem: &Context, side: &str) -> Result<(), CheckError> {
        if concl.alpha_eq(prem) {
            Ok(())
        } else {
            Err(CheckError {
                path: Vec::new(),
                rule: self.rule.tag(),
                violation: Violation::ContextMismatch,
                detail: format!(
                    "{} context '{}' of the premise differs from '{}' in the conclusion",
                    side, prem, concl
                ),
            })
        }
    }

    /// Premise context must be the conclusion context with `focus`
    /// inserted at `index`.
    fn check_inserted(
        &self,
        concl: &Context,
        prem: &Context,
        index: usize,
        focus: &Formula,
        side: &str,
    ) -> Result<(), CheckError> {
        if index >= prem.len() {
            bail!(
                self,
                Violation::ContextMismatch,
                "{} context of the premise has no position {}",
                side,
                index
            );
        }
        if !prem.get(index).unwrap().alpha_eq(focus) {
            bail!(
                self,
                Violation::WrongActiveFormula,
                "expected {} at position {} of the premise's {} context, found {}",
                focus,
                index,
                side,
                prem.get(index).unwrap()
            );
        }
        let rest = prem.removed(index);
        if !rest.alpha_eq(concl) {
            bail!(
                self,
                Violation::ContextMismatch,
                "premise {} context '{}' minus the focus differs from '{}'",
                side,
                rest,
                concl
            );
        }
        Ok(())
    }

    fn check_eigen_fresh(
        &self,
        eigen: &Ident,
        gamma: &Context,
        focus: &Formula,
        delta: &Context,
    ) -> Result<(), CheckError> {
        let mut fv = gamma.free_vars();
        fv.extend(delta.free_vars());
        fv.extend(focus.free_vars());
        if fv.contains(eigen) {
            Err(CheckError {
                path: Vec::new(),
                rule: self.rule.tag(),
                violation: Violation::EigenvarNotFresh,
                detail: format!("eigenvariable {} occurs free in the conclusion", eigen),
            })
        } else {
            Ok(())
        }
    }
}

// ---- smart constructors ------------------------------------------------
//
// Each builder computes the conclusion from the premises and rule data.
// They do not validate; `check` remains the arbiter.

pub fn mk_ax_l(gamma: Context, delta: Context, index: usize) -> Derivation {
    let focus = delta.get(index).expect("AxL index out of range").clone();
    Derivation::new(
        Rule::AxL { index },
        Sequent::left_focus(gamma, focus, delta),
        vec![],
    )
}

pub fn mk_ax_r(gamma: Context, index: usize, delta: Context) -> Derivation {
    let focus = gamma.get(index).expect("AxR index out of range").clone();
    Derivation::new(
        Rule::AxR { index },
        Sequent::right_focus(gamma, focus, delta),
        vec![],
    )
}

pub fn mk_bot_l(gamma: Context, delta: Context) -> Derivation {
    Derivation::new(
        Rule::BotL,
        Sequent::left_focus(gamma, Formula::Bot, delta),
        vec![],
    )
}

pub fn mk_top_r(gamma: Context, delta: Context) -> Derivation {
    Derivation::new(
        Rule::TopR,
        Sequent::right_focus(gamma, Formula::Top, delta),
        vec![],
    )
}

/// Focus the formula at position `index` of the premise's right context.
pub fn mk_mu(index: usize, premise: Derivation) -> Derivation {
    let (gamma, delta) = match &premise.conclusion {
        Sequent::Plain { gamma, delta } => (gamma.clone(), delta.clone()),
        s => panic!("Mu premise must be plain, found '{s}'"),
    };
    let focus = delta.get(index).expect("Mu index out of range").clone();
    Derivation::new(
        Rule::Mu { index },
        Sequent::right_focus(gamma, focus, delta.removed(index)),
        vec![premise],
    )
}

/// Focus the formula at position `index` of the premise's left context.
pub fn mk_mu_tilde(index: usize, premise: Derivation) -> Derivation {
    let (gamma, delta) = match &premise.conclusion {
        Sequent::Plain { gamma, delta } => (gamma.clone(), delta.clone()),
        s => panic!("MuTilde premise must be plain, found '{s}'"),
    };
    let focus = gamma.get(index).expect("MuTilde index out of range").clone();
    Derivation::new(
        Rule::MuTilde { index },
        Sequent::left_focus(gamma.removed(index), focus, delta),
        vec![premise],
    )
}

pub fn mk_imp_l(left: Derivation, right: Derivation) -> Derivation {
    let (gamma, a, delta) = match &left.conclusion {
        Sequent::RightFocus {
            gamma,
            focus,
            delta,
        } => (gamma.clone(), focus.clone(), delta.clone()),
        s => panic!("ImpL first premise must be right-focus, found '{s}'"),
    };
    let b = match &right.conclusion {
        Sequent::LeftFocus { focus, .. } => focus.clone(),
        s => panic!("ImpL second premise must be left-focus, found '{s}'"),
    };
    Derivation::new(
        Rule::ImpL,
        Sequent::left_focus(gamma, Formula::imp(a, b), delta),
        vec![left, right],
    )
}

/// Discharge the hypothesis at position `index` of the premise's left
/// context into an implication.
pub fn mk_imp_r(index: usize, premise: Derivation) -> Derivation {
    let (gamma, b, delta) = match &premise.conclusion {
        Sequent::RightFocus {
            gamma,
            focus,
            delta,
        } => (gamma.clone(), focus.clone(), delta.clone()),
        s => panic!("ImpR premise must be right-focus, found '{s}'"),
    };
    let a = gamma.get(index).expect("ImpR index out of range").clone();
    Derivation::new(
        Rule::ImpR { index },
        Sequent::right_focus(gamma.removed(index), Formula::imp(a, b), delta),
        vec![premise],
    )
}

pub fn mk_or_l(left: Derivation, right: Derivation) -> Derivation {
    let (gamma, a, delta) = match &left.conclusion {
        Sequent::LeftFocus {
            gamma,
            focus,
            delta,
        } => (gamma.clone(), focus.clone(), delta.clone()),
        s => panic!("OrL first premise must be left-focus, found '{s}'"),
    };
    let b = match &right.conclusion {
        Sequent::LeftFocus { focus, .. } => focus.clone(),
        s => panic!("OrL second premise must be left-focus, found '{s}'"),
    };
    Derivation::new(
        Rule::OrL,
        Sequent::left_focus(gamma, Formula::or(a, b), delta),
        vec![left, right],
    )
}

pub fn mk_or_r1(b: Formula, premise: Derivation) -> Derivation {
    let (gamma, a, delta) = match &premise.conclusion {
        Sequent::RightFocus {
            gamma,
            focus,
            delta,
        } => (gamma.clone(), focus.clone(), delta.clone()),
        s => panic!("OrR1 premise must be right-focus, found '{s}'"),
    };
    Derivation::new(
        Rule::OrR1,
        Sequent::right_focus(gamma, Formula::or(a, b), delta),
        vec![premise],
    )
}

pub fn mk_or_r2(a: Formula, premise: Derivation) -> Derivation {
    let (gamma, b, delta) = match &premise.conclusion {
        Sequent::RightFocus {
            gamma,
            focus,
            delta,
        } => (gamma.clone(), focus.clone(), delta.clone()),
        s => panic!("OrR2 premise must be right-focus, found '{s}'"),
    };
    Derivation::new(
        Rule::OrR2,
        Sequent::right_focus(gamma, Formula::or(a, b), delta),
        vec![premise],
    )
}

pub fn mk_and_l1(b: Formula, premise: Derivation) -> Derivation {
    let (gamma, a, delta) = match &premise.conclusion {
        Sequent::LeftFocus {
            gamma,
            focus,
            delta,
        } => (gamma.clone(), focus.clone(), delta.clone()),
        s => panic!("AndL1 premise must be left-focus, found '{s}'"),
    };
    Derivation::new(
        Rule::AndL1,
        Sequent::left_focus(gamma, Formula::and(a, b), delta),
        vec![premise],
    )
}

pub fn mk_and_l2(a: Formula, premise: Derivation) -> Derivation {
    let (gamma, b, delta) = match &premise.conclusion {
        Sequent::LeftFocus {
            gamma,
            focus,
            delta,
        } => (gamma.clone(), focus.clone(), delta.clone()),
        s => panic!("AndL2 premise must be left-focus, found '{s}'"),
    };
    Derivation::new(
        Rule::AndL2,
        Sequent::left_focus(gamma, Formula::and(a, b), delta),
        vec![premise],
    )
}

pub fn mk_and_r(left: Derivation, right: Derivation) -> Derivation {
    let (gamma, a, delta) = match &left.conclusion {
        Sequent::RightFocus {
            gamma,
            focus,
            delta,
        } => (gamma.clone(), focus.clone(), delta.clone()),
        s => panic!("AndR first premise must be right-focus, found '{s}'"),
    };
    let b = match &right.conclusion {
        Sequent::RightFocus { focus, .. } => focus.clone(),
        s => panic!("AndR second premise must be right-focus, found '{s}'"),
    };
    Derivation::new(
        Rule::AndR,
        Sequent::right_focus(gamma, Formula::and(a, b), delta),
        vec![left, right],
    )
}

/// `existential` is the conclusion focus `exists x. A`; the premise
/// proves `A(witness)` in right focus.
pub fn mk_ex_r(existential: Formula, witness: Term, premise: Derivation) -> Derivation {
    let (gamma, delta) = match &premise.conclusion {
        Sequent::RightFocus { gamma, delta, .. } => (gamma.clone(), delta.clone()),
        s => panic!("ExR premise must be right-focus, found '{s}'"),
    };
    Derivation::new(
        Rule::ExR { witness },
        Sequent::right_focus(gamma, existential, delta),
        vec![premise],
    )
}

pub fn mk_all_l(universal: Formula, witness: Term, premise: Derivation) -> Derivation {
    let (gamma, delta) = match &premise.conclusion {
        Sequent::LeftFocus { gamma, delta, .. } => (gamma.clone(), delta.clone()),
        s => panic!("AllL premise must be left-focus, found '{s}'"),
    };
    Derivation::new(
        Rule::AllL { witness },
        Sequent::left_focus(gamma, universal, delta),
        vec![premise],
    )
}

pub fn mk_ex_l(existential: Formula, eigen: Ident, premise: Derivation) -> Derivation {
    let (gamma, delta) = match &premise.conclusion {
        Sequent::LeftFocus { gamma, delta, .. } => (gamma.clone(), delta.clone()),
        s => panic!("ExL premise must be left-focus, found '{s}'"),
    };
    Derivation::new(
        Rule::ExL { eigen },
        Sequent::left_focus(gamma, existential, delta),
        vec![premise],
    )
}

pub fn mk_all_r(universal: Formula, eigen: Ident, premise: Derivation) -> Derivation {
    let (gamma, delta) = match &premise.conclusion {
        Sequent::RightFocus { gamma, delta, .. } => (gamma.clone(), delta.clone()),
        s => panic!("AllR premise must be right-focus, found '{s}'"),
    };
    Derivation::new(
        Rule::AllR { eigen },
        Sequent::right_focus(gamma, universal, delta),
        vec![premise],
    )
}

pub fn mk_cut(formula: Formula, left: Derivation, right: Derivation) -> Derivation {
    let (gamma, delta) = match &left.conclusion {
        Sequent::RightFocus { gamma, delta, .. } => (gamma.clone(), delta.clone()),
        s => panic!("Cut first premise must be right-focus, found '{s}'"),
    };
    Derivation::new(
        Rule::Cut { formula },
        Sequent::plain(gamma, delta),
        vec![left, right],
    )
}
