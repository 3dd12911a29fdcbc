//! Cut-preserving structural transformations on derivations.
//!
//! Weakening and constant renaming rebuild a derivation node by node
//! without introducing cuts, so both the cut count and normality are
//! invariant. Contraction is the derived macro: a cut against an axiom.

use std::collections::BTreeSet;
use std::fmt;

use super::*;
use crate::syntax::{fresh_ident, Context, Formula, Ident, Term};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TransformError {
    /// Weakening target is not an occurrence-superset of the conclusion.
    NotASuperset { side: &'static str },
    /// The focus formula of a contraction does not occur in the required
    /// context.
    FocusNotInContext { side: &'static str },
    /// The derivation does not have the sequent shape the operation
    /// requires.
    WrongShape { expected: &'static str, found: String },
    /// The replacement variable already occurs in the conclusion.
    VariableNotFresh { var: Ident },
}

impl fmt::Display for TransformError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransformError::NotASuperset { side } => {
                write!(f, "target {side} context is not a superset of the conclusion's")
            }
            TransformError::FocusNotInContext { side } => {
                write!(f, "focus formula does not occur in the {side} context")
            }
            TransformError::WrongShape { expected, found } => {
                write!(f, "expected a {expected} sequent, found '{found}'")
            }
            TransformError::VariableNotFresh { var } => {
                write!(f, "variable {var} already occurs in the conclusion")
            }
        }
    }
}

impl std::error::Error for TransformError {}

/// Capture-avoiding substitution of the term `t` for the free variable
/// `x` through a whole derivation: every sequent formula and every
/// witness term is rewritten; eigenvariable binders shadow as in
/// formula-level substitution and are renamed when they would capture a
/// free variable of `t`.
pub fn subst_deriv_var(d: &Derivation, x: &str, t: &Term) -> Derivation {
    match &d.rule {
        Rule::ExL { eigen } | Rule::AllR { eigen } => {
            if eigen == x {
                // The eigenvariable shadows x: on a checked derivation x
                // is not free in the conclusion, and every free x above
                // this node is an eigenvariable occurrence.
                return d.clone();
            }
            let (eigen, premise) = if t.free_vars().contains(eigen) {
                let mut avoid = d.all_idents();
                avoid.extend(t.free_vars());
                avoid.insert(x.to_string());
                let fresh = fresh_ident(eigen, &avoid);
                let renamed = subst_deriv_var(&d.premises[0], eigen, &Term::Var(fresh.clone()));
                (fresh, renamed)
            } else {
                (eigen.clone(), d.premises[0].clone())
            };
            let rule = match &d.rule {
                Rule::ExL { .. } => Rule::ExL { eigen },
                _ => Rule::AllR { eigen },
            };
            Derivation::new(
                rule,
                d.conclusion.map(|f| f.subst_var(x, t)),
                vec![subst_deriv_var(&premise, x, t)],
            )
        }
        rule => {
            let rule = match rule {
                Rule::ExR { witness } => Rule::ExR {
                    witness: witness.subst_var(x, t),
                },
                Rule::AllL { witness } => Rule::AllL {
                    witness: witness.subst_var(x, t),
                },
                Rule::Cut { formula } => Rule::Cut {
                    formula: formula.subst_var(x, t),
                },
                r => r.clone(),
            };
            Derivation::new(
                rule,
                d.conclusion.map(|f| f.subst_var(x, t)),
                d.premises
                    .iter()
                    .map(|p| subst_deriv_var(p, x, t))
                    .collect(),
            )
        }
    }
}

/// Widen a derivation's conclusion contexts to the occurrence-supersets
/// `gamma` and `delta`. The focus shape and focus formula are kept, the
/// set of cuts is in bijection with the input's, and eigenvariables are
/// renamed where the wider contexts would break their freshness.
pub fn weaken(d: &Derivation, gamma: &Context, delta: &Context) -> Result<Derivation, TransformError> {
    if !d.conclusion.gamma().subset_occ(gamma) {
        return Err(TransformError::NotASuperset { side: "left" });
    }
    if !d.conclusion.delta().subset_occ(delta) {
        return Err(TransformError::NotASuperset { side: "right" });
    }
    Ok(weaken_rec(d, gamma, delta))
}

/// Keep a stored position when the widened context still carries the
/// same formula there; otherwise fall back to the first occurrence.
fn relocate(ctx: &Context, f: &Formula, old: usize) -> usize {
    if ctx.get(old).is_some_and(|g| g.alpha_eq(f)) {
        old
    } else {
        ctx.find_alpha(f)
            .expect("weakening invariant: formula occurs in the widened context")
    }
}

/// Position at which to re-insert a focus formula into a widened
/// context; stays at the old index when it is still in range.
fn reinsert_at(ctx: &Context, old: usize) -> usize {
    old.min(ctx.len())
}

fn weaken_rec(d: &Derivation, gamma: &Context, delta: &Context) -> Derivation {
    match &d.rule {
        Rule::AxL { index } => {
            let focus = d.conclusion.focus().unwrap();
            mk_ax_l(gamma.clone(), delta.clone(), relocate(delta, focus, *index))
        }
        Rule::AxR { index } => {
            let focus = d.conclusion.focus().unwrap();
            mk_ax_r(gamma.clone(), relocate(gamma, focus, *index), delta.clone())
        }
        Rule::BotL => mk_bot_l(gamma.clone(), delta.clone()),
        Rule::TopR => mk_top_r(gamma.clone(), delta.clone()),
        Rule::Mu { index } => {
            let focus = d.conclusion.focus().unwrap().clone();
            let at = reinsert_at(delta, *index);
            let premise = weaken_rec(&d.premises[0], gamma, &delta.inserted(at, focus));
            mk_mu(at, premise)
        }
        Rule::MuTilde { index } => {
            let focus = d.conclusion.focus().unwrap().clone();
            let at = reinsert_at(gamma, *index);
            let premise = weaken_rec(&d.premises[0], &gamma.inserted(at, focus), delta);
            mk_mu_tilde(at, premise)
        }
        Rule::ImpR { index } => {
            let (a, _b) = match d.conclusion.focus().unwrap() {
                Formula::Imp(a, b) => (a.as_ref().clone(), b),
                f => panic!("ImpR focus must be an implication, found '{f}'"),
            };
            let at = reinsert_at(gamma, *index);
            let premise = weaken_rec(&d.premises[0], &gamma.inserted(at, a), delta);
            mk_imp_r(at, premise)
        }
        Rule::ImpL => mk_imp_l(
            weaken_rec(&d.premises[0], gamma, delta),
            weaken_rec(&d.premises[1], gamma, delta),
        ),
        Rule::OrL => mk_or_l(
            weaken_rec(&d.premises[0], gamma, delta),
            weaken_rec(&d.premises[1], gamma, delta),
        ),
        Rule::AndR => mk_and_r(
            weaken_rec(&d.premises[0], gamma, delta),
            weaken_rec(&d.premises[1], gamma, delta),
        ),
        Rule::OrR1 => {
            let b = match d.conclusion.focus().unwrap() {
                Formula::Or(_, b) => b.as_ref().clone(),
                f => panic!("OrR1 focus must be a disjunction, found '{f}'"),
            };
            mk_or_r1(b, weaken_rec(&d.premises[0], gamma, delta))
        }
        Rule::OrR2 => {
            let a = match d.conclusion.focus().unwrap() {
                Formula::Or(a, _) => a.as_ref().clone(),
                f => panic!("OrR2 focus must be a disjunction, found '{f}'"),
            };
            mk_or_r2(a, weaken_rec(&d.premises[0], gamma, delta))
        }
        Rule::AndL1 => {
            let b = match d.conclusion.focus().unwrap() {
                Formula::And(_, b) => b.as_ref().clone(),
                f => panic!("AndL1 focus must be a conjunction, found '{f}'"),
            };
            mk_and_l1(b, weaken_rec(&d.premises[0], gamma, delta))
        }
        Rule::AndL2 => {
            let a = match d.conclusion.focus().unwrap() {
                Formula::And(a, _) => a.as_ref().clone(),
                f => panic!("AndL2 focus must be a conjunction, found '{f}'"),
            };
            mk_and_l2(a, weaken_rec(&d.premises[0], gamma, delta))
        }
        Rule::ExR { witness } => mk_ex_r(
            d.conclusion.focus().unwrap().clone(),
            witness.clone(),
            weaken_rec(&d.premises[0], gamma, delta),
        ),
        Rule::AllL { witness } => mk_all_l(
            d.conclusion.focus().unwrap().clone(),
            witness.clone(),
            weaken_rec(&d.premises[0], gamma, delta),
        ),
        Rule::ExL { eigen } | Rule::AllR { eigen } => {
            let focus = d.conclusion.focus().unwrap().clone();
            // Re-establish "x fresh" against the wider contexts.
            let mut fv = gamma.free_vars();
            fv.extend(delta.free_vars());
            let (eigen, premise) = if fv.contains(eigen) {
                let mut avoid: BTreeSet<Ident> = d.all_idents();
                avoid.extend(gamma.all_idents());
                avoid.extend(delta.all_idents());
                let fresh = fresh_ident(eigen, &avoid);
                let renamed = subst_deriv_var(&d.premises[0], eigen, &Term::Var(fresh.clone()));
                (fresh, renamed)
            } else {
                (eigen.clone(), d.premises[0].clone())
            };
            let premise = weaken_rec(&premise, gamma, delta);
            match &d.rule {
                Rule::ExL { .. } => mk_ex_l(focus, eigen, premise),
                _ => mk_all_r(focus, eigen, premise),
            }
        }
        Rule::Cut { formula } => mk_cut(
            formula.clone(),
            weaken_rec(&d.premises[0], gamma, delta),
            weaken_rec(&d.premises[1], gamma, delta),
        ),
    }
}

/// Replace the constant `c` by the variable `y` throughout a
/// derivation. `y` must not occur in the conclusion; eigenvariables
/// named `y` anywhere in the tree are renamed first so the result still
/// checks. No cuts are added or removed.
pub fn rename_const_to_var(
    d: &Derivation,
    c: &str,
    y: &str,
) -> Result<Derivation, TransformError> {
    if d.conclusion.all_idents().contains(y) {
        return Err(TransformError::VariableNotFresh { var: y.to_string() });
    }
    let cleared = clear_eigen(d, y);
    let t = Term::Var(y.to_string());
    Ok(map_replace_const(&cleared, c, &t))
}

/// Rename away every eigenvariable equal to `y` in the tree.
fn clear_eigen(d: &Derivation, y: &str) -> Derivation {
    let premises: Vec<Derivation> = d.premises.iter().map(|p| clear_eigen(p, y)).collect();
    match &d.rule {
        Rule::ExL { eigen } | Rule::AllR { eigen } if eigen == y => {
            let mut avoid = d.all_idents();
            avoid.insert(y.to_string());
            let fresh = fresh_ident(eigen, &avoid);
            let premise = subst_deriv_var(&premises[0], y, &Term::Var(fresh.clone()));
            let rule = match &d.rule {
                Rule::ExL { .. } => Rule::ExL {
                    eigen: fresh.clone(),
                },
                _ => Rule::AllR {
                    eigen: fresh.clone(),
                },
            };
            Derivation::new(rule, d.conclusion.clone(), vec![premise])
        }
        rule => Derivation::new(rule.clone(), d.conclusion.clone(), premises),
    }
}

fn map_replace_const(d: &Derivation, c: &str, t: &Term) -> Derivation {
    let rule = match &d.rule {
        Rule::ExR { witness } => Rule::ExR {
            witness: witness.replace_const(c, t),
        },
        Rule::AllL { witness } => Rule::AllL {
            witness: witness.replace_const(c, t),
        },
        Rule::Cut { formula } => Rule::Cut {
            formula: formula.replace_const(c, t),
        },
        r => r.clone(),
    };
    Derivation::new(
        rule,
        d.conclusion.map(|f| f.replace_const(c, t)),
        d.premises
            .iter()
            .map(|p| map_replace_const(p, c, t))
            .collect(),
    )
}

/// Left contraction: from `Γ | A |- Δ` with `A` occurring in `Γ`,
/// derive `Γ |- Δ` by cutting against a right axiom. The new cut is
/// axiom-guarded, so normality is preserved.
pub fn contract_left(d: Derivation) -> Result<Derivation, TransformError> {
    let (gamma, focus, delta) = match &d.conclusion {
        Sequent::LeftFocus {
            gamma,
            focus,
            delta,
        } => (gamma.clone(), focus.clone(), delta.clone()),
        s => {
            return Err(TransformError::WrongShape {
                expected: "left-focus",
                found: s.to_string(),
            })
        }
    };
    let index = gamma
        .rfind_alpha(&focus)
        .ok_or(TransformError::FocusNotInContext { side: "left" })?;
    let ax = mk_ax_r(gamma, index, delta);
    Ok(mk_cut(focus, ax, d))
}

/// Right contraction: from `Γ |- A | Δ` with `A` occurring in `Δ`,
/// derive `Γ |- Δ` by cutting against a left axiom.
pub fn contract_right(d: Derivation) -> Result<Derivation, TransformError> {
    let (gamma, focus, delta) = match &d.conclusion {
        Sequent::RightFocus {
            gamma,
            focus,
            delta,
        } => (gamma.clone(), focus.clone(), delta.clone()),
        s => {
            return Err(TransformError::WrongShape {
                expected: "right-focus",
                found: s.to_string(),
            })
        }
    };
    let index = delta
        .find_alpha(&focus)
        .ok_or(TransformError::FocusNotInContext { side: "right" })?;
    let ax = mk_ax_l(gamma, delta, index);
    Ok(mk_cut(focus, d, ax))
}
