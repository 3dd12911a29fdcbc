//! Decidable audit of the semantic laws a classical Kripke model must
//! satisfy, plus the soundness cross-check for derivations.
//!
//! Every clause is a theorem of the semantics, so on a valid model the
//! whole report must pass; a failure indicates an evaluator bug. Each
//! clause is evaluated for every world and every supplied formula of the
//! matching shape (negation clauses build `~A` and `~~A` themselves).
//! One-directional clauses assert exactly the stated implication and
//! deliberately not its converse: a forced disjunction need not have a
//! forced disjunct, and a forced existential need not have a forced
//! witness.

use std::fmt;

use super::{Evaluator, FiniteModel};
use crate::calculus::{Derivation, Sequent};
use crate::syntax::{Formula, Ident, Term};

/// Result of one audited clause.
#[derive(Debug, Clone)]
pub struct ClauseResult {
    pub name: &'static str,
    /// Number of (world, formula) instances evaluated.
    pub checked: usize,
    pub failures: Vec<String>,
}

impl ClauseResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Pass/fail matrix over all audited clauses.
#[derive(Debug, Clone, Default)]
pub struct AuditReport {
    pub clauses: Vec<ClauseResult>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.clauses.iter().all(ClauseResult::passed)
    }

    pub fn total_checked(&self) -> usize {
        self.clauses.iter().map(|c| c.checked).sum()
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.clauses {
            writeln!(
                f,
                "{:44} {:4} checked  {}",
                c.name,
                c.checked,
                if c.passed() { "PASS" } else { "FAIL" }
            )?;
            for fail in &c.failures {
                writeln!(f, "    {}", fail)?;
            }
        }
        Ok(())
    }
}

struct Auditor<'m, 'f> {
    ev: Evaluator<'m>,
    formulas: &'f [Formula],
    report: AuditReport,
}

impl<'m, 'f> Auditor<'m, 'f> {
    fn model(&self) -> &FiniteModel {
        self.ev.model()
    }

    /// Run `check(world, formula)` over every pair whose elements fit.
    fn per_world_formula(
        &mut self,
        name: &'static str,
        shape: impl Fn(&Formula) -> bool,
        check: impl Fn(&Evaluator<'m>, usize, &Formula) -> bool,
    ) {
        let mut checked = 0;
        let mut failures = Vec::new();
        for a in self.formulas.iter().filter(|a| shape(a)) {
            for w in 0..self.model().world_count() {
                if !self.ev.elements_fit(w, a) {
                    continue;
                }
                checked += 1;
                if !check(&self.ev, w, a) {
                    failures.push(format!("world {}: {}", self.model().world_names()[w], a));
                }
            }
        }
        self.report.clauses.push(ClauseResult {
            name,
            checked,
            failures,
        });
    }

    /// Run `check(lo, hi, formula)` over every ordered pair of worlds.
    fn per_world_pair(
        &mut self,
        name: &'static str,
        check: impl Fn(&Evaluator<'m>, usize, usize, &Formula) -> bool,
    ) {
        let mut checked = 0;
        let mut failures = Vec::new();
        for a in self.formulas {
            for lo in 0..self.model().world_count() {
                if !self.ev.elements_fit(lo, a) {
                    continue;
                }
                for hi in self.model().cone(lo).collect::<Vec<_>>() {
                    checked += 1;
                    if !check(&self.ev, lo, hi, a) {
                        failures.push(format!(
                            "worlds {} <= {}: {}",
                            self.model().world_names()[lo],
                            self.model().world_names()[hi],
                            a
                        ));
                    }
                }
            }
        }
        self.report.clauses.push(ClauseResult {
            name,
            checked,
            failures,
        });
    }
}

fn any(_: &Formula) -> bool {
    true
}

/// Evaluate every audited clause on `model` over `formulas`.
pub fn audit(model: &FiniteModel, formulas: &[Formula]) -> AuditReport {
    let mut a = Auditor {
        ev: Evaluator::new(model),
        formulas,
        report: AuditReport::default(),
    };

    // Monotonicity of the three relations.
    a.per_world_pair("monotone-srefutes", |ev, lo, hi, f| {
        !ev.srefutes_idx(lo, f) || ev.srefutes_idx(hi, f)
    });
    a.per_world_pair("monotone-forces", |ev, lo, hi, f| {
        !ev.forces_idx(lo, f) || ev.forces_idx(hi, f)
    });
    a.per_world_pair("monotone-refutes", |ev, lo, hi, f| {
        !ev.refutes_idx(lo, f) || ev.refutes_idx(hi, f)
    });

    // Strong refutation implies refutation.
    a.per_world_formula("srefutes-implies-refutes", any, |ev, w, f| {
        !ev.srefutes_idx(w, f) || ev.refutes_idx(w, f)
    });

    // Forcing of composites against the traditional clauses: the
    // implication, conjunction and universal cases are equivalences,
    // disjunction and existential only receive the introduction
    // direction.
    a.per_world_formula(
        "forces-imp-iff-pointwise",
        |f| matches!(f, Formula::Imp(..)),
        |ev, w, f| {
            let (x, y) = match f {
                Formula::Imp(x, y) => (x, y),
                _ => unreachable!(),
            };
            let rhs = ev
                .model()
                .cone(w)
                .all(|w2| !ev.forces_idx(w2, x) || ev.forces_idx(w2, y));
            ev.forces_idx(w, f) == rhs
        },
    );
    a.per_world_formula(
        "forces-and-iff-both",
        |f| matches!(f, Formula::And(..)),
        |ev, w, f| {
            let (x, y) = match f {
                Formula::And(x, y) => (x, y),
                _ => unreachable!(),
            };
            ev.forces_idx(w, f) == (ev.forces_idx(w, x) && ev.forces_idx(w, y))
        },
    );
    a.per_world_formula(
        "forces-forall-iff-pointwise",
        |f| matches!(f, Formula::Forall(..)),
        |ev, w, f| {
            let (x, body) = match f {
                Formula::Forall(x, body) => (x, body),
                _ => unreachable!(),
            };
            let rhs = ev.model().cone(w).all(|w2| {
                ev.model().dom_idx(w2).iter().all(|d| {
                    ev.forces_idx(w2, &body.subst_var(x, &Term::Const(d.clone())))
                })
            });
            ev.forces_idx(w, f) == rhs
        },
    );
    a.per_world_formula(
        "forces-or-from-either",
        |f| matches!(f, Formula::Or(..)),
        |ev, w, f| {
            let (x, y) = match f {
                Formula::Or(x, y) => (x, y),
                _ => unreachable!(),
            };
            !(ev.forces_idx(w, x) || ev.forces_idx(w, y)) || ev.forces_idx(w, f)
        },
    );
    a.per_world_formula(
        "forces-exists-from-witness",
        |f| matches!(f, Formula::Exists(..)),
        |ev, w, f| {
            let (x, body) = match f {
                Formula::Exists(x, body) => (x, body),
                _ => unreachable!(),
            };
            let witness = ev
                .model()
                .dom_idx(w)
                .iter()
                .any(|d| ev.forces_idx(w, &body.subst_var(x, &Term::Const(d.clone()))));
            !witness || ev.forces_idx(w, f)
        },
    );

    // Refutation versus strong refutation: equivalences at ->, | and
    // exists; introduction directions at & and forall.
    a.per_world_formula(
        "refutes-imp-iff-srefutes",
        |f| matches!(f, Formula::Imp(..)),
        |ev, w, f| ev.refutes_idx(w, f) == ev.srefutes_idx(w, f),
    );
    a.per_world_formula(
        "refutes-or-iff-srefutes",
        |f| matches!(f, Formula::Or(..)),
        |ev, w, f| ev.refutes_idx(w, f) == ev.srefutes_idx(w, f),
    );
    a.per_world_formula(
        "refutes-exists-iff-srefutes",
        |f| matches!(f, Formula::Exists(..)),
        |ev, w, f| ev.refutes_idx(w, f) == ev.srefutes_idx(w, f),
    );
    a.per_world_formula(
        "refutes-and-from-either",
        |f| matches!(f, Formula::And(..)),
        |ev, w, f| {
            let (x, y) = match f {
                Formula::And(x, y) => (x, y),
                _ => unreachable!(),
            };
            !(ev.refutes_idx(w, x) || ev.refutes_idx(w, y)) || ev.refutes_idx(w, f)
        },
    );
    a.per_world_formula(
        "refutes-forall-from-witness",
        |f| matches!(f, Formula::Forall(..)),
        |ev, w, f| {
            let (x, body) = match f {
                Formula::Forall(x, body) => (x, body),
                _ => unreachable!(),
            };
            let witness = ev
                .model()
                .dom_idx(w)
                .iter()
                .any(|d| ev.refutes_idx(w, &body.subst_var(x, &Term::Const(d.clone()))));
            !witness || ev.refutes_idx(w, f)
        },
    );

    // Top and bottom behave as expected around exploding worlds.
    a.per_world_formula("forces-top", |f| *f == Formula::Top, |ev, w, f| {
        ev.forces_idx(w, f)
    });
    a.per_world_formula("refutes-bot", |f| *f == Formula::Bot, |ev, w, f| {
        ev.refutes_idx(w, f)
    });
    a.per_world_formula("exploding-iff-forces-bot", |f| *f == Formula::Bot, |ev, w, f| {
        ev.model().exploding_idx(w) == ev.forces_idx(w, f)
    });
    a.per_world_formula("exploding-iff-refutes-top", |f| *f == Formula::Top, |ev, w, f| {
        ev.model().exploding_idx(w) == ev.refutes_idx(w, f)
    });

    // Negation laws: built from every supplied formula.
    a.per_world_formula("forces-iff-srefutes-neg", any, |ev, w, f| {
        ev.forces_idx(w, f) == ev.srefutes_idx(w, &Formula::neg(f.clone()))
    });
    a.per_world_formula("refutes-iff-forces-neg", any, |ev, w, f| {
        ev.refutes_idx(w, f) == ev.forces_idx(w, &Formula::neg(f.clone()))
    });
    a.per_world_formula("refutes-neg-iff-forces", any, |ev, w, f| {
        ev.refutes_idx(w, &Formula::neg(f.clone())) == ev.forces_idx(w, f)
    });
    a.per_world_formula("refutes-neg-iff-srefutes-neg", any, |ev, w, f| {
        let neg = Formula::neg(f.clone());
        ev.refutes_idx(w, &neg) == ev.srefutes_idx(w, &neg)
    });
    a.per_world_formula("forces-iff-forces-dneg", any, |ev, w, f| {
        ev.forces_idx(w, f) == ev.forces_idx(w, &Formula::neg(Formula::neg(f.clone())))
    });
    a.per_world_formula("refutes-iff-refutes-dneg", any, |ev, w, f| {
        ev.refutes_idx(w, f) == ev.refutes_idx(w, &Formula::neg(Formula::neg(f.clone())))
    });
    a.per_world_formula("srefutes-neg-iff-forces-dneg-iff-forces", any, |ev, w, f| {
        let sn = ev.srefutes_idx(w, &Formula::neg(f.clone()));
        let fd = ev.forces_idx(w, &Formula::neg(Formula::neg(f.clone())));
        let ff = ev.forces_idx(w, f);
        sn == fd && fd == ff
    });

    // Induced intuitionistic forcing matches classical forcing through
    // the double-negation translation.
    a.per_world_formula("dn-translation-matches-forcing", any, |ev, w, f| {
        ev.iforces_idx(w, &f.dn_translate()) == ev.forces_idx(w, f)
    });

    a.report
}

/// Per-derivation semantic check: at every world and for every
/// interpretation of the conclusion's free symbols into that world's
/// domain, the hypotheses forced/refuted imply what the sequent shape
/// claims.
#[derive(Debug, Clone)]
pub struct SoundnessReport {
    /// (world, assignment) pairs whose hypotheses held.
    pub instances_checked: usize,
    /// Assignments enumerated overall, including vacuous ones.
    pub assignments_enumerated: usize,
    pub failures: Vec<String>,
}

impl SoundnessReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for SoundnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} assignments, {} with live hypotheses, {}",
            self.assignments_enumerated,
            self.instances_checked,
            if self.passed() { "PASS" } else { "FAIL" }
        )?;
        for fail in &self.failures {
            write!(f, "\n    {}", fail)?;
        }
        Ok(())
    }
}

/// Interpret the free variables and the constants of `sequent` as
/// elements of each world's domain in every possible way, and verify
/// the conclusion's semantic reading. `derivation` must have passed
/// [`Derivation::check`].
pub fn soundness_check(model: &FiniteModel, derivation: &Derivation) -> SoundnessReport {
    let ev = Evaluator::new(model);
    let sequent = &derivation.conclusion;
    let mut syms: Vec<Ident> = sequent.free_vars().into_iter().collect();
    syms.extend(sequent.consts());
    syms.sort();
    syms.dedup();

    let mut report = SoundnessReport {
        instances_checked: 0,
        assignments_enumerated: 0,
        failures: Vec::new(),
    };

    for w in 0..model.world_count() {
        let dom: Vec<Ident> = model.dom_idx(w).iter().cloned().collect();
        if dom.is_empty() && !syms.is_empty() {
            continue; // no assignments into an empty domain
        }
        let mut assignment = vec![0usize; syms.len()];
        loop {
            report.assignments_enumerated += 1;
            let inst = |f: &Formula| -> Formula {
                let mut g = f.clone();
                for (s, idx) in syms.iter().zip(&assignment) {
                    let e = Term::Const(dom[*idx].clone());
                    g = g.subst_var(s, &e).replace_const(s, &e);
                }
                g
            };
            let hyp = sequent.gamma().iter().all(|g| ev.forces_idx(w, &inst(g)))
                && sequent.delta().iter().all(|d| ev.refutes_idx(w, &inst(d)));
            if hyp {
                report.instances_checked += 1;
                let ok = match sequent {
                    Sequent::Plain { .. } => model.exploding_idx(w),
                    Sequent::RightFocus { focus, .. } => ev.forces_idx(w, &inst(focus)),
                    Sequent::LeftFocus { focus, .. } => ev.refutes_idx(w, &inst(focus)),
                };
                if !ok {
                    let bind: Vec<String> = syms
                        .iter()
                        .zip(&assignment)
                        .map(|(s, i)| format!("{}:={}", s, dom[*i]))
                        .collect();
                    report.failures.push(format!(
                        "world {} [{}]: {}",
                        model.world_names()[w],
                        bind.join(", "),
                        sequent
                    ));
                }
            }
            // next assignment in the cartesian product
            let mut k = 0;
            loop {
                if k == assignment.len() {
                    break;
                }
                assignment[k] += 1;
                if assignment[k] < dom.len() {
                    break;
                }
                assignment[k] = 0;
                k += 1;
            }
            if k == assignment.len() {
                break;
            }
        }
    }
    report
}
