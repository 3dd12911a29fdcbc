//! Normalization by evaluation over the universal model.
//!
//! The universal model's worlds are pairs of sentence contexts
//! `(Γ, Δ)`, ordered by occurrence-set inclusion on both sides, with the
//! set of closed terms as every world's domain. A world "explodes" when
//! `Γ |- Δ` has a normal derivation, and an atom is strongly refuted
//! at `(Γ, Δ)` when `Γ | X |- Δ` has one. Evaluating a derivation into
//! semantic values over this model and reading the values back
//! eliminates unguarded cuts: evaluation interprets every rule
//! (a cut applies the refutation of its right premise to the forcing of
//! its left premise, so no syntactic cut survives it), and reification
//! rebuilds syntax using only introduction rules, focus moves, and
//! contraction macros.
//!
//! Semantic values are monotone by construction: every callable takes
//! the target world explicitly and weakens any stored derivation on
//! demand, so a value built at `(Γ, Δ)` can be used at any extension.
//!
//! Fresh constants drawn from the reserved `#` namespace stand in for
//! eigenvariables while a subderivation is built, and are renamed to
//! fresh variables just before the binder is introduced, so no gensym
//! survives in the output.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::calculus::{
    contract_left, contract_right, mk_all_l, mk_all_r, mk_and_l1, mk_and_l2, mk_and_r, mk_ax_l,
    mk_bot_l, mk_ex_l, mk_ex_r, mk_imp_l, mk_imp_r, mk_mu, mk_mu_tilde, mk_or_l, mk_or_r1,
    mk_or_r2, mk_top_r, rename_const_to_var, weaken, CheckError, Derivation, Rule, Sequent,
};
use crate::syntax::{fresh_ident, Context, Formula, Ident, Term, C0, GENSYM_PREFIX};

/// A world of the universal model: a pair of sentence contexts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UWorld {
    pub gamma: Context,
    pub delta: Context,
}

impl UWorld {
    pub fn new(gamma: Context, delta: Context) -> UWorld {
        UWorld { gamma, delta }
    }

    /// Occurrence-set inclusion on both components.
    pub fn leq(&self, other: &UWorld) -> bool {
        self.gamma.subset_occ(&other.gamma) && self.delta.subset_occ(&other.delta)
    }
}

impl fmt::Display for UWorld {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} ; {})", self.gamma, self.delta)
    }
}

/// Evidence that a world explodes: a normal derivation of its plain
/// sequent.
#[derive(Debug, Clone)]
pub struct Explosion(pub Derivation);

impl Explosion {
    fn new(d: Derivation) -> Explosion {
        debug_assert!(matches!(d.conclusion, Sequent::Plain { .. }));
        debug_assert!(d.is_normal());
        Explosion(d)
    }
}

/// Per-invocation supply of reserved-namespace constants `#0, #1, ...`.
/// Clones share the counter; distinct normalizations use distinct
/// supplies, so runs stay reproducible.
#[derive(Debug, Clone, Default)]
pub struct FreshSupply(Arc<AtomicU64>);

impl FreshSupply {
    pub fn new() -> FreshSupply {
        FreshSupply::default()
    }

    pub fn fresh(&self) -> Ident {
        let n = self.0.fetch_add(1, Ordering::Relaxed);
        format!("{}{}", GENSYM_PREFIX, n)
    }
}

type ForceFn = dyn Fn(&UWorld, &SemSRefute) -> Explosion + Send + Sync;
type RefuteFn = dyn Fn(&UWorld, &SemForce) -> Explosion + Send + Sync;
type InstanceFn = dyn Fn(&UWorld, &Term) -> SemRefute + Send + Sync;

/// Semantic forcing of a sentence at a world: given any extension and
/// strong-refutation evidence there, produce an explosion there.
#[derive(Clone)]
pub struct SemForce(Arc<ForceFn>);

impl SemForce {
    pub fn new(f: impl Fn(&UWorld, &SemSRefute) -> Explosion + Send + Sync + 'static) -> SemForce {
        SemForce(Arc::new(f))
    }

    pub fn apply(&self, w: &UWorld, sr: &SemSRefute) -> Explosion {
        (self.0)(w, sr)
    }
}

/// Semantic refutation: given any extension and forcing evidence there,
/// produce an explosion there.
#[derive(Clone)]
pub struct SemRefute(Arc<RefuteFn>);

impl SemRefute {
    pub fn new(f: impl Fn(&UWorld, &SemForce) -> Explosion + Send + Sync + 'static) -> SemRefute {
        SemRefute(Arc::new(f))
    }

    pub fn apply(&self, w: &UWorld, v: &SemForce) -> Explosion {
        (self.0)(w, v)
    }
}

/// Structural strong-refutation evidence, one form per connective.
#[derive(Clone)]
pub enum SemSRefute {
    /// A normal derivation of `Γ | X |- Δ` at the world of creation;
    /// weakened on demand when consumed at a larger world.
    Atom(Derivation),
    /// Refutation of the left conjunct.
    AndLeft(SemRefute),
    /// Refutation of the right conjunct.
    AndRight(SemRefute),
    /// Refutations of both disjuncts.
    Or(SemRefute, SemRefute),
    /// Forcing of the antecedent paired with refutation of the
    /// consequent.
    Imp(SemForce, SemRefute),
    /// A closed witness together with a refutation of its instance.
    Forall(Term, SemRefute),
    /// At every extension, a refutation of every closed instance.
    Exists(Arc<InstanceFn>),
    /// `_|_` is always strongly refuted.
    Bot,
}

impl SemSRefute {
    fn tag(&self) -> &'static str {
        match self {
            SemSRefute::Atom(_) => "atom",
            SemSRefute::AndLeft(_) | SemSRefute::AndRight(_) => "and",
            SemSRefute::Or(..) => "or",
            SemSRefute::Imp(..) => "imp",
            SemSRefute::Forall(..) => "forall",
            SemSRefute::Exists(_) => "exists",
            SemSRefute::Bot => "bot",
        }
    }
}

impl fmt::Debug for SemSRefute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SemSRefute::{}", self.tag())
    }
}

/// Strong refutation implies refutation: wrap the evidence into a
/// refutation that hands it to any forcing.
fn srefute_to_refute(sr: SemSRefute) -> SemRefute {
    SemRefute::new(move |w, v| v.apply(w, &sr))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NbeError {
    Check(CheckError),
    /// Reflection requires the formula to occur in the world component.
    NotInContext { formula: String, side: &'static str },
    /// Evidence shape does not match the formula's head connective.
    TagMismatch { formula: String, found: &'static str },
    /// Environment does not line up with the derivation's conclusion.
    EnvMismatch { detail: String },
}

impl fmt::Display for NbeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NbeError::Check(e) => write!(f, "derivation does not check: {e}"),
            NbeError::NotInContext { formula, side } => {
                write!(f, "{formula} does not occur in the {side} context")
            }
            NbeError::TagMismatch { formula, found } => {
                write!(f, "evidence tagged '{found}' does not fit {formula}")
            }
            NbeError::EnvMismatch { detail } => write!(f, "environment mismatch: {detail}"),
        }
    }
}

impl std::error::Error for NbeError {}

impl From<CheckError> for NbeError {
    fn from(e: CheckError) -> Self {
        NbeError::Check(e)
    }
}

/// Forcing by membership: `A` in `Γ` is forced at `(Γ, Δ)`. Applying
/// the value reifies the supplied evidence to `Γ' | A |- Δ'` and closes
/// with a left contraction.
pub fn reflect_force(a: &Formula, w: &UWorld, supply: &FreshSupply) -> Result<SemForce, NbeError> {
    if w.gamma.find_alpha(a).is_none() {
        return Err(NbeError::NotInContext {
            formula: a.to_string(),
            side: "left",
        });
    }
    let a = a.clone();
    let supply = supply.clone();
    Ok(SemForce::new(move |w2, sr| {
        let d = reify_srefute(&a, w2, sr, &supply)
            .expect("strong-refutation evidence must match the reflected formula");
        Explosion::new(
            contract_left(d).expect("reflected formula occurs in every extension's left context"),
        )
    }))
}

/// Refutation by membership: `B` in `Δ` is refuted at `(Γ, Δ)`. Applying
/// the value reifies the forcing to `Γ' |- B | Δ'` and closes with a
/// right contraction.
pub fn reflect_refute(
    b: &Formula,
    w: &UWorld,
    supply: &FreshSupply,
) -> Result<SemRefute, NbeError> {
    if w.delta.find_alpha(b).is_none() {
        return Err(NbeError::NotInContext {
            formula: b.to_string(),
            side: "right",
        });
    }
    let b = b.clone();
    let supply = supply.clone();
    Ok(SemRefute::new(move |w2, v| {
        let d = reify_force(&b, w2, v, &supply);
        Explosion::new(
            contract_right(d).expect("reflected formula occurs in every extension's right context"),
        )
    }))
}

/// Read a semantic forcing of `a` back into a normal derivation of
/// `Γ |- a | Δ` at `w`.
pub fn reify_force(a: &Formula, w: &UWorld, v: &SemForce, supply: &FreshSupply) -> Derivation {
    match a {
        Formula::Atom(..) => {
            // apply the forcing at (Γ ; a, Δ) with the axiom as evidence
            let delta2 = w.delta.inserted(0, a.clone());
            let w2 = UWorld::new(w.gamma.clone(), delta2.clone());
            let ax = mk_ax_l(w.gamma.clone(), delta2, 0);
            let expl = v.apply(&w2, &SemSRefute::Atom(ax));
            mk_mu(0, expl.0)
        }
        Formula::Top => mk_top_r(w.gamma.clone(), w.delta.clone()),
        Formula::Bot => {
            let w2 = UWorld::new(w.gamma.clone(), w.delta.inserted(0, Formula::Bot));
            let expl = v.apply(&w2, &SemSRefute::Bot);
            mk_mu(0, expl.0)
        }
        Formula::Imp(a1, a2) => {
            // move a1 left and a2 right, then close with Mu and ImpR
            let hyp_at = w.gamma.len();
            let w2 = UWorld::new(
                w.gamma.pushed(a1.as_ref().clone()),
                w.delta.inserted(0, a2.as_ref().clone()),
            );
            let f1 = reflect_force(a1, &w2, supply).expect("a1 was just added on the left");
            let r2 = reflect_refute(a2, &w2, supply).expect("a2 was just added on the right");
            let expl = v.apply(&w2, &SemSRefute::Imp(f1, r2));
            mk_imp_r(hyp_at, mk_mu(0, expl.0))
        }
        Formula::And(a1, a2) => {
            let f1 = {
                let v = v.clone();
                SemForce::new(move |w2, sr| {
                    v.apply(w2, &SemSRefute::AndLeft(srefute_to_refute(sr.clone())))
                })
            };
            let f2 = {
                let v = v.clone();
                SemForce::new(move |w2, sr| {
                    v.apply(w2, &SemSRefute::AndRight(srefute_to_refute(sr.clone())))
                })
            };
            mk_and_r(
                reify_force(a1, w, &f1, supply),
                reify_force(a2, w, &f2, supply),
            )
        }
        Formula::Or(a1, a2) => {
            // the double-contraction derivation: force the disjunction
            // at (Γ ; a2, a1, a1|a2, Δ) with both disjuncts refutable by
            // membership, then fold the right context back down
            let delta2 = w
                .delta
                .inserted(0, a.clone())
                .inserted(0, a1.as_ref().clone())
                .inserted(0, a2.as_ref().clone());
            let w2 = UWorld::new(w.gamma.clone(), delta2);
            let r1 = reflect_refute(a1, &w2, supply).expect("a1 occurs on the right");
            let r2 = reflect_refute(a2, &w2, supply).expect("a2 occurs on the right");
            let expl = v.apply(&w2, &SemSRefute::Or(r1, r2));
            let d = mk_or_r2(a1.as_ref().clone(), mk_mu(0, expl.0));
            let d = contract_right(d).expect("the disjunction occurs on the right");
            let d = mk_or_r1(a2.as_ref().clone(), mk_mu(0, d));
            let d = contract_right(d).expect("the disjunction occurs on the right");
            mk_mu(0, d)
        }
        Formula::Forall(x, body) => {
            // force the instance at a fresh constant, then turn the
            // constant into a fresh eigenvariable
            let c = supply.fresh();
            let instance = body.subst_var(x, &Term::Const(c.clone()));
            let fc = {
                let v = v.clone();
                let c = c.clone();
                SemForce::new(move |w2, sr| {
                    v.apply(
                        w2,
                        &SemSRefute::Forall(
                            Term::Const(c.clone()),
                            srefute_to_refute(sr.clone()),
                        ),
                    )
                })
            };
            let dc = reify_force(&instance, w, &fc, supply);
            let mut avoid = dc.all_idents();
            avoid.extend(a.all_idents());
            let y = fresh_ident("y", &avoid);
            let dy = rename_const_to_var(&dc, &c, &y)
                .expect("the generated constant cannot clash with a chosen fresh variable");
            mk_all_r(a.clone(), y, dy)
        }
        Formula::Exists(x, body) => {
            let delta2 = w.delta.inserted(0, a.clone());
            let w2 = UWorld::new(w.gamma.clone(), delta2);
            let cl = {
                let a = a.clone();
                let x = x.clone();
                let body = body.as_ref().clone();
                let supply = supply.clone();
                Arc::new(move |_w3: &UWorld, t: &Term| {
                    let instance = body.subst_var(&x, t);
                    let a = a.clone();
                    let t = t.clone();
                    let supply = supply.clone();
                    SemRefute::new(move |w4, vt| {
                        let d = reify_force(&instance, w4, vt, &supply);
                        let d = mk_ex_r(a.clone(), t.clone(), d);
                        Explosion::new(
                            contract_right(d)
                                .expect("the existential occurs in every extension's right context"),
                        )
                    })
                })
            };
            let expl = v.apply(&w2, &SemSRefute::Exists(cl));
            mk_mu(0, expl.0)
        }
    }
}

/// Read a semantic refutation of `a` back into a normal derivation of
/// `Γ | a |- Δ` at `w`.
pub fn reify_refute(a: &Formula, w: &UWorld, v: &SemRefute, supply: &FreshSupply) -> Derivation {
    match a {
        Formula::Atom(..) => {
            let hyp_at = w.gamma.len();
            let w2 = UWorld::new(w.gamma.pushed(a.clone()), w.delta.clone());
            let f = reflect_force(a, &w2, supply).expect("the atom was just added on the left");
            let expl = v.apply(&w2, &f);
            mk_mu_tilde(hyp_at, expl.0)
        }
        Formula::Bot => mk_bot_l(w.gamma.clone(), w.delta.clone()),
        Formula::Top => {
            let hyp_at = w.gamma.len();
            let w2 = UWorld::new(w.gamma.pushed(Formula::Top), w.delta.clone());
            let f = SemForce::new(|_, sr| {
                panic!("T is never strongly refuted, got {sr:?}");
            });
            let expl = v.apply(&w2, &f);
            mk_mu_tilde(hyp_at, expl.0)
        }
        Formula::Imp(a1, a2) => {
            let hyp_at = w.gamma.len();
            let w2 = UWorld::new(w.gamma.pushed(a.clone()), w.delta.clone());
            let f = {
                let a1 = a1.as_ref().clone();
                let a2 = a2.as_ref().clone();
                let supply = supply.clone();
                SemForce::new(move |w3, sr| match sr {
                    SemSRefute::Imp(f1, r2) => {
                        let d1 = reify_force(&a1, w3, f1, &supply);
                        let d2 = reify_refute(&a2, w3, r2, &supply);
                        let d = mk_imp_l(d1, d2);
                        Explosion::new(
                            contract_left(d)
                                .expect("the implication occurs in every extension's left context"),
                        )
                    }
                    other => panic!("implication evidence expected, got {other:?}"),
                })
            };
            let expl = v.apply(&w2, &f);
            mk_mu_tilde(hyp_at, expl.0)
        }
        Formula::And(a1, a2) => {
            let hyp_at = w.gamma.len();
            let w2 = UWorld::new(w.gamma.pushed(a.clone()), w.delta.clone());
            let f = {
                let a1 = a1.as_ref().clone();
                let a2 = a2.as_ref().clone();
                let supply = supply.clone();
                SemForce::new(move |w3, sr| {
                    let d = match sr {
                        SemSRefute::AndLeft(r1) => {
                            mk_and_l1(a2.clone(), reify_refute(&a1, w3, r1, &supply))
                        }
                        SemSRefute::AndRight(r2) => {
                            mk_and_l2(a1.clone(), reify_refute(&a2, w3, r2, &supply))
                        }
                        other => panic!("conjunction evidence expected, got {other:?}"),
                    };
                    Explosion::new(
                        contract_left(d)
                            .expect("the conjunction occurs in every extension's left context"),
                    )
                })
            };
            let expl = v.apply(&w2, &f);
            mk_mu_tilde(hyp_at, expl.0)
        }
        Formula::Or(a1, a2) => {
            // a refuted disjunction refutes both disjuncts
            let r1 = {
                let v = v.clone();
                SemRefute::new(move |w2, f1| {
                    let f1 = f1.clone();
                    let f_or = SemForce::new(move |w3, sr| match sr {
                        SemSRefute::Or(ra, _) => ra.apply(w3, &f1),
                        other => panic!("disjunction evidence expected, got {other:?}"),
                    });
                    v.apply(w2, &f_or)
                })
            };
            let r2 = {
                let v = v.clone();
                SemRefute::new(move |w2, f2| {
                    let f2 = f2.clone();
                    let f_or = SemForce::new(move |w3, sr| match sr {
                        SemSRefute::Or(_, rb) => rb.apply(w3, &f2),
                        other => panic!("disjunction evidence expected, got {other:?}"),
                    });
                    v.apply(w2, &f_or)
                })
            };
            mk_or_l(
                reify_refute(a1, w, &r1, supply),
                reify_refute(a2, w, &r2, supply),
            )
        }
        Formula::Forall(x, body) => {
            let hyp_at = w.gamma.len();
            let w2 = UWorld::new(w.gamma.pushed(a.clone()), w.delta.clone());
            let f = {
                let a = a.clone();
                let x = x.clone();
                let body = body.as_ref().clone();
                let supply = supply.clone();
                SemForce::new(move |w3, sr| match sr {
                    SemSRefute::Forall(t, r) => {
                        let instance = body.subst_var(&x, t);
                        let d = reify_refute(&instance, w3, r, &supply);
                        let d = mk_all_l(a.clone(), t.clone(), d);
                        Explosion::new(
                            contract_left(d)
                                .expect("the universal occurs in every extension's left context"),
                        )
                    }
                    other => panic!("universal evidence expected, got {other:?}"),
                })
            };
            let expl = v.apply(&w2, &f);
            mk_mu_tilde(hyp_at, expl.0)
        }
        Formula::Exists(x, body) => {
            // a refuted existential is strongly refuted: extract the
            // instance refutation at a fresh constant, rename, bind
            let c = supply.fresh();
            let instance = body.subst_var(x, &Term::Const(c.clone()));
            let rc = {
                let v = v.clone();
                let c = c.clone();
                SemRefute::new(move |w2, ft| {
                    let ft = ft.clone();
                    let t = Term::Const(c.clone());
                    let f_ex = SemForce::new(move |w3, sr| match sr {
                        SemSRefute::Exists(cl) => cl(w3, &t).apply(w3, &ft),
                        other => panic!("existential evidence expected, got {other:?}"),
                    });
                    v.apply(w2, &f_ex)
                })
            };
            let dc = reify_refute(&instance, w, &rc, supply);
            let mut avoid = dc.all_idents();
            avoid.extend(a.all_idents());
            let y = fresh_ident("y", &avoid);
            let dy = rename_const_to_var(&dc, &c, &y)
                .expect("the generated constant cannot clash with a chosen fresh variable");
            mk_ex_l(a.clone(), y, dy)
        }
    }
}

/// Turn strong-refutation evidence for `a` into a normal derivation of
/// `Γ | a |- Δ` at `w`. Atom evidence carries its own derivation and is
/// weakened to `w`; composite evidence recurses through the reifiers.
pub fn reify_srefute(
    a: &Formula,
    w: &UWorld,
    sr: &SemSRefute,
    supply: &FreshSupply,
) -> Result<Derivation, NbeError> {
    let mismatch = |found: &'static str| NbeError::TagMismatch {
        formula: a.to_string(),
        found,
    };
    match (a, sr) {
        (Formula::Atom(..), SemSRefute::Atom(d)) => {
            weaken(d, &w.gamma, &w.delta).map_err(|_| NbeError::EnvMismatch {
                detail: format!("stored atom derivation does not weaken to ({} ; {})", w.gamma, w.delta),
            })
        }
        (Formula::Bot, SemSRefute::Bot) => Ok(mk_bot_l(w.gamma.clone(), w.delta.clone())),
        (Formula::And(a1, a2), SemSRefute::AndLeft(r1)) => Ok(mk_and_l1(
            a2.as_ref().clone(),
            reify_refute(a1, w, r1, supply),
        )),
        (Formula::And(a1, a2), SemSRefute::AndRight(r2)) => Ok(mk_and_l2(
            a1.as_ref().clone(),
            reify_refute(a2, w, r2, supply),
        )),
        (Formula::Or(a1, a2), SemSRefute::Or(r1, r2)) => Ok(mk_or_l(
            reify_refute(a1, w, r1, supply),
            reify_refute(a2, w, r2, supply),
        )),
        (Formula::Imp(a1, a2), SemSRefute::Imp(f1, r2)) => Ok(mk_imp_l(
            reify_force(a1, w, f1, supply),
            reify_refute(a2, w, r2, supply),
        )),
        (Formula::Forall(x, body), SemSRefute::Forall(t, r)) => {
            let instance = body.subst_var(x, t);
            Ok(mk_all_l(
                a.clone(),
                t.clone(),
                reify_refute(&instance, w, r, supply),
            ))
        }
        (Formula::Exists(x, body), SemSRefute::Exists(cl)) => {
            let c = supply.fresh();
            let instance = body.subst_var(x, &Term::Const(c.clone()));
            let r = cl(w, &Term::Const(c.clone()));
            let dc = reify_refute(&instance, w, &r, supply);
            let mut avoid = dc.all_idents();
            avoid.extend(a.all_idents());
            let y = fresh_ident("y", &avoid);
            let dy = rename_const_to_var(&dc, &c, &y)
                .expect("the generated constant cannot clash with a chosen fresh variable");
            Ok(mk_ex_l(a.clone(), y, dy))
        }
        (_, other) => Err(mismatch(other.tag())),
    }
}

/// Positional semantic environment: one forcing per left-context
/// occurrence, one refutation per right-context occurrence, plus the
/// association of free variables to closed terms.
#[derive(Clone, Default)]
pub struct Env {
    pub gamma_vals: Vec<SemForce>,
    pub delta_vals: Vec<SemRefute>,
    pub rho: BTreeMap<Ident, Term>,
}

impl Env {
    fn insert_gamma(&self, i: usize, v: SemForce) -> Env {
        let mut e = self.clone();
        e.gamma_vals.insert(i, v);
        e
    }

    fn insert_delta(&self, i: usize, v: SemRefute) -> Env {
        let mut e = self.clone();
        e.delta_vals.insert(i, v);
        e
    }

    fn with_var(&self, x: &str, t: Term) -> Env {
        let mut e = self.clone();
        e.rho.insert(x.to_string(), t);
        e
    }

    /// Close a formula under the association; variables without an
    /// entry fall back to the distinguished constant.
    fn close(&self, f: &Formula) -> Formula {
        let mut g = f.clone();
        for x in f.free_vars() {
            let t = self.rho.get(&x).cloned().unwrap_or(Term::Const(C0.into()));
            g = g.subst_var(&x, &t);
        }
        g
    }

    fn close_term(&self, t: &Term) -> Term {
        let mut out = t.clone();
        for x in t.free_vars() {
            let v = self.rho.get(&x).cloned().unwrap_or(Term::Const(C0.into()));
            out = out.subst_var(&x, &v);
        }
        out
    }
}

/// What evaluation yields, by the shape of the derivation's conclusion.
pub enum Val {
    Explode(Explosion),
    Force(SemForce),
    Refute(SemRefute),
}

impl Val {
    fn into_explosion(self) -> Explosion {
        match self {
            Val::Explode(e) => e,
            _ => panic!("plain premise must evaluate to an explosion"),
        }
    }

    fn into_force(self) -> SemForce {
        match self {
            Val::Force(f) => f,
            _ => panic!("right-focus premise must evaluate to a forcing"),
        }
    }

    fn into_refute(self) -> SemRefute {
        match self {
            Val::Refute(r) => r,
            _ => panic!("left-focus premise must evaluate to a refutation"),
        }
    }
}

/// Evaluate a checked derivation into a semantic value at `w`. The
/// environment's positions must line up with the conclusion's contexts.
/// A plain conclusion yields an explosion at `w`, a right focus yields a
/// forcing of the focus, a left focus a refutation.
pub fn eval(d: &Derivation, env: &Env, w: &UWorld, supply: &FreshSupply) -> Result<Val, NbeError> {
    if env.gamma_vals.len() != d.conclusion.gamma().len()
        || env.delta_vals.len() != d.conclusion.delta().len()
    {
        return Err(NbeError::EnvMismatch {
            detail: format!(
                "environment has {}/{} values for a conclusion with {}/{} context formulas",
                env.gamma_vals.len(),
                env.delta_vals.len(),
                d.conclusion.gamma().len(),
                d.conclusion.delta().len()
            ),
        });
    }
    Ok(eval_node(d, env, w, supply))
}

fn eval_premise(d: &Derivation, env: &Env, w: &UWorld, supply: &FreshSupply) -> Val {
    eval_node(d, env, w, supply)
}

fn eval_node(d: &Derivation, env: &Env, w: &UWorld, supply: &FreshSupply) -> Val {
    match &d.rule {
        Rule::AxR { index } => Val::Force(env.gamma_vals[*index].clone()),
        Rule::AxL { index } => Val::Refute(env.delta_vals[*index].clone()),
        Rule::TopR => Val::Force(SemForce::new(|_, sr| {
            panic!("T is never strongly refuted, got {sr:?}")
        })),
        Rule::BotL => Val::Refute(SemRefute::new(|w2, v| v.apply(w2, &SemSRefute::Bot))),
        Rule::Mu { index } => {
            let premise = d.premises[0].clone();
            let env = env.clone();
            let supply = supply.clone();
            let index = *index;
            Val::Force(SemForce::new(move |w2, sr| {
                let env2 = env.insert_delta(index, srefute_to_refute(sr.clone()));
                eval_premise(&premise, &env2, w2, &supply).into_explosion()
            }))
        }
        Rule::MuTilde { index } => {
            let premise = d.premises[0].clone();
            let env = env.clone();
            let supply = supply.clone();
            let index = *index;
            Val::Refute(SemRefute::new(move |w2, v| {
                let env2 = env.insert_gamma(index, v.clone());
                eval_premise(&premise, &env2, w2, &supply).into_explosion()
            }))
        }
        Rule::Cut { .. } => {
            let f = eval_premise(&d.premises[0], env, w, supply).into_force();
            let r = eval_premise(&d.premises[1], env, w, supply).into_refute();
            Val::Explode(r.apply(w, &f))
        }
        Rule::ImpR { index } => {
            let premise = d.premises[0].clone();
            let env = env.clone();
            let supply = supply.clone();
            let index = *index;
            Val::Force(SemForce::new(move |w2, sr| match sr {
                SemSRefute::Imp(f1, r2) => {
                    let env2 = env.insert_gamma(index, f1.clone());
                    let v2 = eval_premise(&premise, &env2, w2, &supply).into_force();
                    r2.apply(w2, &v2)
                }
                other => panic!("implication evidence expected, got {other:?}"),
            }))
        }
        Rule::ImpL => {
            let p1 = d.premises[0].clone();
            let p2 = d.premises[1].clone();
            let env = env.clone();
            let supply = supply.clone();
            Val::Refute(SemRefute::new(move |w2, v| {
                let f1 = eval_premise(&p1, &env, w2, &supply).into_force();
                let r2 = eval_premise(&p2, &env, w2, &supply).into_refute();
                v.apply(w2, &SemSRefute::Imp(f1, r2))
            }))
        }
        Rule::OrR1 => {
            let premise = d.premises[0].clone();
            let env = env.clone();
            let supply = supply.clone();
            Val::Force(SemForce::new(move |w2, sr| match sr {
                SemSRefute::Or(r1, _) => {
                    let v1 = eval_premise(&premise, &env, w2, &supply).into_force();
                    r1.apply(w2, &v1)
                }
                other => panic!("disjunction evidence expected, got {other:?}"),
            }))
        }
        Rule::OrR2 => {
            let premise = d.premises[0].clone();
            let env = env.clone();
            let supply = supply.clone();
            Val::Force(SemForce::new(move |w2, sr| match sr {
                SemSRefute::Or(_, r2) => {
                    let v2 = eval_premise(&premise, &env, w2, &supply).into_force();
                    r2.apply(w2, &v2)
                }
                other => panic!("disjunction evidence expected, got {other:?}"),
            }))
        }
        Rule::OrL => {
            let p1 = d.premises[0].clone();
            let p2 = d.premises[1].clone();
            let env = env.clone();
            let supply = supply.clone();
            Val::Refute(SemRefute::new(move |w2, v| {
                let r1 = eval_premise(&p1, &env, w2, &supply).into_refute();
                let r2 = eval_premise(&p2, &env, w2, &supply).into_refute();
                v.apply(w2, &SemSRefute::Or(r1, r2))
            }))
        }
        Rule::AndR => {
            let p1 = d.premises[0].clone();
            let p2 = d.premises[1].clone();
            let env = env.clone();
            let supply = supply.clone();
            Val::Force(SemForce::new(move |w2, sr| match sr {
                SemSRefute::AndLeft(r1) => {
                    let v1 = eval_premise(&p1, &env, w2, &supply).into_force();
                    r1.apply(w2, &v1)
                }
                SemSRefute::AndRight(r2) => {
                    let v2 = eval_premise(&p2, &env, w2, &supply).into_force();
                    r2.apply(w2, &v2)
                }
                other => panic!("conjunction evidence expected, got {other:?}"),
            }))
        }
        Rule::AndL1 => {
            let premise = d.premises[0].clone();
            let env = env.clone();
            let supply = supply.clone();
            Val::Refute(SemRefute::new(move |w2, v| {
                let r1 = eval_premise(&premise, &env, w2, &supply).into_refute();
                v.apply(w2, &SemSRefute::AndLeft(r1))
            }))
        }
        Rule::AndL2 => {
            let premise = d.premises[0].clone();
            let env = env.clone();
            let supply = supply.clone();
            Val::Refute(SemRefute::new(move |w2, v| {
                let r2 = eval_premise(&premise, &env, w2, &supply).into_refute();
                v.apply(w2, &SemSRefute::AndRight(r2))
            }))
        }
        Rule::ExR { witness } => {
            let premise = d.premises[0].clone();
            let env = env.clone();
            let supply = supply.clone();
            let t = env.close_term(witness);
            Val::Force(SemForce::new(move |w2, sr| match sr {
                SemSRefute::Exists(cl) => {
                    let rt = cl(w2, &t);
                    let vt = eval_premise(&premise, &env, w2, &supply).into_force();
                    rt.apply(w2, &vt)
                }
                other => panic!("existential evidence expected, got {other:?}"),
            }))
        }
        Rule::ExL { eigen } => {
            let premise = d.premises[0].clone();
            let env = env.clone();
            let supply = supply.clone();
            let eigen = eigen.clone();
            Val::Refute(SemRefute::new(move |w2, v| {
                let premise = premise.clone();
                let env = env.clone();
                let supply = supply.clone();
                let eigen = eigen.clone();
                let cl = Arc::new(move |w3: &UWorld, t: &Term| {
                    let env2 = env.with_var(&eigen, t.clone());
                    eval_premise(&premise, &env2, w3, &supply).into_refute()
                });
                v.apply(w2, &SemSRefute::Exists(cl))
            }))
        }
        Rule::AllR { eigen } => {
            let premise = d.premises[0].clone();
            let env = env.clone();
            let supply = supply.clone();
            let eigen = eigen.clone();
            Val::Force(SemForce::new(move |w2, sr| match sr {
                SemSRefute::Forall(t, r) => {
                    let env2 = env.with_var(&eigen, t.clone());
                    let vt = eval_premise(&premise, &env2, w2, &supply).into_force();
                    r.apply(w2, &vt)
                }
                other => panic!("universal evidence expected, got {other:?}"),
            }))
        }
        Rule::AllL { witness } => {
            let premise = d.premises[0].clone();
            let env = env.clone();
            let supply = supply.clone();
            let t = env.close_term(witness);
            Val::Refute(SemRefute::new(move |w2, v| {
                let rt = eval_premise(&premise, &env, w2, &supply).into_refute();
                v.apply(w2, &SemSRefute::Forall(t.clone(), rt))
            }))
        }
    }
}

/// Semantic cut elimination: check the derivation, force every left
/// hypothesis and refute every right one by membership, evaluate, and
/// read the value back. The result proves the same sequent and is
/// normal. Free variables of the conclusion are closed with generated
/// constants for the run and renamed back at the end, so no reserved
/// constant survives in the output.
pub fn normalize(d: &Derivation) -> Result<Derivation, NbeError> {
    let conclusion = d.check()?.clone();
    let supply = FreshSupply::new();

    // close open conclusions through the association
    let mut rho = BTreeMap::new();
    let mut closing: Vec<(Ident, Ident)> = Vec::new();
    for x in conclusion.free_vars() {
        let c = supply.fresh();
        rho.insert(x.clone(), Term::Const(c.clone()));
        closing.push((x, c));
    }

    let env_rho = Env {
        gamma_vals: Vec::new(),
        delta_vals: Vec::new(),
        rho,
    };
    let gamma = conclusion.gamma().map(|f| env_rho.close(f));
    let delta = conclusion.delta().map(|f| env_rho.close(f));
    let w = UWorld::new(gamma.clone(), delta.clone());

    let mut env = env_rho;
    for g in gamma.iter() {
        env.gamma_vals.push(reflect_force(g, &w, &supply)?);
    }
    for dd in delta.iter() {
        env.delta_vals.push(reflect_refute(dd, &w, &supply)?);
    }

    let out = match eval(d, &env, &w, &supply)? {
        Val::Explode(e) => e.0,
        Val::Force(f) => {
            let focus = env.close(conclusion.focus().expect("right focus has a focus"));
            reify_force(&focus, &w, &f, &supply)
        }
        Val::Refute(r) => {
            let focus = env.close(conclusion.focus().expect("left focus has a focus"));
            reify_refute(&focus, &w, &r, &supply)
        }
    };

    // rename the closing constants back to the original variables
    let mut out = out;
    for (x, c) in closing {
        out = rename_const_to_var(&out, &c, &x).map_err(|_| NbeError::EnvMismatch {
            detail: format!("variable {x} reappeared before renaming back"),
        })?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
