//! Shipped fixtures and hand-written derivation corpora.
//!
//! Three families are provided: a checker corpus exercising every rule
//! at least twice (including both contraction macros), a mutant corpus
//! of deliberately broken derivations annotated with the violation class
//! the checker must report, and a cut corpus of derivations whose
//! distinguishing feature is at least one cut that no axiom guards.
//! The disjunction-property counter-model and the Peirce proofs shipped
//! by the CLI `fixtures` command also live here.

use std::collections::BTreeSet;

use crate::calculus::{
    contract_left, contract_right, mk_all_l, mk_all_r, mk_and_l1, mk_and_l2, mk_and_r, mk_ax_l,
    mk_ax_r, mk_bot_l, mk_cut, mk_ex_l, mk_ex_r, mk_imp_l, mk_imp_r, mk_mu, mk_mu_tilde,
    mk_or_l, mk_or_r1, mk_or_r2, mk_top_r, Derivation, Violation,
};
use crate::kripke::FiniteModel;
use crate::syntax::{parse_formula, Context, Formula, Ident, Term};

fn consts() -> BTreeSet<Ident> {
    ["c", "d"].iter().map(|s| s.to_string()).collect()
}

fn f(src: &str) -> Formula {
    parse_formula(src, &consts()).unwrap_or_else(|e| panic!("corpus formula '{src}': {e}"))
}

fn ctx(srcs: &[&str]) -> Context {
    srcs.iter().map(|s| f(s)).collect()
}

fn cs(name: &str) -> Term {
    Term::Const(name.into())
}

fn vr(name: &str) -> Term {
    Term::Var(name.into())
}

/// `((X -> Y) -> X) -> X`.
pub fn peirce_formula() -> Formula {
    f("((X -> Y) -> X) -> X")
}

/// Cut-free proof of Peirce's law in right focus, with the right
/// context widened by `delta`. All three cuts are contraction macros.
fn peirce_proof(delta: &Context) -> Derivation {
    let a = f("(X -> Y) -> X");
    let ga = Context::new(vec![a.clone()]);
    let gax = Context::new(vec![a.clone(), f("X")]);
    let dyx = delta.inserted(0, f("X")).inserted(0, f("Y"));
    // X, (X -> Y) -> X, and two axioms fighting over the same X
    let inner = mk_cut(f("X"), mk_ax_r(gax.clone(), 1, dyx.clone()), mk_ax_l(gax, dyx, 1));
    let d_xy = mk_imp_r(1, mk_mu(0, inner));
    let dx = delta.inserted(0, f("X"));
    let d_impl = mk_imp_l(d_xy, mk_ax_l(ga.clone(), dx, 0));
    let d_cut = mk_cut(a, mk_ax_r(ga, 0, delta.inserted(0, f("X"))), d_impl);
    mk_imp_r(0, mk_mu(0, d_cut))
}

/// `|- ((X -> Y) -> X) -> X |` without cuts beyond contractions.
pub fn peirce_cut_free() -> Derivation {
    peirce_proof(&Context::empty())
}

/// The same law proved through an unguarded interior cut on the Peirce
/// formula itself.
pub fn peirce_with_cut() -> Derivation {
    let p = peirce_formula();
    let cp = Context::new(vec![p.clone()]);
    let left = peirce_proof(&cp);
    let guarded = mk_cut(
        p.clone(),
        mk_ax_r(cp.clone(), 0, cp.clone()),
        mk_ax_l(cp.clone(), cp.clone(), 0),
    );
    let right = mk_mu_tilde(0, guarded);
    mk_mu(0, mk_cut(p, left, right))
}

/// The left-contraction macro instance proving `X |- X`.
pub fn contraction_cut() -> Derivation {
    contract_left(mk_ax_l(ctx(&["X"]), ctx(&["X"]), 0)).unwrap()
}

/// The three-world branching model witnessing the failure of the
/// disjunction property: `X | ~X` is forced at the root while neither
/// disjunct is.
pub fn dp_model() -> FiniteModel {
    let names = vec!["w0".to_string(), "w1".to_string(), "w2".to_string()];
    let leq = [
        ("w0".to_string(), "w0".to_string()),
        ("w1".to_string(), "w1".to_string()),
        ("w2".to_string(), "w2".to_string()),
        ("w0".to_string(), "w1".to_string()),
        ("w0".to_string(), "w2".to_string()),
    ];
    let dom = names
        .iter()
        .map(|w| (w.clone(), vec!["e0".to_string()]))
        .collect();
    let srefutes = vec![("w1".to_string(), ("X".to_string(), vec![]))];
    FiniteModel::new(names, &leq, dom, srefutes, vec![]).expect("dp model is valid")
}

/// Excluded middle `|- X | ~X |`, cut-free.
fn excluded_middle() -> Derivation {
    let em = f("X | ~X");
    let gx = ctx(&["X"]);
    let d_bot_em = Context::new(vec![Formula::Bot, em.clone()]);
    let j = mk_ax_r(gx, 0, d_bot_em);
    let i = mk_or_r1(f("~X"), j);
    let h = contract_right(i).unwrap();
    let g = mk_mu(0, h);
    let under = mk_imp_r(0, g);
    let e = mk_or_r2(f("X"), under);
    let d2 = contract_right(e).unwrap();
    mk_mu(0, d2)
}

/// `| exists x. P(x) |- exists x. P(x)` through the eigenvariable rule.
fn exists_identity() -> Derivation {
    let ex = f("exists x. P(x)");
    let cex = Context::new(vec![ex.clone()]);
    let inner = mk_ex_r(ex.clone(), vr("y"), mk_ax_r(ctx(&["P(y)"]), 0, cex));
    let plain = contract_right(inner).unwrap();
    mk_ex_l(ex, "y".into(), mk_mu_tilde(0, plain))
}

/// `forall x. P(x) |- forall x. P(x) |` through the eigenvariable rule.
fn forall_identity() -> Derivation {
    let all = f("forall x. P(x)");
    let call = Context::new(vec![all.clone()]);
    let axl = mk_ax_l(call.clone(), ctx(&["P(y)"]), 0);
    let all_l = mk_all_l(all.clone(), vr("y"), axl);
    let plain = contract_left(all_l).unwrap();
    mk_all_r(all, "y".into(), mk_mu(0, plain))
}

/// `| exists x. forall y. Q(x, y) |- forall y. exists x. Q(x, y)`.
fn quantifier_swap() -> Derivation {
    let exall = f("exists x. forall y. Q(x, y)");
    let allex = f("forall y. exists x. Q(x, y)");
    let all_a = f("forall y. Q(a, y)");
    let ga = Context::new(vec![all_a.clone()]);
    let d_q = Context::new(vec![f("Q(a, b)"), allex.clone()]);
    let axl = mk_ax_l(ga.clone(), d_q, 0);
    let all_l = mk_all_l(all_a, vr("b"), axl);
    let plain = contract_left(all_l).unwrap();
    let mu = mk_mu(0, plain);
    let exr = mk_ex_r(f("exists x. Q(x, b)"), vr("a"), mu);
    let allr = mk_all_r(allex, "b".into(), exr);
    let cr = contract_right(allr).unwrap();
    mk_ex_l(exall, "a".into(), mk_mu_tilde(0, cr))
}

/// `| X | Y |- Y | X`.
fn or_commute() -> Derivation {
    let yx = f("Y | X");
    let cyx = Context::new(vec![yx.clone()]);
    let p1 = {
        let d = mk_or_r2(f("Y"), mk_ax_r(ctx(&["X"]), 0, cyx.clone()));
        mk_mu_tilde(0, contract_right(d).unwrap())
    };
    let p2 = {
        let d = mk_or_r1(f("X"), mk_ax_r(ctx(&["Y"]), 0, cyx));
        mk_mu_tilde(0, contract_right(d).unwrap())
    };
    mk_or_l(p1, p2)
}

/// `| X & Y |- Y & X`.
fn and_commute() -> Derivation {
    let xy = f("X & Y");
    let cxy = Context::new(vec![xy.clone()]);
    let p1 = {
        let d_side = Context::new(vec![f("Y"), f("Y & X")]);
        let axl = mk_ax_l(cxy.clone(), d_side, 0);
        let al = mk_and_l2(f("X"), axl);
        mk_mu(0, contract_left(al).unwrap())
    };
    let p2 = {
        let d_side = Context::new(vec![f("X"), f("Y & X")]);
        let axl = mk_ax_l(cxy.clone(), d_side, 0);
        let al = mk_and_l1(f("Y"), axl);
        mk_mu(0, contract_left(al).unwrap())
    };
    let ar = mk_and_r(p1, p2);
    mk_mu_tilde(0, contract_right(ar).unwrap())
}

/// `X |- ~~X |`.
fn double_negation_intro() -> Derivation {
    let g0 = ctx(&["X", "~X"]);
    let il = mk_imp_l(
        mk_ax_r(g0.clone(), 0, ctx(&["_|_"])),
        mk_bot_l(g0, ctx(&["_|_"])),
    );
    let cl = contract_left(il).unwrap();
    mk_imp_r(1, mk_mu(0, cl))
}

/// Every rule of the calculus at least twice, plus both contraction
/// macros. All entries check and all are normal.
pub fn checker_corpus() -> Vec<(String, Derivation)> {
    let e = Context::empty;
    let mut items: Vec<(&str, Derivation)> = vec![
        ("axr-identity", mk_ax_r(ctx(&["A"]), 0, e())),
        ("axl-identity", mk_ax_l(e(), ctx(&["A"]), 0)),
        ("contr-left", contraction_cut()),
        (
            "contr-right",
            contract_right(mk_ax_r(ctx(&["X"]), 0, ctx(&["X"]))).unwrap(),
        ),
        ("imp-r-identity", mk_imp_r(0, mk_ax_r(ctx(&["X"]), 0, e()))),
        (
            "imp-l-modus",
            mk_imp_l(mk_ax_r(ctx(&["X"]), 0, ctx(&["Y"])), mk_ax_l(ctx(&["X"]), ctx(&["Y"]), 0)),
        ),
        ("peirce", peirce_cut_free()),
        ("excluded-middle", excluded_middle()),
        ("or-r1", mk_or_r1(f("Y"), mk_ax_r(ctx(&["X"]), 0, e()))),
        ("or-r2", mk_or_r2(f("X"), mk_ax_r(ctx(&["Y"]), 0, e()))),
        (
            "or-l",
            mk_or_l(mk_ax_l(e(), ctx(&["X", "Y"]), 0), mk_ax_l(e(), ctx(&["X", "Y"]), 1)),
        ),
        (
            "and-r",
            mk_and_r(mk_ax_r(ctx(&["X", "Y"]), 0, e()), mk_ax_r(ctx(&["X", "Y"]), 1, e())),
        ),
        ("and-l1", mk_and_l1(f("Y"), mk_ax_l(e(), ctx(&["X"]), 0))),
        ("and-l2", mk_and_l2(f("X"), mk_ax_l(e(), ctx(&["Y"]), 0))),
        ("bot-l", mk_bot_l(e(), e())),
        ("top-r", mk_top_r(e(), e())),
        (
            "ex-r-witness",
            mk_ex_r(f("exists x. P(x)"), cs("c"), mk_ax_r(ctx(&["P(c)"]), 0, e())),
        ),
        ("ex-l-identity", exists_identity()),
        (
            "all-l-witness",
            mk_all_l(f("forall x. P(x)"), cs("c"), mk_ax_l(e(), ctx(&["P(c)"]), 0)),
        ),
        ("all-r-identity", forall_identity()),
        (
            "mu-refocus",
            mk_mu(0, contract_right(mk_ax_r(ctx(&["X"]), 0, ctx(&["X"]))).unwrap()),
        ),
        (
            "mu-tilde-refocus",
            mk_mu_tilde(0, contract_left(mk_ax_l(ctx(&["X"]), ctx(&["X"]), 0)).unwrap()),
        ),
        (
            "neg-l",
            mk_imp_l(mk_ax_r(ctx(&["X"]), 0, e()), mk_bot_l(ctx(&["X"]), e())),
        ),
        ("neg-r", {
            let ar = mk_ax_r(ctx(&["X"]), 0, ctx(&["_|_", "X"]));
            mk_imp_r(0, mk_mu(0, contract_right(ar).unwrap()))
        }),
        ("dneg-intro", double_negation_intro()),
        ("weakened-axr", mk_ax_r(ctx(&["A", "B"]), 0, ctx(&["C"]))),
        (
            "or-over-exists",
            mk_or_r1(
                f("Y"),
                mk_ex_r(f("exists x. P(x)"), cs("c"), mk_ax_r(ctx(&["P(c)"]), 0, e())),
            ),
        ),
        (
            "all-l-fn-witness",
            mk_all_l(
                f("forall x. P(x)"),
                Term::App("g".into(), vec![cs("c")]),
                mk_ax_l(e(), ctx(&["P(g(c))"]), 0),
            ),
        ),
        (
            "and-r-contract",
            contract_right(mk_and_r(
                mk_ax_r(ctx(&["X", "Y"]), 0, ctx(&["X & Y"])),
                mk_ax_r(ctx(&["X", "Y"]), 1, ctx(&["X & Y"])),
            ))
            .unwrap(),
        ),
        (
            "cut-ax-ax",
            mk_cut(
                f("X"),
                mk_ax_r(ctx(&["X"]), 0, ctx(&["X"])),
                mk_ax_l(ctx(&["X"]), ctx(&["X"]), 0),
            ),
        ),
        ("quantifier-swap", quantifier_swap()),
        ("or-commute", or_commute()),
        ("and-commute", and_commute()),
        ("top-r-wide", mk_top_r(ctx(&["X"]), ctx(&["Y"]))),
        (
            "bot-l-wide",
            mk_bot_l(ctx(&["X"]), ctx(&["Y"])),
        ),
    ];
    items
        .drain(..)
        .map(|(n, d)| (n.to_string(), d))
        .collect()
}

/// Deliberately broken derivations with the violation class the checker
/// must report for each.
pub fn mutant_corpus() -> Vec<(String, Derivation, Violation)> {
    use crate::calculus::{Rule, Sequent};
    let e = Context::empty;
    let plain_xx = contraction_cut(); // checks: X |- X
    let mut items: Vec<(&str, Derivation, Violation)> = vec![
        (
            "axr-wrong-focus",
            Derivation::new(
                Rule::AxR { index: 0 },
                Sequent::right_focus(ctx(&["X"]), f("Y"), e()),
                vec![],
            ),
            Violation::WrongActiveFormula,
        ),
        (
            "mu-wrong-active",
            Derivation::new(
                Rule::Mu { index: 0 },
                Sequent::right_focus(ctx(&["X"]), f("Y"), e()),
                vec![plain_xx.clone()],
            ),
            Violation::WrongActiveFormula,
        ),
        (
            "mu-context-drift",
            Derivation::new(
                Rule::Mu { index: 0 },
                Sequent::right_focus(e(), f("X"), e()),
                vec![plain_xx.clone()],
            ),
            Violation::ContextMismatch,
        ),
        (
            "impl-context-drift",
            Derivation::new(
                Rule::ImpL,
                Sequent::left_focus(ctx(&["X"]), f("X -> Y"), ctx(&["Y"])),
                vec![mk_ax_r(ctx(&["X"]), 0, ctx(&["Z"])), mk_ax_l(ctx(&["X"]), ctx(&["Y"]), 0)],
            ),
            Violation::ContextMismatch,
        ),
        (
            "exl-eigen-in-gamma",
            Derivation::new(
                Rule::ExL { eigen: "x".into() },
                Sequent::left_focus(ctx(&["P(x)"]), f("exists y. Q(y, y)"), e()),
                vec![mk_ax_l(ctx(&["P(x)"]), ctx(&["Q(x, x)"]), 0)],
            ),
            Violation::EigenvarNotFresh,
        ),
        (
            "allr-eigen-in-delta",
            Derivation::new(
                Rule::AllR { eigen: "x".into() },
                Sequent::right_focus(e(), f("forall y. P(y)"), ctx(&["P(x)"])),
                vec![mk_ax_r(ctx(&["P(x)"]), 0, e())],
            ),
            Violation::EigenvarNotFresh,
        ),
        (
            "cut-formula-mismatch",
            Derivation::new(
                Rule::Cut { formula: f("X") },
                Sequent::plain(ctx(&["X"]), ctx(&["X"])),
                vec![mk_ax_r(ctx(&["X"]), 0, ctx(&["X"])), mk_ax_l(ctx(&["X"]), ctx(&["Y"]), 0)],
            ),
            Violation::WrongActiveFormula,
        ),
        (
            "botl-wrong-focus",
            Derivation::new(Rule::BotL, Sequent::left_focus(e(), f("X"), e()), vec![]),
            Violation::WrongActiveFormula,
        ),
        (
            "cut-missing-premise",
            Derivation::new(
                Rule::Cut { formula: f("X") },
                Sequent::plain(ctx(&["X"]), ctx(&["X"])),
                vec![mk_ax_r(ctx(&["X"]), 0, ctx(&["X"]))],
            ),
            Violation::ShapeMismatch,
        ),
        (
            "impr-premise-wrong-kind",
            Derivation::new(
                Rule::ImpR { index: 0 },
                Sequent::right_focus(e(), f("X -> X"), e()),
                vec![mk_ax_l(ctx(&["X"]), ctx(&["X"]), 0)],
            ),
            Violation::ShapeMismatch,
        ),
        (
            "andr-swapped-premises",
            Derivation::new(
                Rule::AndR,
                Sequent::right_focus(ctx(&["X", "Y"]), f("X & Y"), e()),
                vec![mk_ax_r(ctx(&["X", "Y"]), 1, e()), mk_ax_r(ctx(&["X", "Y"]), 0, e())],
            ),
            Violation::WrongActiveFormula,
        ),
        (
            "orr1-not-a-disjunction",
            Derivation::new(
                Rule::OrR1,
                Sequent::right_focus(ctx(&["X"]), f("X"), e()),
                vec![mk_ax_r(ctx(&["X"]), 0, e())],
            ),
            Violation::WrongActiveFormula,
        ),
        (
            "axr-on-plain-sequent",
            Derivation::new(Rule::AxR { index: 0 }, Sequent::plain(ctx(&["X"]), ctx(&["X"])), vec![]),
            Violation::ShapeMismatch,
        ),
    ];
    items
        .drain(..)
        .map(|(n, d, v)| (n.to_string(), d, v))
        .collect()
}

/// Derivations containing at least one cut that no axiom guards. All
/// check; none is normal; `normalize` must succeed on each.
pub fn cut_corpus() -> Vec<(String, Derivation)> {
    let cut_and_detour = mk_cut(
        f("X & X"),
        mk_and_r(mk_ax_r(ctx(&["X"]), 0, ctx(&["X"])), mk_ax_r(ctx(&["X"]), 0, ctx(&["X"]))),
        mk_and_l1(f("X"), mk_ax_l(ctx(&["X"]), ctx(&["X"]), 0)),
    );
    let cut_ex_detour = {
        let ex = f("exists x. P(x)");
        let cex = Context::new(vec![ex.clone()]);
        let left = mk_ex_r(ex.clone(), cs("c"), mk_ax_r(ctx(&["P(c)"]), 0, cex.clone()));
        let g2 = ctx(&["P(c)", "P(y)"]);
        let inner = mk_cut(
            ex.clone(),
            mk_ex_r(ex.clone(), vr("y"), mk_ax_r(g2.clone(), 1, cex.clone())),
            mk_ax_l(g2, cex, 0),
        );
        let right = mk_ex_l(ex.clone(), "y".into(), mk_mu_tilde(1, inner));
        mk_cut(ex, left, right)
    };
    let mut items: Vec<(&str, Derivation)> = vec![
        ("cut-and-detour", cut_and_detour.clone()),
        (
            "cut-or-detour",
            mk_cut(
                f("X | X"),
                mk_or_r1(f("X"), mk_ax_r(ctx(&["X"]), 0, ctx(&["X"]))),
                mk_or_l(mk_ax_l(ctx(&["X"]), ctx(&["X"]), 0), mk_ax_l(ctx(&["X"]), ctx(&["X"]), 0)),
            ),
        ),
        (
            "cut-imp-detour",
            mk_cut(
                f("X -> X"),
                mk_imp_r(1, mk_ax_r(ctx(&["X", "X"]), 1, ctx(&["X"]))),
                mk_imp_l(mk_ax_r(ctx(&["X"]), 0, ctx(&["X"])), mk_ax_l(ctx(&["X"]), ctx(&["X"]), 0)),
            ),
        ),
        ("peirce-with-cut", peirce_with_cut()),
        ("cut-modus-ponens", {
            let g = ctx(&["X", "X -> Y"]);
            let dyy = ctx(&["Y", "Y"]);
            let inner_l = mk_cut(
                f("X -> Y"),
                mk_ax_r(g.clone(), 1, dyy.clone()),
                mk_imp_l(mk_ax_r(g.clone(), 0, dyy.clone()), mk_ax_l(g.clone(), dyy, 0)),
            );
            let left = mk_mu(0, inner_l);
            let gy = ctx(&["X", "X -> Y", "Y"]);
            let inner_r = mk_cut(f("Y"), mk_ax_r(gy.clone(), 2, ctx(&["Y"])), mk_ax_l(gy, ctx(&["Y"]), 0));
            let right = mk_mu_tilde(2, inner_r);
            mk_cut(f("Y"), left, right)
        }),
        ("cut-dneg-elim", {
            let nn = f("~~X");
            let g1 = ctx(&["~~X", "X"]);
            let dbx = ctx(&["_|_", "X"]);
            let left = mk_imp_r(
                1,
                mk_mu(0, mk_cut(f("X"), mk_ax_r(g1.clone(), 1, dbx.clone()), mk_ax_l(g1, dbx, 1))),
            );
            let g2 = ctx(&["~~X", "~X"]);
            let il = mk_imp_l(mk_ax_r(g2.clone(), 1, ctx(&["X"])), mk_bot_l(g2.clone(), ctx(&["X"])));
            let right = mk_mu_tilde(
                1,
                mk_cut(nn, mk_ax_r(g2, 0, ctx(&["X"])), il),
            );
            mk_cut(f("~X"), left, right)
        }),
        ("cut-exists-detour", cut_ex_detour.clone()),
        ("cut-forall-detour", {
            let all = f("forall x. P(x)");
            let call = Context::new(vec![all.clone()]);
            let dyc = ctx(&["P(y)", "P(c)"]);
            let inner = mk_cut(
                all.clone(),
                mk_ax_r(call.clone(), 0, dyc.clone()),
                mk_all_l(all.clone(), vr("y"), mk_ax_l(call.clone(), dyc, 0)),
            );
            let left = mk_all_r(all.clone(), "y".into(), mk_mu(0, inner));
            let right = mk_all_l(all.clone(), cs("c"), mk_ax_l(call, ctx(&["P(c)"]), 0));
            mk_cut(all, left, right)
        }),
        (
            "cut-top-detour",
            mk_cut(
                f("X & T"),
                mk_and_r(mk_ax_r(ctx(&["X"]), 0, ctx(&["X"])), mk_top_r(ctx(&["X"]), ctx(&["X"]))),
                mk_and_l1(Formula::Top, mk_ax_l(ctx(&["X"]), ctx(&["X"]), 0)),
            ),
        ),
        (
            "cut-bot-detour",
            mk_cut(
                f("_|_ | X"),
                mk_or_r2(Formula::Bot, mk_ax_r(ctx(&["X"]), 0, ctx(&["X"]))),
                mk_or_l(mk_bot_l(ctx(&["X"]), ctx(&["X"])), mk_ax_l(ctx(&["X"]), ctx(&["X"]), 0)),
            ),
        ),
        (
            "interior-cut-under-imp",
            mk_imp_r(0, mk_mu(0, cut_and_detour)),
        ),
        ("interior-cut-under-mu", mk_mu(0, cut_ex_detour)),
    ];
    items
        .drain(..)
        .map(|(n, d)| (n.to_string(), d))
        .collect()
}

/// Twenty checked derivations over at most two distinct constants, for
/// the per-model semantic cross-check.
pub fn soundness_corpus() -> Vec<(String, Derivation)> {
    checker_corpus()
        .into_iter()
        .filter(|(_, d)| d.all_consts().len() <= 2)
        .take(20)
        .collect()
}
