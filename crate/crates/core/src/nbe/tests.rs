use rand::rngs::StdRng;
use rand::SeedableRng;

use super::*;
use crate::calculus::mk_ax_r;
use crate::corpus;
use crate::kripke::gen::{random_sentence, FormulaGenConfig};
use crate::syntax::parse_formula;

fn f(src: &str) -> Formula {
    let consts = ["c", "d"].iter().map(|s| s.to_string()).collect();
    parse_formula(src, &consts).unwrap()
}

fn world(gamma: &[&str], delta: &[&str]) -> UWorld {
    UWorld::new(
        gamma.iter().map(|s| f(s)).collect(),
        delta.iter().map(|s| f(s)).collect(),
    )
}

/// Tree equality up to renaming of bound variables and eigenvariables
/// is approximated here by sequent-wise alpha equality plus rule tags.
fn deriv_alpha_eq(a: &Derivation, b: &Derivation) -> bool {
    a.rule.tag() == b.rule.tag()
        && a.conclusion.alpha_eq(&b.conclusion)
        && a.premises.len() == b.premises.len()
        && a.premises
            .iter()
            .zip(&b.premises)
            .all(|(x, y)| deriv_alpha_eq(x, y))
}

#[test]
fn semantic_values_cross_threads() {
    fn assert_send_sync<T: Send + Sync>() {}
    assert_send_sync::<SemForce>();
    assert_send_sync::<SemRefute>();
    assert_send_sync::<SemSRefute>();
    assert_send_sync::<Explosion>();
    // distinct normalizations in parallel
    let handles: Vec<_> = corpus::cut_corpus()
        .into_iter()
        .take(4)
        .map(|(_, d)| std::thread::spawn(move || normalize(&d).unwrap()))
        .collect();
    for h in handles {
        let n = h.join().unwrap();
        assert!(n.is_normal());
    }
}

#[test]
fn fresh_supply_is_reserved_and_increasing() {
    let s = FreshSupply::new();
    assert_eq!(s.fresh(), "#0");
    assert_eq!(s.fresh(), "#1");
    let consts = std::collections::BTreeSet::new();
    assert!(parse_formula("P(#0)", &consts).is_err());
}

#[test]
fn reflect_force_builds_the_contraction_explosion() {
    let supply = FreshSupply::new();
    let w = world(&["X"], &[]);
    let v = reflect_force(&f("X"), &w, &supply).unwrap();
    // strong refutation of X at (X ; X): the axiom | X |- X
    let w2 = world(&["X"], &["X"]);
    let ax = crate::calculus::mk_ax_l(w2.gamma.clone(), w2.delta.clone(), 0);
    let expl = v.apply(&w2, &SemSRefute::Atom(ax));
    expl.0.check().unwrap();
    assert!(expl.0.is_normal());
    assert!(expl
        .0
        .conclusion
        .alpha_eq(&Sequent::plain(w2.gamma.clone(), w2.delta.clone())));
    assert_eq!(expl.0.cut_count(), 1);
    assert!(matches!(expl.0.rule, Rule::Cut { .. }));
}

#[test]
fn reflect_refute_works_at_larger_worlds() {
    let supply = FreshSupply::new();
    let w = world(&[], &["X"]);
    let r = reflect_refute(&f("X"), &w, &supply).unwrap();
    let w2 = world(&["Y"], &["X", "Z"]);
    assert!(w.leq(&w2));
    let fx = reflect_force(&f("X"), &world(&["Y", "X"], &[]), &supply);
    // forcing of X is not available here; use reflection at a world
    // that has X on the left instead
    let w3 = world(&["Y", "X"], &["X", "Z"]);
    let fx = fx.unwrap();
    let expl = r.apply(&w3, &fx);
    expl.0.check().unwrap();
    assert!(expl.0.is_normal());
    assert!(expl
        .0
        .conclusion
        .alpha_eq(&Sequent::plain(w3.gamma.clone(), w3.delta.clone())));
}

#[test]
fn reflect_requires_membership() {
    let supply = FreshSupply::new();
    assert!(matches!(
        reflect_force(&f("X"), &world(&[], &[]), &supply),
        Err(NbeError::NotInContext { .. })
    ));
    assert!(matches!(
        reflect_refute(&f("X"), &world(&["X"], &[]), &supply),
        Err(NbeError::NotInContext { .. })
    ));
}

#[test]
fn reify_force_on_top_is_the_axiom() {
    let supply = FreshSupply::new();
    let v = SemForce::new(|_, sr| panic!("must not be applied, got {sr:?}"));
    let d = reify_force(&Formula::Top, &world(&["X"], &["Y"]), &v, &supply);
    assert!(matches!(d.rule, Rule::TopR));
    d.check().unwrap();
}

#[test]
fn reify_refute_on_bot_is_the_axiom() {
    let supply = FreshSupply::new();
    let v = SemRefute::new(|_, _| panic!("must not be applied"));
    let d = reify_refute(&Formula::Bot, &world(&["X"], &["Y"]), &v, &supply);
    assert!(matches!(d.rule, Rule::BotL));
    d.check().unwrap();
}

#[test]
fn eta_law_on_an_atom() {
    let supply = FreshSupply::new();
    let w = world(&["X"], &[]);
    let v = reflect_force(&f("X"), &w, &supply).unwrap();
    let d = reify_force(&f("X"), &w, &v, &supply);
    d.check().unwrap();
    assert!(d.is_normal());
    assert!(d
        .conclusion
        .alpha_eq(&Sequent::right_focus(w.gamma.clone(), f("X"), w.delta.clone())));
    // the base case shape: Mu over the contraction explosion
    assert!(matches!(d.rule, Rule::Mu { .. }));
}

#[test]
fn eta_law_dual_on_an_atom() {
    let supply = FreshSupply::new();
    let w = world(&[], &["X"]);
    let v = reflect_refute(&f("X"), &w, &supply).unwrap();
    let d = reify_refute(&f("X"), &w, &v, &supply);
    d.check().unwrap();
    assert!(d.is_normal());
    assert!(d
        .conclusion
        .alpha_eq(&Sequent::left_focus(w.gamma.clone(), f("X"), w.delta.clone())));
    assert!(matches!(d.rule, Rule::MuTilde { .. }));
}

#[test]
fn eta_law_on_a_universal_ends_in_the_binder_rule() {
    let supply = FreshSupply::new();
    let all = f("forall x. P(x)");
    let w = UWorld::new(vec![all.clone()].into(), Context::empty());
    let v = reflect_force(&all, &w, &supply).unwrap();
    let d = reify_force(&all, &w, &v, &supply);
    d.check().unwrap();
    assert!(d.is_normal());
    assert!(matches!(d.rule, Rule::AllR { .. }));
    // no reserved constant survives
    assert!(d.all_consts().iter().all(|c| !c.starts_with('#')));
}

#[test]
fn refuted_universal_reifies_through_instantiation() {
    // evaluate | forall x. P(x) |- P(c) into a semantic refutation of
    // the universal, then read it back: the tree ends in MuTilde over a
    // contraction over the instantiation rule
    let supply = FreshSupply::new();
    let all = f("forall x. P(x)");
    let d_inst = crate::calculus::mk_all_l(
        all.clone(),
        crate::syntax::Term::Const("c".into()),
        crate::calculus::mk_ax_l(Context::empty(), vec![f("P(c)")].into(), 0),
    );
    d_inst.check().unwrap();
    let w = UWorld::new(Context::empty(), vec![f("P(c)")].into());
    let env = Env {
        gamma_vals: vec![],
        delta_vals: vec![reflect_refute(&f("P(c)"), &w, &supply).unwrap()],
        rho: Default::default(),
    };
    let r = match eval(&d_inst, &env, &w, &supply).unwrap() {
        Val::Refute(r) => r,
        _ => panic!("left focus must evaluate to a refutation"),
    };
    let d = reify_refute(&all, &w, &r, &supply);
    d.check().unwrap();
    assert!(d.is_normal());
    assert!(d
        .conclusion
        .alpha_eq(&Sequent::left_focus(Context::empty(), all, vec![f("P(c)")].into())));
    assert!(matches!(d.rule, Rule::MuTilde { .. }));
    // the instantiation rule appears inside
    fn contains_all_l(d: &Derivation) -> bool {
        matches!(d.rule, Rule::AllL { .. }) || d.premises.iter().any(contains_all_l)
    }
    assert!(contains_all_l(&d));
}

#[test]
fn normalize_cut_of_two_axioms() {
    let d = corpus::checker_corpus()
        .into_iter()
        .find(|(n, _)| n == "cut-ax-ax")
        .unwrap()
        .1;
    let n = normalize(&d).unwrap();
    n.check().unwrap();
    assert!(n.is_normal());
    assert!(n.conclusion.alpha_eq(&d.conclusion));
}

#[test]
fn normalize_eliminates_unguarded_cuts_on_the_corpus() {
    for (name, d) in corpus::cut_corpus() {
        d.check().unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(!d.is_normal(), "{name} should carry an unguarded cut");
        let n = normalize(&d).unwrap_or_else(|e| panic!("{name}: {e}"));
        n.check().unwrap_or_else(|e| panic!("{name} output: {e}"));
        assert!(n.is_normal(), "{name} output must be normal");
        assert!(
            n.conclusion.alpha_eq(&d.conclusion),
            "{name}: conclusion changed from '{}' to '{}'",
            d.conclusion,
            n.conclusion
        );
        assert!(
            n.all_consts().iter().all(|c| !c.starts_with('#')),
            "{name}: reserved constant left in output"
        );
    }
}

#[test]
fn normalize_keeps_checker_corpus_conclusions() {
    for (name, d) in corpus::checker_corpus() {
        let n = normalize(&d).unwrap_or_else(|e| panic!("{name}: {e}"));
        n.check().unwrap_or_else(|e| panic!("{name} output: {e}"));
        assert!(n.is_normal(), "{name}");
        assert!(n.conclusion.alpha_eq(&d.conclusion), "{name}");
    }
}

#[test]
fn normalize_of_axiom_is_eta_long() {
    // |- on an axiom rebuilds the focus shape, not necessarily the node
    let d = mk_ax_r(vec![f("X")].into(), 0, Context::empty());
    let n = normalize(&d).unwrap();
    n.check().unwrap();
    assert!(n.is_normal());
    assert!(n.conclusion.alpha_eq(&d.conclusion));
}

#[test]
fn normalize_is_idempotent_up_to_alpha_on_propositional_corpus() {
    for (name, d) in corpus::cut_corpus() {
        if !d.all_idents().iter().any(|i| i == "y" || i == "a") {
            // propositional entries only
            let n1 = normalize(&d).unwrap();
            let n2 = normalize(&n1).unwrap();
            assert!(deriv_alpha_eq(&n1, &n2), "{name} not idempotent");
        }
    }
}

#[test]
fn normalize_supports_open_conclusions() {
    // P(z) |- P(z) with a free variable z, closed and renamed back
    let d = mk_ax_r(vec![f("P(z)")].into(), 0, Context::empty());
    let n = normalize(&d).unwrap();
    n.check().unwrap();
    assert!(n.conclusion.alpha_eq(&d.conclusion));
    assert!(n.all_consts().iter().all(|c| !c.starts_with('#')));
}

#[test]
fn normalize_is_deterministic() {
    let d = corpus::peirce_with_cut();
    let a = normalize(&d).unwrap();
    let b = normalize(&d).unwrap();
    assert_eq!(a, b);
}

#[test]
fn normalize_rebuilds_eta_expansions() {
    // evaluating a reified value and reading it back keeps the sequent
    let mut rng = StdRng::seed_from_u64(4242);
    let cfg = FormulaGenConfig {
        max_depth: 3,
        max_quant_depth: 2,
        elements: vec!["c".into(), "d".into()],
    };
    for _ in 0..40 {
        let a = random_sentence(&mut rng, &cfg);
        let supply = FreshSupply::new();
        let w = UWorld::new(vec![a.clone()].into(), Context::empty());
        let v = reflect_force(&a, &w, &supply).unwrap();
        let d = reify_force(&a, &w, &v, &supply);
        let n = normalize(&d).unwrap_or_else(|e| panic!("{a}: {e}"));
        n.check().unwrap_or_else(|e| panic!("{a}: {e}"));
        assert!(n.is_normal());
        assert!(n.conclusion.alpha_eq(&d.conclusion), "{a}");
    }
}

#[test]
fn eta_law_over_random_sentences() {
    let mut rng = StdRng::seed_from_u64(42);
    let cfg = FormulaGenConfig {
        max_depth: 3,
        max_quant_depth: 2,
        elements: vec!["c".into(), "d".into()],
    };
    for _ in 0..60 {
        let a = random_sentence(&mut rng, &cfg);
        let supply = FreshSupply::new();
        let w = UWorld::new(vec![a.clone()].into(), Context::empty());
        let v = reflect_force(&a, &w, &supply).unwrap();
        let d = reify_force(&a, &w, &v, &supply);
        d.check()
            .unwrap_or_else(|e| panic!("eta for {a}: {e}"));
        assert!(d.is_normal(), "eta for {a}");
        assert!(d.conclusion.alpha_eq(&Sequent::right_focus(
            w.gamma.clone(),
            a.clone(),
            Context::empty()
        )));
    }
}
