//! Properties of the structural transformations over the whole corpus:
//! weakening and renaming keep the cut count and normality, contraction
//! preserves the normality verdict, and the derivation file format
//! round-trips.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use lkmt_core::calculus::{
    contract_left, parse_derivation, print_derivation, rename_const_to_var, weaken, Sequent,
};
use lkmt_core::corpus;
use lkmt_core::syntax::{Context, Formula, Term};

fn junk_formulas(rng: &mut StdRng) -> Vec<Formula> {
    let pool = [
        Formula::atom("W1"),
        Formula::atom("W2"),
        Formula::neg(Formula::atom("W1")),
        Formula::and(Formula::atom("W1"), Formula::atom("W2")),
        Formula::Atom("P".into(), vec![Term::Var("y".into())]),
        Formula::Atom("P".into(), vec![Term::Const("d".into())]),
        // free a/b force eigenvariable renames in the quantifier entries
        Formula::Atom(
            "Q".into(),
            vec![Term::Var("a".into()), Term::Var("b".into())],
        ),
    ];
    let k = rng.gen_range(0..=3);
    (0..k).map(|_| pool[rng.gen_range(0..pool.len())].clone()).collect()
}

fn widen(rng: &mut StdRng, ctx: &Context) -> Context {
    let mut out = ctx.clone();
    for f in junk_formulas(rng) {
        let at = rng.gen_range(0..=out.len());
        out = out.inserted(at, f);
    }
    out
}

#[test]
fn weakening_preserves_cuts_and_normality_on_random_widenings() {
    let mut rng = StdRng::seed_from_u64(271828);
    let all: Vec<_> = corpus::checker_corpus()
        .into_iter()
        .chain(corpus::cut_corpus())
        .collect();
    for (name, d) in &all {
        for _ in 0..4 {
            let gamma = widen(&mut rng, d.conclusion.gamma());
            let delta = widen(&mut rng, d.conclusion.delta());
            let w = weaken(d, &gamma, &delta).unwrap_or_else(|e| panic!("{name}: {e}"));
            w.check().unwrap_or_else(|e| panic!("{name} widened: {e}"));
            assert_eq!(w.cut_count(), d.cut_count(), "{name}: cut count changed");
            assert_eq!(w.is_normal(), d.is_normal(), "{name}: normality changed");
            assert!(w.conclusion.gamma().alpha_eq(&gamma));
            assert!(w.conclusion.delta().alpha_eq(&delta));
            match (&w.conclusion, &d.conclusion) {
                (
                    Sequent::LeftFocus { focus: a, .. },
                    Sequent::LeftFocus { focus: b, .. },
                )
                | (
                    Sequent::RightFocus { focus: a, .. },
                    Sequent::RightFocus { focus: b, .. },
                ) => assert!(a.alpha_eq(b), "{name}: focus changed"),
                (Sequent::Plain { .. }, Sequent::Plain { .. }) => {}
                _ => panic!("{name}: focus shape changed"),
            }
        }
    }
}

#[test]
fn renaming_constants_preserves_cuts_and_normality() {
    let all: Vec<_> = corpus::checker_corpus()
        .into_iter()
        .chain(corpus::cut_corpus())
        .collect();
    for (name, d) in &all {
        let r = rename_const_to_var(d, "c", "zz").unwrap_or_else(|e| panic!("{name}: {e}"));
        r.check().unwrap_or_else(|e| panic!("{name} renamed: {e}"));
        assert_eq!(r.cut_count(), d.cut_count(), "{name}");
        assert_eq!(r.is_normal(), d.is_normal(), "{name}");
        assert!(!r.all_consts().contains("c"), "{name}: constant still present");
    }
}

#[test]
fn contraction_preserves_the_normality_verdict() {
    let mut rng = StdRng::seed_from_u64(314159);
    let all: Vec<_> = corpus::checker_corpus()
        .into_iter()
        .chain(corpus::cut_corpus())
        .collect();
    let mut exercised = 0;
    for (name, d) in &all {
        // wrap into the required focus shape: widen the left context by
        // the focus formula, then contract
        if let Sequent::LeftFocus {
            gamma,
            focus,
            delta,
        } = &d.conclusion
        {
            let at = rng.gen_range(0..=gamma.len());
            let gamma2 = gamma.inserted(at, focus.clone());
            let prepped = weaken(d, &gamma2, delta).unwrap();
            let c = contract_left(prepped).unwrap();
            c.check().unwrap_or_else(|e| panic!("{name} contracted: {e}"));
            assert_eq!(c.is_normal(), d.is_normal(), "{name}");
            exercised += 1;
        }
    }
    assert!(exercised >= 5, "too few left-focus corpus entries");
}

#[test]
fn derivation_files_roundtrip_across_the_corpus() {
    for (name, d) in corpus::checker_corpus().iter().chain(corpus::cut_corpus().iter()) {
        let text = print_derivation(d);
        let parsed =
            parse_derivation(&text).unwrap_or_else(|e| panic!("{name}: {e}\n{text}"));
        parsed
            .check()
            .unwrap_or_else(|e| panic!("{name} reparsed: {e}"));
        assert!(parsed.conclusion.alpha_eq(&d.conclusion), "{name}");
        assert_eq!(parsed.cut_count(), d.cut_count(), "{name}");
        assert_eq!(text, print_derivation(&parsed), "{name}: print not stable");
    }
}
