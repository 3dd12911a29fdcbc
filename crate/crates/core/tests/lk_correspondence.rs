//! Erasure smoke test: dropping the focus bars of a checked derivation
//! (the focus formula rejoins its side) and ignoring the focus-move
//! nodes must leave a tree whose every inference is classically valid.
//! Checked by truth tables on the propositional corpus.

use std::collections::BTreeSet;

use lkmt_core::calculus::{Derivation, Sequent};
use lkmt_core::corpus;
use lkmt_core::syntax::Formula;

/// The focus formula joins its side of the turnstile.
fn erase(s: &Sequent) -> (Vec<Formula>, Vec<Formula>) {
    match s {
        Sequent::Plain { gamma, delta } => {
            (gamma.iter().cloned().collect(), delta.iter().cloned().collect())
        }
        Sequent::LeftFocus {
            gamma,
            focus,
            delta,
        } => {
            let mut g: Vec<Formula> = gamma.iter().cloned().collect();
            g.push(focus.clone());
            (g, delta.iter().cloned().collect())
        }
        Sequent::RightFocus {
            gamma,
            focus,
            delta,
        } => {
            let mut d = vec![focus.clone()];
            d.extend(delta.iter().cloned());
            (gamma.iter().cloned().collect(), d)
        }
    }
}

/// Nullary atoms of a propositional formula; None if the formula is not
/// propositional.
fn atoms(f: &Formula, out: &mut BTreeSet<String>) -> Option<()> {
    match f {
        Formula::Atom(p, args) if args.is_empty() => {
            out.insert(p.clone());
            Some(())
        }
        Formula::Atom(..) | Formula::Forall(..) | Formula::Exists(..) => None,
        Formula::Top | Formula::Bot => Some(()),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
            atoms(a, out)?;
            atoms(b, out)
        }
    }
}

fn eval(f: &Formula, val: &[(String, bool)]) -> bool {
    match f {
        Formula::Atom(p, _) => val.iter().find(|(q, _)| q == p).map(|(_, v)| *v).unwrap_or(false),
        Formula::Top => true,
        Formula::Bot => false,
        Formula::And(a, b) => eval(a, val) && eval(b, val),
        Formula::Or(a, b) => eval(a, val) || eval(b, val),
        Formula::Imp(a, b) => !eval(a, val) || eval(b, val),
        Formula::Forall(..) | Formula::Exists(..) => unreachable!("propositional only"),
    }
}

fn sequent_holds(gamma: &[Formula], delta: &[Formula], val: &[(String, bool)]) -> bool {
    gamma.iter().any(|g| !eval(g, val)) || delta.iter().any(|d| eval(d, val))
}

/// Every valuation satisfying all premises satisfies the conclusion.
fn node_is_valid(d: &Derivation) -> bool {
    let mut names = BTreeSet::new();
    let (cg, cd) = erase(&d.conclusion);
    for f in cg.iter().chain(cd.iter()) {
        if atoms(f, &mut names).is_none() {
            return true; // not propositional; out of scope here
        }
    }
    let premises: Vec<(Vec<Formula>, Vec<Formula>)> =
        d.premises.iter().map(|p| erase(&p.conclusion)).collect();
    for (pg, pd) in &premises {
        for f in pg.iter().chain(pd.iter()) {
            if atoms(f, &mut names).is_none() {
                return true;
            }
        }
    }
    let names: Vec<String> = names.into_iter().collect();
    let n = names.len();
    for bits in 0..(1u32 << n) {
        let val: Vec<(String, bool)> = names
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), bits & (1 << i) != 0))
            .collect();
        let premises_hold = premises.iter().all(|(pg, pd)| sequent_holds(pg, pd, &val));
        if premises_hold && !sequent_holds(&cg, &cd, &val) {
            return false;
        }
    }
    true
}

fn assert_all_nodes_valid(name: &str, d: &Derivation) {
    assert!(node_is_valid(d), "{name}: invalid inference at {}", d.conclusion);
    for p in &d.premises {
        assert_all_nodes_valid(name, p);
    }
}

#[test]
fn erased_inferences_are_classically_valid() {
    for (name, d) in corpus::checker_corpus().iter().chain(corpus::cut_corpus().iter()) {
        d.check().unwrap();
        assert_all_nodes_valid(name, d);
    }
}

#[test]
fn erasure_catches_invalid_inferences() {
    use lkmt_core::calculus::{Rule, Sequent};
    use lkmt_core::syntax::Context;
    // a made-up node claiming X |- Y from nothing
    let bad = Derivation {
        rule: Rule::TopR,
        conclusion: Sequent::right_focus(
            Context::new(vec![Formula::atom("X")]),
            Formula::atom("Y"),
            Context::empty(),
        ),
        premises: vec![],
    };
    assert!(!node_is_valid(&bad));
}
