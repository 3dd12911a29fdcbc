use rand::rngs::StdRng;
use rand::SeedableRng;

use super::gen::{random_model, random_sentence, FormulaGenConfig, ModelGenConfig};
use super::*;
use crate::corpus;
use crate::syntax::parse_formula;

fn f(src: &str) -> Formula {
    let elems = ["e0".to_string()].into_iter().collect();
    parse_formula(src, &elems).unwrap()
}

#[test]
fn validate_accepts_single_world() {
    let m = FiniteModel::new(
        vec!["w".into()],
        &[("w".into(), "w".into())],
        vec![("w".into(), vec![])],
        vec![],
        vec![],
    );
    assert!(m.is_ok());
}

#[test]
fn validate_rejects_non_monotone_atom() {
    // refuted below but not above
    let err = FiniteModel::new(
        vec!["a".into(), "b".into()],
        &[
            ("a".into(), "a".into()),
            ("b".into(), "b".into()),
            ("a".into(), "b".into()),
        ],
        vec![("a".into(), vec![]), ("b".into(), vec![])],
        vec![("a".into(), ("X".into(), vec![]))],
        vec![],
    )
    .unwrap_err();
    assert!(matches!(err, ModelViolation::AtomNotMonotone { .. }));
}

#[test]
fn validate_rejects_non_upward_closed_exploding() {
    let err = FiniteModel::new(
        vec!["a".into(), "b".into()],
        &[
            ("a".into(), "a".into()),
            ("b".into(), "b".into()),
            ("a".into(), "b".into()),
        ],
        vec![("a".into(), vec![]), ("b".into(), vec![])],
        vec![],
        vec!["a".into()],
    )
    .unwrap_err();
    assert!(matches!(err, ModelViolation::ExplodingNotUpwardClosed { .. }));
}

#[test]
fn validate_rejects_cycles() {
    let err = FiniteModel::new(
        vec!["a".into(), "b".into()],
        &[
            ("a".into(), "a".into()),
            ("b".into(), "b".into()),
            ("a".into(), "b".into()),
            ("b".into(), "a".into()),
        ],
        vec![("a".into(), vec![]), ("b".into(), vec![])],
        vec![],
        vec![],
    )
    .unwrap_err();
    assert!(matches!(err, ModelViolation::NotPoset(_)));
}

#[test]
fn validate_rejects_atom_args_outside_dom() {
    let err = FiniteModel::new(
        vec!["a".into()],
        &[("a".into(), "a".into())],
        vec![("a".into(), vec![])],
        vec![("a".into(), ("P".into(), vec!["e9".into()]))],
        vec![],
    )
    .unwrap_err();
    assert!(matches!(err, ModelViolation::AtomArgsOutsideDom { .. }));
}

#[test]
fn bot_and_top_srefutation() {
    let m = corpus::dp_model();
    let ev = Evaluator::new(&m);
    assert!(ev.srefutes("w0", &Formula::Bot).unwrap());
    assert!(!ev.srefutes("w0", &Formula::Top).unwrap());
}

#[test]
fn dp_model_atom_values() {
    let m = corpus::dp_model();
    let ev = Evaluator::new(&m);
    // the atom table marks X only at w1
    assert!(!ev.srefutes("w0", &f("X")).unwrap());
    assert!(ev.srefutes("w1", &f("X")).unwrap());
    assert!(!ev.srefutes("w2", &f("X")).unwrap());
}

#[test]
fn dp_model_witnesses_disjunction_property_failure() {
    let m = corpus::dp_model();
    let ev = Evaluator::new(&m);
    assert!(ev.forces("w0", &f("X | ~X")).unwrap());
    assert!(!ev.forces("w0", &f("X")).unwrap());
    assert!(!ev.forces("w0", &f("~X")).unwrap());
}

#[test]
fn exploding_world_forces_bot_and_refutes_top() {
    let m = FiniteModel::new(
        vec!["w".into()],
        &[("w".into(), "w".into())],
        vec![("w".into(), vec![])],
        vec![],
        vec!["w".into()],
    )
    .unwrap();
    let ev = Evaluator::new(&m);
    assert!(ev.forces("w", &Formula::Bot).unwrap());
    assert!(ev.refutes("w", &Formula::Top).unwrap());
}

#[test]
fn exploding_world_iforces_bot() {
    let m = FiniteModel::new(
        vec!["w".into()],
        &[("w".into(), "w".into())],
        vec![("w".into(), vec![])],
        vec![],
        vec!["w".into()],
    )
    .unwrap();
    let ev = Evaluator::new(&m);
    assert!(ev.forces_intuitionistic("w", &Formula::Bot).unwrap());
    let m2 = corpus::dp_model();
    let ev2 = Evaluator::new(&m2);
    assert!(!ev2.forces_intuitionistic("w0", &Formula::Bot).unwrap());
}

#[test]
fn vacuous_forcing_on_a_silent_world() {
    // single non-exploding world with X never atomically refuted
    let m = FiniteModel::new(
        vec!["w".into()],
        &[("w".into(), "w".into())],
        vec![("w".into(), vec![])],
        vec![],
        vec![],
    )
    .unwrap();
    let ev = Evaluator::new(&m);
    assert!(ev.forces("w", &f("X")).unwrap());
}

#[test]
fn intuitionistic_forcing_examples() {
    let m = corpus::dp_model();
    let ev = Evaluator::new(&m);
    // atoms read through non-strong forcing
    for w in ["w0", "w1", "w2"] {
        assert_eq!(
            ev.forces_intuitionistic(w, &f("X")).unwrap(),
            ev.forces(w, &f("X")).unwrap()
        );
    }
    // the translated disjunction matches classical forcing
    let em = f("X | ~X");
    assert!(ev
        .forces_intuitionistic("w0", &em.dn_translate())
        .unwrap());
    // but the untranslated one is an intuitionistic failure at the root
    assert!(!ev.forces_intuitionistic("w0", &em).unwrap());
}

#[test]
fn eval_errors_are_named() {
    let m = corpus::dp_model();
    let ev = Evaluator::new(&m);
    assert!(matches!(
        ev.forces("nowhere", &f("X")),
        Err(EvalError::UnknownWorld(_))
    ));
    assert!(matches!(
        ev.forces("w0", &f("P(x)")),
        Err(EvalError::NotASentence { .. })
    ));
    let elems = ["e7".to_string()].into_iter().collect();
    let off = parse_formula("P(e7)", &elems).unwrap();
    assert!(matches!(
        ev.forces("w0", &off),
        Err(EvalError::ElementOutsideDomain { .. })
    ));
}

#[test]
fn audit_passes_on_dp_model() {
    let m = corpus::dp_model();
    let formulas = [
        f("X"),
        f("~X"),
        f("X | ~X"),
        f("X & ~X"),
        f("X -> X"),
        f("exists v. P(v)"),
        f("forall v. P(v)"),
        Formula::Top,
        Formula::Bot,
    ];
    let report = audit(&m, &formulas);
    assert!(report.passed(), "{report}");
    assert!(report.total_checked() > 0);
}

#[test]
fn audit_passes_on_random_models() {
    let mut rng = StdRng::seed_from_u64(7);
    let mcfg = ModelGenConfig::default();
    for _ in 0..40 {
        let m = random_model(&mut rng, &mcfg);
        m.validate().unwrap();
        let elements: Vec<String> = m.all_elements().into_iter().collect();
        let fcfg = FormulaGenConfig::ground(3, elements);
        let formulas: Vec<Formula> =
            (0..15).map(|_| random_sentence(&mut rng, &fcfg)).collect();
        let report = audit(&m, &formulas);
        assert!(report.passed(), "{report}");
    }
}

#[test]
fn soundness_check_on_corpus() {
    let mut rng = StdRng::seed_from_u64(11);
    let mcfg = ModelGenConfig::default();
    let corpus = corpus::soundness_corpus();
    assert!(corpus.len() >= 20);
    for _ in 0..5 {
        let m = random_model(&mut rng, &mcfg);
        for (name, d) in &corpus {
            d.check().unwrap();
            let report = soundness_check(&m, d);
            assert!(report.passed(), "{name}: {report}");
        }
    }
}

#[test]
fn soundness_check_catches_invalid_sequents() {
    use crate::calculus::{mk_ax_r, Derivation, Rule, Sequent};
    use crate::syntax::Context;
    // claim X |- Y | out of thin air; some model must refuse it
    let bogus = Derivation::new(
        Rule::AxR { index: 0 },
        Sequent::right_focus(
            Context::new(vec![f("X")]),
            f("Y"),
            Context::empty(),
        ),
        vec![],
    );
    let _ = mk_ax_r; // the honest constructor is not used here on purpose
    let mut rng = StdRng::seed_from_u64(3);
    let mut failed_somewhere = false;
    for _ in 0..60 {
        let m = random_model(&mut rng, &ModelGenConfig::default());
        if !soundness_check(&m, &bogus).passed() {
            failed_somewhere = true;
            break;
        }
    }
    assert!(failed_somewhere, "X |- Y | should fail in some model");
}

#[test]
fn model_file_roundtrip() {
    let m = corpus::dp_model();
    let text = print_model(&m);
    let (parsed, added) = parse_model(&text).unwrap();
    assert_eq!(parsed, m);
    // reflexive pairs are dropped by the printer, restored by closure
    assert_eq!(added.len(), 3);
    assert_eq!(text, print_model(&parsed));
}

#[test]
fn model_files_roundtrip_over_random_models() {
    let mut rng = StdRng::seed_from_u64(99);
    for _ in 0..60 {
        let m = random_model(&mut rng, &ModelGenConfig::default());
        let text = print_model(&m);
        let (parsed, _) = parse_model(&text).unwrap_or_else(|e| panic!("{e}\n{text}"));
        assert_eq!(parsed, m, "roundtrip drifted for\n{text}");
    }
}

#[test]
fn model_file_reports_errors() {
    assert!(matches!(
        parse_model("worlds: w\nleq: (w, v)\ndom: w: []\n"),
        Err(file::ModelParseError::Invalid(ModelViolation::UnknownWorld(_)))
    ));
    assert!(matches!(
        parse_model("nonsense: 1\n"),
        Err(file::ModelParseError::Syntax { .. })
    ));
}
