//! Acceptance suite: one test per criterion, each printing a PASS line
//! with its elapsed time. Run with `cargo test -p lkmt-cli --test
//! acceptance -- --nocapture` to see the lines.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::SeedableRng;

use lkmt_core::calculus::{Derivation, Rule};
use lkmt_core::corpus;
use lkmt_core::kripke::gen::{random_model, random_sentence, FormulaGenConfig, ModelGenConfig};
use lkmt_core::kripke::{audit, soundness_check, Evaluator};
use lkmt_core::nbe::{normalize, reflect_force, reify_force, FreshSupply, UWorld};
use lkmt_core::syntax::{Context, Formula};

/// Seed shared by criteria 4, 5 and 8 so they examine the same models.
const MODEL_SAMPLE_SEED: u64 = 2024;

fn models_for_criterion_4() -> Vec<lkmt_core::kripke::FiniteModel> {
    let mut rng = StdRng::seed_from_u64(MODEL_SAMPLE_SEED);
    let cfg = ModelGenConfig::default();
    (0..200).map(|_| random_model(&mut rng, &cfg)).collect()
}

fn formulas_for(m: &lkmt_core::kripke::FiniteModel, rng: &mut StdRng) -> Vec<Formula> {
    let cfg = FormulaGenConfig::ground(3, m.all_elements().into_iter().collect());
    (0..20).map(|_| random_sentence(rng, &cfg)).collect()
}

fn pass(criterion: u32, name: &str, start: Instant, budget: Duration) {
    let elapsed = start.elapsed();
    assert!(
        elapsed < budget,
        "criterion {criterion} exceeded its {budget:?} budget: {elapsed:?}"
    );
    println!("criterion {criterion} ({name}): PASS in {elapsed:?}");
}

fn rule_tags(d: &Derivation, counts: &mut BTreeMap<&'static str, usize>) {
    *counts.entry(d.rule.tag()).or_default() += 1;
    for p in &d.premises {
        rule_tags(p, counts);
    }
}

fn has_unguarded_cut(d: &Derivation) -> bool {
    let here = matches!(d.rule, Rule::Cut { .. }) && !d.premises.iter().any(|p| p.rule.is_axiom());
    here || d.premises.iter().any(has_unguarded_cut)
}

#[test]
fn criterion_1_checker_corpus_and_mutants() {
    let start = Instant::now();
    let corpus = corpus::checker_corpus();
    assert!(corpus.len() >= 30, "corpus has only {} entries", corpus.len());

    let mut counts: BTreeMap<&'static str, usize> = BTreeMap::new();
    for (name, d) in &corpus {
        let concl = d.check().unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(concl.alpha_eq(&d.conclusion));
        rule_tags(d, &mut counts);
    }
    let all_tags = [
        "AxL", "AxR", "Mu", "MuTilde", "ImpL", "ImpR", "OrL", "OrR1", "OrR2", "AndL1", "AndL2",
        "AndR", "ExL", "ExR", "AllL", "AllR", "BotL", "TopR", "Cut",
    ];
    for tag in all_tags {
        assert!(
            counts.get(tag).copied().unwrap_or(0) >= 2,
            "rule {tag} appears {} times, need at least 2",
            counts.get(tag).copied().unwrap_or(0)
        );
    }
    // both contraction macros are present: a cut whose left premise is
    // the right axiom, and a cut whose right premise is the left axiom
    let has_contr_left = corpus.iter().any(|(_, d)| {
        matches!(&d.rule, Rule::Cut { .. }) && matches!(d.premises[0].rule, Rule::AxR { .. })
    });
    let has_contr_right = corpus.iter().any(|(_, d)| {
        matches!(&d.rule, Rule::Cut { .. }) && matches!(d.premises[1].rule, Rule::AxL { .. })
    });
    assert!(has_contr_left && has_contr_right);

    let mutants = corpus::mutant_corpus();
    assert!(mutants.len() >= 10);
    for (name, d, expected) in &mutants {
        let err = d
            .check()
            .expect_err(&format!("mutant {name} must be rejected"));
        assert_eq!(
            err.violation, *expected,
            "mutant {name}: expected {expected:?}, got {:?} ({err})",
            err.violation
        );
    }
    pass(1, "checker corpus and mutants", start, Duration::from_secs(1));
}

#[test]
fn criterion_2_semantic_cut_elimination() {
    let start = Instant::now();
    let corpus = corpus::cut_corpus();
    assert!(corpus.len() >= 10, "need at least 10 cut-bearing entries");
    assert!(
        corpus.iter().any(|(n, _)| n == "peirce-with-cut"),
        "a cut-bearing Peirce proof is required"
    );
    for (name, d) in &corpus {
        d.check().unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(
            has_unguarded_cut(d),
            "{name} must contain a cut with no axiom premise"
        );
        let n = normalize(d).unwrap_or_else(|e| panic!("{name}: {e}"));
        n.check()
            .unwrap_or_else(|e| panic!("{name}: output does not check: {e}"));
        assert!(
            n.conclusion.alpha_eq(&d.conclusion),
            "{name}: output proves '{}' instead of '{}'",
            n.conclusion,
            d.conclusion
        );
        assert!(n.is_normal(), "{name}: output is not normal");
    }
    pass(2, "semantic cut elimination", start, Duration::from_secs(5));
}

#[test]
fn criterion_3_reflect_reify_eta_law() {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(77);
    let cfg = FormulaGenConfig {
        max_depth: 4,
        max_quant_depth: 2,
        elements: vec!["c".into(), "d".into()],
    };
    for i in 0..500 {
        let a = random_sentence(&mut rng, &cfg);
        let supply = FreshSupply::new();
        let w = UWorld::new(vec![a.clone()].into(), Context::empty());
        let v = reflect_force(&a, &w, &supply).unwrap();
        let d = reify_force(&a, &w, &v, &supply);
        d.check()
            .unwrap_or_else(|e| panic!("sample {i}, formula {a}: {e}"));
        assert!(d.is_normal(), "sample {i}, formula {a}: not normal");
        let expected = lkmt_core::calculus::Sequent::right_focus(
            w.gamma.clone(),
            a.clone(),
            Context::empty(),
        );
        assert!(
            d.conclusion.alpha_eq(&expected),
            "sample {i}: concluded '{}', wanted '{}'",
            d.conclusion,
            expected
        );
    }
    pass(3, "reflect/reify eta law, 500 sentences", start, Duration::from_secs(30));
}

#[test]
fn criterion_4_finite_model_lemma_audit() {
    let start = Instant::now();
    let models = models_for_criterion_4();
    let mut rng = StdRng::seed_from_u64(MODEL_SAMPLE_SEED ^ 0xff);
    let expected_clauses = [
        "monotone-srefutes",
        "monotone-forces",
        "monotone-refutes",
        "srefutes-implies-refutes",
        "forces-imp-iff-pointwise",
        "forces-and-iff-both",
        "forces-forall-iff-pointwise",
        "forces-or-from-either",
        "forces-exists-from-witness",
        "refutes-imp-iff-srefutes",
        "refutes-or-iff-srefutes",
        "refutes-exists-iff-srefutes",
        "refutes-and-from-either",
        "refutes-forall-from-witness",
        "forces-top",
        "refutes-bot",
        "exploding-iff-forces-bot",
        "exploding-iff-refutes-top",
        "forces-iff-srefutes-neg",
        "refutes-iff-forces-neg",
        "refutes-neg-iff-forces",
        "refutes-neg-iff-srefutes-neg",
        "forces-iff-forces-dneg",
        "refutes-iff-refutes-dneg",
        "srefutes-neg-iff-forces-dneg-iff-forces",
        "dn-translation-matches-forcing",
    ];
    for (i, m) in models.iter().enumerate() {
        m.validate().unwrap();
        let formulas = formulas_for(m, &mut rng);
        let report = audit(m, &formulas);
        // exactly the stated clauses run: converses of the
        // one-directional laws are absent by construction
        let names: Vec<&str> = report.clauses.iter().map(|c| c.name).collect();
        assert_eq!(names, expected_clauses, "model {i}: clause set drifted");
        assert!(report.passed(), "model {i}:\n{report}");
    }
    pass(4, "finite-model lemma audit, 200 models", start, Duration::from_secs(60));
}

#[test]
fn criterion_5_dn_correspondence() {
    let start = Instant::now();
    let models = models_for_criterion_4();
    let mut rng = StdRng::seed_from_u64(MODEL_SAMPLE_SEED ^ 0xff);
    for (i, m) in models.iter().enumerate() {
        let formulas = formulas_for(m, &mut rng);
        let ev = Evaluator::new(m);
        for a in &formulas {
            let translated = a.dn_translate();
            for w in m.world_names() {
                if !a.consts().iter().all(|e| {
                    m.dom_idx(m.world_index(w).unwrap()).contains(e)
                }) {
                    continue;
                }
                let lhs = ev.forces_intuitionistic(w, &translated).unwrap();
                let rhs = ev.forces(w, a).unwrap();
                assert_eq!(
                    lhs, rhs,
                    "model {i}, world {w}: translated {} but untranslated {} for {a}",
                    lhs, rhs
                );
            }
        }
    }
    pass(5, "double-negation correspondence", start, Duration::from_secs(60));
}

#[test]
fn criterion_6_soundness_cross_check() {
    let start = Instant::now();
    let corpus = corpus::soundness_corpus();
    assert_eq!(corpus.len(), 20);
    for (name, d) in &corpus {
        assert!(
            d.all_consts().len() <= 2,
            "{name} uses more than two constants"
        );
        d.check().unwrap();
        let mut rng = StdRng::seed_from_u64(0xbeef);
        for i in 0..100 {
            let m = random_model(&mut rng, &ModelGenConfig::default());
            let report = soundness_check(&m, d);
            assert!(report.passed(), "{name} on model {i}: {report}");
        }
    }
    pass(6, "soundness cross-check, 20 x 100", start, Duration::from_secs(60));
}

#[test]
fn criterion_7_disjunction_property_witness() {
    let start = Instant::now();
    let m = corpus::dp_model();
    m.validate().unwrap();
    let ev = Evaluator::new(&m);
    let consts = std::collections::BTreeSet::new();
    let em = lkmt_core::syntax::parse_formula("X | ~X", &consts).unwrap();
    let x = lkmt_core::syntax::parse_formula("X", &consts).unwrap();
    let nx = lkmt_core::syntax::parse_formula("~X", &consts).unwrap();
    assert!(ev.forces("w0", &em).unwrap());
    assert!(!ev.forces("w0", &x).unwrap());
    assert!(!ev.forces("w0", &nx).unwrap());
    pass(7, "disjunction property failure witness", start, Duration::from_secs(1));
}

#[test]
fn criterion_8_peirce_forcing() {
    let start = Instant::now();
    let peirce = corpus::peirce_formula();
    for (i, m) in models_for_criterion_4().iter().enumerate() {
        let ev = Evaluator::new(m);
        for w in m.world_names() {
            assert!(
                ev.forces(w, &peirce).unwrap(),
                "model {i}, world {w}: the Peirce law must be forced"
            );
        }
    }
    // Intuitionistically the law fails once its propositional slots are
    // filled with a disjunction the translation would have removed:
    // atomic instances coincide with their own translation and so are
    // forced wherever classical forcing holds, but A := X | ~X, B := _|_
    // is refused at the root of the shipped branching model.
    let m = corpus::dp_model();
    let ev = Evaluator::new(&m);
    let consts = std::collections::BTreeSet::new();
    let untranslated = lkmt_core::syntax::parse_formula(
        "(((X | ~X) -> _|_) -> (X | ~X)) -> (X | ~X)",
        &consts,
    )
    .unwrap();
    assert!(!ev.forces_intuitionistic("w0", &untranslated).unwrap());
    // the same instance is classically forced there
    assert!(ev.forces("w0", &untranslated).unwrap());
    pass(8, "Peirce forcing", start, Duration::from_secs(10));
}

#[test]
fn criterion_9_normalize_determinism() {
    let start = Instant::now();
    let dir = std::env::temp_dir().join(format!("lkmt-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("peirce_cut.lkp");
    std::fs::write(
        &input,
        lkmt_core::calculus::print_derivation(&corpus::peirce_with_cut()),
    )
    .unwrap();
    let out1 = dir.join("out1.lkp");
    let out2 = dir.join("out2.lkp");
    for out in [&out1, &out2] {
        let status = std::process::Command::new(env!("CARGO_BIN_EXE_lkmt"))
            .args(["normalize"])
            .arg(&input)
            .arg(out)
            .status()
            .expect("running the normalize subcommand");
        assert!(status.success());
    }
    let b1 = std::fs::read(&out1).unwrap();
    let b2 = std::fs::read(&out2).unwrap();
    assert_eq!(b1, b2, "two normalize runs differ");
    std::fs::remove_dir_all(&dir).ok();
    pass(9, "byte-identical normalize runs", start, Duration::from_secs(30));
}
