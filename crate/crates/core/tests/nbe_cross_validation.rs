//! Cross-validation between the two semantic subsystems: derivations
//! produced by cut elimination are re-judged by the finite-model
//! soundness checker, which shares no code with the checker or the
//! normalizer's value machinery.

use rand::rngs::StdRng;
use rand::SeedableRng;

use lkmt_core::corpus;
use lkmt_core::kripke::gen::{random_model, ModelGenConfig};
use lkmt_core::kripke::soundness_check;
use lkmt_core::nbe::normalize;

#[test]
fn normalized_outputs_survive_the_model_semantics() {
    let mut rng = StdRng::seed_from_u64(123_457);
    let models: Vec<_> = (0..20)
        .map(|_| random_model(&mut rng, &ModelGenConfig::default()))
        .collect();
    for (name, d) in corpus::cut_corpus() {
        let n = normalize(&d).unwrap_or_else(|e| panic!("{name}: {e}"));
        for (i, m) in models.iter().enumerate() {
            let before = soundness_check(m, &d);
            let after = soundness_check(m, &n);
            assert!(before.passed(), "{name} input on model {i}: {before}");
            assert!(after.passed(), "{name} output on model {i}: {after}");
        }
    }
}
