//! Shared setup for the criterion benches: deterministic model and
//! formula samples so runs are comparable across machines.

use rand::rngs::StdRng;
use rand::SeedableRng;

use lkmt_core::kripke::gen::{random_model, random_sentence, FormulaGenConfig, ModelGenConfig};
use lkmt_core::kripke::FiniteModel;
use lkmt_core::syntax::Formula;

pub const BENCH_SEED: u64 = 0xbe_c4;

/// A fixed batch of models for the evaluator benches.
pub fn model_sample(count: usize) -> Vec<FiniteModel> {
    let mut rng = StdRng::seed_from_u64(BENCH_SEED);
    let cfg = ModelGenConfig::default();
    (0..count).map(|_| random_model(&mut rng, &cfg)).collect()
}

/// Ground sentences of the given depth over a model's elements.
pub fn formula_sample(m: &FiniteModel, count: usize, depth: usize) -> Vec<Formula> {
    let mut rng = StdRng::seed_from_u64(BENCH_SEED ^ depth as u64);
    let cfg = FormulaGenConfig::ground(depth, m.all_elements().into_iter().collect());
    (0..count).map(|_| random_sentence(&mut rng, &cfg)).collect()
}

/// Closed sentences over two declared constants, for the reifier bench.
pub fn sentence_sample(count: usize, depth: usize) -> Vec<Formula> {
    let mut rng = StdRng::seed_from_u64(BENCH_SEED ^ 0x5a5a);
    let cfg = FormulaGenConfig {
        max_depth: depth,
        max_quant_depth: 2,
        elements: vec!["c".into(), "d".into()],
    };
    (0..count).map(|_| random_sentence(&mut rng, &cfg)).collect()
}
