use criterion::{criterion_group, criterion_main, Criterion};

use lkmt_bench::{formula_sample, model_sample};
use lkmt_core::corpus;
use lkmt_core::kripke::{audit, soundness_check, Evaluator};

fn bench_audit(c: &mut Criterion) {
    let models = model_sample(8);
    let formulas: Vec<_> = models
        .iter()
        .map(|m| formula_sample(m, 20, 3))
        .collect();
    c.bench_function("audit/8-models-depth3", |b| {
        b.iter(|| {
            for (m, fs) in models.iter().zip(&formulas) {
                assert!(audit(m, fs).passed());
            }
        })
    });
}

fn bench_forces(c: &mut Criterion) {
    let models = model_sample(8);
    let peirce = corpus::peirce_formula();
    c.bench_function("forces/peirce-all-worlds", |b| {
        b.iter(|| {
            for m in &models {
                let ev = Evaluator::new(m);
                for w in m.world_names() {
                    assert!(ev.forces(w, &peirce).unwrap());
                }
            }
        })
    });
}

fn bench_soundness(c: &mut Criterion) {
    let models = model_sample(4);
    let corpus = corpus::soundness_corpus();
    c.bench_function("soundness_check/corpus-on-4-models", |b| {
        b.iter(|| {
            for m in &models {
                for (_, d) in &corpus {
                    assert!(soundness_check(m, d).passed());
                }
            }
        })
    });
}

criterion_group!(benches, bench_audit, bench_forces, bench_soundness);
criterion_main!(benches);
