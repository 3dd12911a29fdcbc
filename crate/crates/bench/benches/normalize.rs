use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

use lkmt_bench::sentence_sample;
use lkmt_core::corpus;
use lkmt_core::nbe::{normalize, reflect_force, reify_force, FreshSupply, UWorld};
use lkmt_core::syntax::Context;

fn bench_normalize(c: &mut Criterion) {
    let mut group = c.benchmark_group("normalize");
    for (name, d) in corpus::cut_corpus() {
        group.bench_function(&name, |b| {
            b.iter_batched(|| d.clone(), |d| normalize(&d).unwrap(), BatchSize::SmallInput)
        });
    }
    group.finish();
}

fn bench_eta_expansion(c: &mut Criterion) {
    let sentences = sentence_sample(24, 4);
    c.bench_function("reify_force/depth4-batch", |b| {
        b.iter(|| {
            for a in &sentences {
                let supply = FreshSupply::new();
                let w = UWorld::new(vec![a.clone()].into(), Context::empty());
                let v = reflect_force(a, &w, &supply).unwrap();
                let d = reify_force(a, &w, &v, &supply);
                assert!(d.is_normal());
            }
        })
    });
}

criterion_group!(benches, bench_normalize, bench_eta_expansion);
criterion_main!(benches);
