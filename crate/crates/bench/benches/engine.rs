use criterion::{black_box, criterion_group, criterion_main, Criterion};

use qecmem_bench::{biased_operating_point, operating_point};
use qecmem_core::threshold::default_p_grid;
use qecmem_core::{build_code, CodeName, FidelityEngine, SuccessRule, ThresholdSweeper};

fn enumeration(c: &mut Criterion) {
    let params = operating_point();
    c.bench_function("enumerate_distribution n=7", |b| {
        b.iter(|| params.enumerate_distribution(black_box(7)).unwrap())
    });
}

fn engine_build(c: &mut Criterion) {
    let code = build_code(CodeName::SevenQubitSet1).unwrap();
    c.bench_function("classify 4^7 strings", |b| {
        b.iter(|| FidelityEngine::new(black_box(&code), SuccessRule::DesignatedCorrection).unwrap())
    });
}

fn fidelity(c: &mut Criterion) {
    let engine =
        FidelityEngine::for_code(CodeName::SevenQubitSet2, SuccessRule::DesignatedCorrection)
            .unwrap();
    let params = biased_operating_point();
    c.bench_function("fidelity seven_qubit_set2", |b| {
        b.iter(|| engine.fidelity(black_box(&params)))
    });
    c.bench_function("full report seven_qubit_set2", |b| {
        b.iter(|| engine.report(black_box(&params)))
    });
}

fn thresholds(c: &mut Criterion) {
    let sweeper = ThresholdSweeper::for_code(CodeName::FiveQubit, Default::default()).unwrap();
    c.bench_function("p_threshold at mu=0.1", |b| {
        b.iter(|| sweeper.p_threshold_at_mu(black_box(0.1)))
    });
    let grid = default_p_grid();
    let mut group = c.benchmark_group("curves");
    group.sample_size(10);
    group.bench_function("mu_threshold curve, 200 points", |b| {
        b.iter(|| sweeper.mu_threshold_curve(&grid))
    });
    group.finish();
}

criterion_group!(benches, enumeration, engine_build, fidelity, thresholds);
criterion_main!(benches);
