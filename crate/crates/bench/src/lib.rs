//! Criterion benchmarks for projector construction, the engine, and whole
//! scenario runs.

use std::hint::black_box;

use criterion::{BenchmarkId, Criterion};
use tsvf::{
    build_projector, run_scenario, tensor, Evaluator, Operator, PrePostSelection, ProjectorKind, ProjectorSpec,
    SingleState, ZERO_TOLERANCE,
};

fn product(state: SingleState, n: usize) -> tsvf::Ket {
    tensor(&vec![state.ket().expect("preset"); n]).expect("n within cap")
}

pub fn projectors(c: &mut Criterion) {
    let mut group = c.benchmark_group("build_projector");
    for n in [3, 6, 8] {
        let spec = ProjectorSpec::new(ProjectorKind::pair_same(1, 2), n).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &spec, |b, spec| {
            b.iter(|| build_projector(black_box(spec)))
        });
    }
    group.finish();
}

pub fn engine(c: &mut Criterion) {
    let mut group = c.benchmark_group("engine");
    for n in [3, 6] {
        let sel = PrePostSelection::new(product(SingleState::Plus, n), product(SingleState::PlusI, n)).unwrap();
        let same = build_projector(&ProjectorSpec::new(ProjectorKind::pair_same(1, 2), n).unwrap());
        let diff = build_projector(&ProjectorSpec::new(ProjectorKind::pair_diff(1, 2), n).unwrap());
        let eval = Evaluator::default();
        group.bench_function(BenchmarkId::new("weak_value", n), |b| {
            b.iter(|| eval.weak_value(black_box(&sel), black_box(&same)).unwrap())
        });
        group.bench_function(BenchmarkId::new("global_probability", n), |b| {
            b.iter(|| {
                eval.global_probability(black_box(&sel), &[same.clone(), diff.clone()])
                    .unwrap()
            })
        });
        group.bench_function(BenchmarkId::new("matmul", n), |b| {
            b.iter(|| Operator::checked_mul(black_box(&same), black_box(&diff)).unwrap())
        });
    }
    group.finish();
}

pub fn scenarios(c: &mut Criterion) {
    let mut group = c.benchmark_group("run_scenario");
    for scenario in tsvf::builtin_scenarios() {
        group.bench_function(scenario.name.clone(), |b| {
            b.iter(|| run_scenario(black_box(&scenario), ZERO_TOLERANCE).unwrap())
        });
    }
    group.finish();
}

pub fn benchmarks(c: &mut Criterion) {
    projectors(c);
    engine(c);
    scenarios(c);
}
