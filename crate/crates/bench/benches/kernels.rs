use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use entangle_bench::{chain, critical_ising, qubits};
use entangle_core::uniformity::catalog::ame52;
use entangle_core::{dmrg_ground_state, knill_laflamme_check, lu_invariants, overlap, q_measure, tangle_report};
use std::hint::black_box;

fn three_qubit(c: &mut Criterion) {
    let s = qubits(3, 1);
    c.bench_function("lu_invariants", |b| b.iter(|| lu_invariants(black_box(&s)).unwrap()));
    c.bench_function("tangle_report", |b| b.iter(|| tangle_report(black_box(&s)).unwrap()));
}

fn uniformity(c: &mut Criterion) {
    let s = qubits(10, 2);
    let mut group = c.benchmark_group("q_measure_10q");
    for k in [1, 3, 5] {
        group.bench_with_input(BenchmarkId::from_parameter(k), &k, |b, &k| b.iter(|| q_measure(&s, k).unwrap()));
    }
    group.finish();
    let ame = ame52();
    c.bench_function("knill_laflamme_ame52_w1", |b| b.iter(|| knill_laflamme_check(black_box(&ame), 1).unwrap()));
}

fn mps(c: &mut Criterion) {
    let mut group = c.benchmark_group("from_dense");
    for k in [8, 12, 14] {
        let s = qubits(k, 3);
        group.bench_with_input(BenchmarkId::from_parameter(k), &s, |b, s| b.iter(|| entangle_core::MpsState::from_dense(s)));
    }
    group.finish();
    let (a, bb) = (chain(14, 4), chain(14, 5));
    c.bench_function("overlap_14q", |b| b.iter(|| overlap(black_box(&a), black_box(&bb)).unwrap()));
    let h = critical_ising(10);
    let mut group = c.benchmark_group("dmrg");
    group.sample_size(10);
    group.bench_function("ising_10_d8", |b| b.iter(|| dmrg_ground_state(&h, 8, 10, 1e-10, 0).unwrap()));
    group.finish();
}

criterion_group!(benches, three_qubit, uniformity, mps);
criterion_main!(benches);
