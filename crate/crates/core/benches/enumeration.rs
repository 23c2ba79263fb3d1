use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use seshadri::oracle::{min_ratio_search_with, verify_han_exhaustive_with, verify_theorem_with};
use seshadri::Execution;

const MODES: [(&str, Execution); 2] = [("parallel", Execution::Parallel), ("sequential", Execution::Sequential)];

fn theorem(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_theorem");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new(name, "k20_r10_d5_m8"), &exec, |b, &exec| {
            b.iter(|| verify_theorem_with(1..=20, 2..=10, black_box(5), 8, exec).unwrap())
        });
    }
    group.finish();
}

fn han(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_han");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new(name, "s8_m12"), &exec, |b, &exec| {
            b.iter(|| verify_han_exhaustive_with(black_box(8), 12, exec).unwrap())
        });
    }
    group.finish();
}

fn search(c: &mut Criterion) {
    let mut group = c.benchmark_group("min_ratio_search");
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new(name, "k3_r12_d6"), &exec, |b, &exec| {
            b.iter(|| min_ratio_search_with(black_box(3), 12, 6, 10, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, theorem, han, search);
criterion_main!(benches);
