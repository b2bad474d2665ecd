use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use njordan::concrete::{cross_validate, matrix2};
use njordan::freealg::sum_of_generators;
use njordan::jordan::{verify_theorem, Lattice};
use njordan::{JordanConfig, Mode, Modes, VarSet};

fn power_expansion(c: &mut Criterion) {
    let mut group = c.benchmark_group("pow");
    for n in [4usize, 5, 6] {
        let s = sum_of_generators(VarSet::full(n), Mode::Noncommutative).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| b.iter(|| black_box(&s).pow(n as u32)));
    }
    group.finish();
}

fn lattice(c: &mut Criterion) {
    let mut group = c.benchmark_group("lattice");
    group.sample_size(10);
    for modes in Modes::all() {
        let cfg = JordanConfig::new(5, modes).unwrap();
        let label = format!("{}-{}", modes.a, modes.b);
        group.bench_function(BenchmarkId::new("build_n5", &label), |b| {
            b.iter(|| Lattice::new(black_box(&cfg), cfg.full()).unwrap())
        });
    }
    let cfg = JordanConfig::new(5, Modes::new(Mode::Noncommutative, Mode::Noncommutative)).unwrap();
    group.bench_function("verify_theorem_n5_noncom", |b| b.iter(|| verify_theorem(black_box(&cfg)).unwrap()));
    group.finish();
}

fn concrete(c: &mut Criterion) {
    let mut group = c.benchmark_group("cross_validate");
    group.sample_size(10);
    let m2 = matrix2();
    let cfg = JordanConfig::new(3, Modes::new(Mode::Noncommutative, Mode::Noncommutative)).unwrap();
    group.bench_function("m2_n3_20_trials", |b| b.iter(|| cross_validate(black_box(&cfg), 20, 0, &m2, &m2).unwrap()));
    group.finish();
}

criterion_group!(benches, power_expansion, lattice, concrete);
criterion_main!(benches);
