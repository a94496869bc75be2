use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use flatgb::families::{coefficient_table, flat_locus, relative_initial};
use flatgb::{groebner_basis, Field, Window};
use flatgb_bench::{cyclic, ex2, fitex, redex};

fn buchberger(c: &mut Criterion) {
    let mut group = c.benchmark_group("buchberger");
    for n in [3, 4] {
        let (ring, gens) = cyclic(n, Field::prime(32003).unwrap());
        group.bench_function(format!("cyclic{n}_fp"), |b| {
            b.iter(|| groebner_basis(black_box(&ring), black_box(&gens)).unwrap())
        });
    }
    let (ring, gens) = cyclic(4, Field::Rationals);
    group.bench_function("cyclic4_q", |b| {
        b.iter(|| groebner_basis(black_box(&ring), black_box(&gens)).unwrap())
    });
    group.finish();
}

fn families(c: &mut Criterion) {
    let mut group = c.benchmark_group("families");
    group.bench_function("fitex_table", |b| {
        b.iter(|| coefficient_table(&fitex(), Window::new(4, 4).unwrap()).unwrap())
    });
    group.bench_function("ex2_initial", |b| {
        b.iter(|| relative_initial(&ex2()).unwrap())
    });
    group.bench_function("redex_flat_locus", |b| {
        b.iter(|| flat_locus(&redex()).unwrap())
    });
    group.finish();
}

criterion_group!(benches, buchberger, families);
criterion_main!(benches);
