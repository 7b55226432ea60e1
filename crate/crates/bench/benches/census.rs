use criterion::{black_box, criterion_group, criterion_main, Criterion};

use rsk_core::bitableau::{self, DiagonalMethod};
use rsk_core::census;
use rsk_core::model::MarginPair;

fn bench_census_routes(c: &mut Criterion) {
    let mut group = c.benchmark_group("census");
    group.sample_size(10);
    group.bench_function("direct_n8", |b| {
        b.iter(|| black_box(census::census_direct(8).unwrap()))
    });
    group.bench_function("tree_to_n9", |b| {
        b.iter(|| black_box(census::census_tree(9).unwrap()))
    });
    group.finish();
}

fn bench_coefficients(c: &mut Criterion) {
    let mut group = c.benchmark_group("coefficients");
    group.sample_size(20);
    group.bench_function("diagonal_census_poly_n5", |b| {
        b.iter(|| black_box(bitableau::diagonal_zero_census(5, DiagonalMethod::Polynomial).unwrap()))
    });
    group.bench_function("block_unit_n4", |b| {
        b.iter(|| black_box(bitableau::block(&MarginPair::unit(4)).unwrap()))
    });
    group.finish();
}

criterion_group!(benches, bench_census_routes, bench_coefficients);
criterion_main!(benches);
