//! Timings of the exact kernels behind the verification suite.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use spacecurve_core::catalog::{instantiate, EntryId};
use spacecurve_core::curve_model::tangent_space;
use spacecurve_core::genericity::GenericityConfig;
use spacecurve_core::invariants::{milnor, tjurina};
use spacecurve_core::ll_map::{ll_degree, ll_point, weight_profile};
use spacecurve_core::poly::int;
use spacecurve_core::{standard_basis, LocalOrder};

fn id(s: &str) -> EntryId {
    s.parse().expect("catalog entry")
}

fn standard_bases(c: &mut Criterion) {
    for s in ["A6", "C:4,3", "C:2,2,1", "E8"] {
        let pair = instantiate(&id(s)).unwrap().pair;
        let gens = tangent_space(&pair);
        let ord = LocalOrder::negative_degree_lex(pair.vars().len());
        c.bench_function(&format!("standard_basis/{s}"), |b| {
            b.iter(|| standard_basis(black_box(&gens), &ord).unwrap())
        });
    }
}

fn tjurina_numbers(c: &mut Criterion) {
    for s in ["A10", "C:6,6", "C:4,4,4", "X9@5/2"] {
        let pair = instantiate(&id(s)).unwrap().pair;
        c.bench_function(&format!("tjurina/{s}"), |b| {
            b.iter(|| tjurina(black_box(&pair)).unwrap())
        });
    }
}

fn milnor_numbers(c: &mut Criterion) {
    let cfg = GenericityConfig::default();
    let mut g = c.benchmark_group("milnor");
    g.sample_size(10);
    for s in ["A4", "C:3,2", "C:1,1,1", "C:2,1,1"] {
        let entry = instantiate(&id(s)).unwrap();
        g.bench_function(s, |b| b.iter(|| milnor(black_box(&entry), &cfg).unwrap()));
    }
    g.finish();
}

fn ll_kernels(c: &mut Criterion) {
    let e8 = weight_profile(&instantiate(&id("E8")).unwrap()).unwrap();
    c.bench_function("ll_degree/E8", |b| {
        b.iter(|| ll_degree(black_box(&e8)).unwrap())
    });
    let three_lines = id("C:1,1,1");
    let values = [int(2), int(3), int(5), int(7)];
    c.bench_function("ll_point/C:1,1,1", |b| {
        b.iter(|| ll_point(black_box(&three_lines), black_box(&values)).unwrap())
    });
}

criterion_group!(
    benches,
    standard_bases,
    tjurina_numbers,
    milnor_numbers,
    ll_kernels
);
criterion_main!(benches);
