use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use postnikov::em::{build_koszul, check_exactness, KoszulVariant};
use postnikov::linalg::q;
use postnikov::obstruction::{isotropic_over_q, QuadraticFormQ};
use postnikov::sullivan::build_minimal_model;
use postnikov_bench::{dense_matrix, wedge_target};

fn rank(c: &mut Criterion) {
    let mut g = c.benchmark_group("rank");
    for n in [8, 16, 32] {
        let m = dense_matrix(n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| {
            b.iter(|| m.rank())
        });
    }
    g.finish();
}

fn minimal_model(c: &mut Criterion) {
    let mut g = c.benchmark_group("minimal_model");
    g.sample_size(10);
    for (spheres, through) in [(2, 5), (3, 4)] {
        let target = wedge_target(spheres);
        g.bench_function(format!("wedge{spheres}_through{through}"), |b| {
            b.iter(|| build_minimal_model(black_box(&target), through).unwrap())
        });
    }
    g.finish();
}

fn koszul(c: &mut Criterion) {
    let mut g = c.benchmark_group("koszul");
    for rank in [3, 5] {
        g.bench_function(format!("rank{rank}_weight4"), |b| {
            b.iter(|| {
                let k = build_koszul(rank, 4, KoszulVariant::Odd).unwrap();
                check_exactness(&k).unwrap()
            })
        });
    }
    g.finish();
}

fn isotropy(c: &mut Criterion) {
    // x^2 + y^2 - 3z^2 is anisotropic, so the search exhausts every shell.
    let f = QuadraticFormQ::diagonal(&[q(1), q(1), q(-3)]);
    let mut g = c.benchmark_group("isotropy");
    g.sample_size(10);
    for h in [20, 60] {
        g.bench_with_input(BenchmarkId::from_parameter(h), &h, |b, &h| {
            b.iter(|| isotropic_over_q(&f, h).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, rank, minimal_model, koszul, isotropy);
criterion_main!(benches);
