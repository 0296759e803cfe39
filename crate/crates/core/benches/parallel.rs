use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qalg_core::bounds::{
    best_v_search, syzygy_finiteness_certificate, BoundContext, CertificateOptions, SearchStrategy,
};
use qalg_core::catalog::{looped_broom, two_chains};
use qalg_core::par::Execution;
use qalg_core::torsion::{classify_simples_with, PdOptions, SimpleSet};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn classify(c: &mut Criterion) {
    let alg = looped_broom(10);
    let opts = PdOptions::for_algebra(&alg);
    let mut g = c.benchmark_group("classify_simples");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| classify_simples_with(black_box(&alg), &opts, exec))
        });
    }
    g.finish();
}

fn search(c: &mut Criterion) {
    let alg = two_chains(6);
    let opts = PdOptions::for_algebra(&alg);
    let mut g = c.benchmark_group("best_v_search");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| best_v_search(black_box(&alg), &opts, SearchStrategy::Exhaustive, 20, exec).unwrap())
        });
    }
    g.finish();
}

fn certificate(c: &mut Criterion) {
    let alg = looped_broom(10);
    let opts = PdOptions::for_algebra(&alg);
    let ctx = BoundContext::new(&alg, &opts, Execution::Sequential);
    let v = SimpleSet::new(alg.num_vertices(), 3..=9).unwrap();
    let cert = CertificateOptions {
        samples: 8,
        ..Default::default()
    };
    let mut g = c.benchmark_group("certificate");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| syzygy_finiteness_certificate(&ctx, black_box(&v), &cert, exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, classify, search, certificate);
criterion_main!(benches);
