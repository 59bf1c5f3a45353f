//! Sequential vs rayon-parallel execution of the two exhaustive analyses:
//! route enumeration and rule-consistent reachability.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use artemus_core::datasets::{load_bundled, DatasetName};
use artemus_core::parallel::Execution;
use artemus_core::pathfinder::{enumerate_routes, RouteOptions};
use artemus_core::synth::layered_graph;
use artemus_core::validation::validate_with;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn route_enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_routes");
    let housing = load_bundled(DatasetName::Housing).unwrap();
    let layered = layered_graph(6, 5);
    for (name, exec) in MODES {
        let opts = RouteOptions {
            execution: exec,
            include_abandonments: true,
            ..RouteOptions::default()
        };
        group.bench_with_input(BenchmarkId::new("housing", name), &opts, |b, opts| {
            b.iter(|| enumerate_routes(black_box(&housing), "homelessness-entry", *opts).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("layered-6x5", name), &opts, |b, opts| {
            b.iter(|| enumerate_routes(black_box(&layered), "entry0", *opts).unwrap())
        });
    }
    group.finish();
}

fn validation(c: &mut Criterion) {
    let mut group = c.benchmark_group("validate");
    let housing = load_bundled(DatasetName::Housing).unwrap();
    let education = load_bundled(DatasetName::Education).unwrap();
    let layered = layered_graph(5, 4);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new("housing", name), &exec, |b, &exec| {
            b.iter(|| validate_with(black_box(&housing), exec))
        });
        group.bench_with_input(BenchmarkId::new("education", name), &exec, |b, &exec| {
            b.iter(|| validate_with(black_box(&education), exec))
        });
        group.bench_with_input(BenchmarkId::new("layered-5x4", name), &exec, |b, &exec| {
            b.iter(|| validate_with(black_box(&layered), exec))
        });
    }
    group.finish();
}

criterion_group!(benches, route_enumeration, validation);
criterion_main!(benches);
