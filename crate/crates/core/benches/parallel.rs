use braid_rmatrix::coupling::Shape;
use braid_rmatrix::exec::Exec;
use braid_rmatrix::hecke::verify_hecke;
use braid_rmatrix::rmatrix::checks::ybe_for;
use braid_rmatrix::rmatrix::compute_rmatrix;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const STRATEGIES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn rmatrix(c: &mut Criterion) {
    let mut g = c.benchmark_group("compute_rmatrix");
    g.sample_size(10);
    for (shape, n) in [(Shape::Two, 4), (Shape::TwoOne, 3)] {
        for (name, exec) in STRATEGIES {
            g.bench_with_input(BenchmarkId::new(name, format!("{shape} n={n}")), &exec, |b, &exec| {
                b.iter(|| compute_rmatrix(shape, n, exec).unwrap())
            });
        }
    }
    g.finish();
}

fn checks(c: &mut Criterion) {
    let mut g = c.benchmark_group("checks");
    g.sample_size(10);
    for (name, exec) in STRATEGIES {
        g.bench_with_input(BenchmarkId::new(name, "ybe [2] n=3 q=0.7"), &exec, |b, &exec| {
            b.iter(|| ybe_for(Shape::Two, 3, Some(0.7), 1e-10, exec).unwrap())
        });
        g.bench_with_input(BenchmarkId::new(name, "hecke n=3 sites=6"), &exec, |b, &exec| {
            b.iter(|| verify_hecke(3, 6, exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, rmatrix, checks);
criterion_main!(benches);
