//! Sequential against rayon execution for the three data-parallel stages:
//! element assembly, the λ-scan and the remainder sweep.
//!
//! Without the `parallel` feature both modes run the sequential loop, which
//! makes the two curves coincide.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hardy_core::analysis::{scan_lambda_with, verify_remainder_with, Discretization};
use hardy_core::assembly::assemble_pencil_with;
use hardy_core::geometry::DomainSpec;
use hardy_core::Execution;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn disc(execution: Execution) -> Discretization {
    Discretization { target_h: 0.4, log_depth: 15.0, execution, ..Discretization::default() }
}

fn assembly(c: &mut Criterion) {
    let domain = DomainSpec::half_disk(1.0);
    let base = disc(Execution::Sequential);
    let mesh = base.mesh(&domain, 1).unwrap();
    let mut g = c.benchmark_group("assembly");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new(name, mesh.num_triangles()), &exec, |b, &exec| {
            b.iter(|| assemble_pencil_with(&mesh, &base.rule(), &base.singular, exec).unwrap())
        });
    }
    g.finish();
}

fn scan(c: &mut Criterion) {
    let domain = DomainSpec::half_disk(1.0);
    let mut g = c.benchmark_group("lambda_scan");
    g.sample_size(10);
    for (name, exec) in MODES {
        let d = disc(exec);
        g.bench_function(name, |b| b.iter(|| scan_lambda_with(&domain, (-5.0, 10.0), 0, 0.05, &d).unwrap()));
    }
    g.finish();
}

fn remainder(c: &mut Criterion) {
    let domain = DomainSpec::half_disk(1.0);
    let mut g = c.benchmark_group("remainder");
    g.sample_size(10);
    for (name, exec) in MODES {
        let d = disc(exec);
        g.bench_function(name, |b| b.iter(|| verify_remainder_with(&domain, 2000, 1, 0, &d).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, assembly, scan, remainder);
criterion_main!(benches);
