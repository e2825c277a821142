//! The same workloads under the rayon pool and under the sequential fallback.
//!
//! `cargo bench -p graphcocycle` measures the `parallel` variants (plus a
//! one-thread pool); `cargo bench -p graphcocycle --no-default-features`
//! adds the `sequential` variants to the same report groups.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use graphcocycle::algebra::{check_axioms, Algebra};
use graphcocycle::cocycle::check_path_extension;
use graphcocycle::constructions::{EpkSystem, System};
use graphcocycle::par;
use graphcocycle::toeplitz::{fock_check, parse_expression};

const MODE: &str = if cfg!(feature = "parallel") { "parallel" } else { "sequential" };

fn epk(a: i64, b: i64) -> System {
    EpkSystem::new(a, b).unwrap().system().unwrap()
}

fn variants(c: &mut Criterion, group: &str, work: impl Fn() + Sync) {
    let mut g = c.benchmark_group(group);
    g.sample_size(10);
    g.bench_function(BenchmarkId::from_parameter(MODE), |b| b.iter(&work));
    if cfg!(feature = "parallel") {
        g.bench_function(BenchmarkId::from_parameter("parallel-1-thread"), |b| {
            b.iter(|| par::with_threads(1, &work))
        });
    }
    g.finish();
}

fn fock(c: &mut Criterion) {
    let sys = epk(3, 2);
    let terms = parse_expression(&sys, "s*(0) u(3) s(1) s(2) - u(-2) s(2)").unwrap();
    variants(c, "fock_check epk(3,2) L=6", || {
        black_box(fock_check(&sys, &terms, 6, 3));
    });
}

fn axioms(c: &mut Criterion) {
    let alg = Algebra::from_system(&epk(3, 2));
    variants(c, "axioms epk(3,2) 100 trials", || {
        black_box(check_axioms(&alg, 100, 1, 5, 4));
    });
}

fn extension(c: &mut Criterion) {
    let sys = epk(2, 1);
    variants(c, "path extension epk(2,1) L=6", || {
        black_box(check_path_extension(&sys.action, &sys.cocycle, 6, 3));
    });
}

criterion_group!(benches, fock, axioms, extension);
criterion_main!(benches);
