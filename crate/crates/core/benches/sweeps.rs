//! Parallel against sequential execution of two representative sweeps.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use beltrami::catalog;
use beltrami::exec::{self, Exec};
use beltrami::harness::{run_suite, HarnessConfig};
use beltrami::registry;

fn sweep(c: &mut Criterion, name: &str, surface: &str, globs: &[&str]) {
    let surfaces = [catalog::surface(surface).unwrap()];
    let include: Vec<String> = globs.iter().map(|g| g.to_string()).collect();
    let cases = registry::select(&include, &[]).unwrap();
    let cfg = HarnessConfig::default();
    let mut group = c.benchmark_group(name);
    group.sample_size(10);
    for policy in [Exec::Sequential, Exec::Parallel] {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{policy:?}")), &policy, |b, &p| {
            b.iter(|| exec::with(p, || run_suite(&surfaces, &cases, &cfg).unwrap()))
        });
    }
    group.finish();
}

fn pointwise(c: &mut Criterion) {
    sweep(c, "structure_torus", "torus", &["structure_eq_*", "K_three_routes"]);
}

fn integral(c: &mut Criterion) {
    sweep(c, "gauss_bonnet_caps", "sphere_stereo", &["gauss_bonnet"]);
}

criterion_group!(benches, pointwise, integral);
criterion_main!(benches);
