use criterion::{criterion_group, criterion_main, Criterion};
use num_complex::Complex64;
use scarf_bench::{default_sampled, reference_instances};
use scarf_core::analytic_scattering::{amplitudes, observables};
use scarf_core::numeric_oracle::solve;
use scarf_core::special_functions::{complex_gamma, log_complex_gamma};
use std::hint::black_box;

fn gamma(c: &mut Criterion) {
    let z = Complex64::new(-2.3, 1.7);
    c.bench_function("complex_gamma", |b| b.iter(|| complex_gamma(black_box(z))));
    c.bench_function("log_complex_gamma", |b| b.iter(|| log_complex_gamma(black_box(z))));
}

fn analytic(c: &mut Criterion) {
    let p = reference_instances()[0];
    c.bench_function("amplitudes", |b| b.iter(|| amplitudes(&p, black_box(1.1))));
    c.bench_function("scan_1000", |b| {
        b.iter(|| {
            (0..1000)
                .map(|i| {
                    observables(&p, 0.25 + 6.75 * i as f64 / 999.0 + 1e-7)
                        .map(|o| o.t_fwd)
                        .unwrap_or(0.0)
                })
                .sum::<f64>()
        })
    });
}

fn oracle(c: &mut Criterion) {
    let v = default_sampled();
    c.bench_function("oracle_solve_4000", |b| b.iter(|| solve(&v, black_box(1.1))));
}

criterion_group!(benches, gamma, analytic, oracle);
criterion_main!(benches);
