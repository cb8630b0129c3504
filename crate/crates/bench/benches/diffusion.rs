// Copyright 2026 The decohere Authors
// SPDX-License-Identifier: Apache-2.0

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use decohere_bench::{reference_grid, reference_model, reference_trajectory};
use decohere_core::{
    decoherence_factor, diffusion_coefficient, source_convolution, CaseLabel, OscillatorKind, QuadSettings,
};

fn convolution(c: &mut Criterion) {
    c.bench_function("source_convolution", |b| {
        b.iter(|| {
            source_convolution(
                OscillatorKind::Inverted,
                black_box(1.3),
                OscillatorKind::Harmonic,
                black_box(1.0),
                2.0,
                1.0,
                0.5,
                black_box(1.2),
            )
        })
    });
}

fn single_point(c: &mut Criterion) {
    let quad = QuadSettings::default();
    let mut group = c.benchmark_group("diffusion_coefficient");
    for label in CaseLabel::ALL {
        let cfg = reference_model(label, 100.0);
        let traj = reference_trajectory(&cfg);
        group.bench_with_input(BenchmarkId::from_parameter(label), &label, |b, _| {
            b.iter(|| diffusion_coefficient(&cfg, &traj, black_box(2.0), &quad))
        });
    }
    group.finish();
}

fn full_series(c: &mut Criterion) {
    let quad = QuadSettings::default();
    let cfg = reference_model(CaseLabel::D, 1.0);
    let traj = reference_trajectory(&cfg);
    let mut group = c.benchmark_group("decoherence_factor");
    group.sample_size(10);
    for n in [500, 2000] {
        let grid = reference_grid(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &grid, |b, grid| {
            b.iter(|| decoherence_factor(&cfg, &traj, grid, &quad))
        });
    }
    group.finish();
}

criterion_group!(benches, convolution, single_point, full_series);
criterion_main!(benches);
