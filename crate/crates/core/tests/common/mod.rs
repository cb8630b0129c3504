// Copyright 2026 The decohere Authors
// SPDX-License-Identifier: Apache-2.0

//! Independent numerical oracles shared by the integration tests. Nothing
//! here calls into the closed forms under test.

#![allow(dead_code)]

use decohere_core::{CaseLabel, CompositeCase, ModelConfig, OscillatorKind};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The ω = 2Ω set behind the shipped `fig1-right` config.
pub fn reference_model(label: CaseLabel, gamma0_kt: f64) -> ModelConfig {
    ModelConfig {
        omega: 2.0,
        omega_b: 1.0,
        lambda: 0.2,
        sigma: 12.0,
        sigma_p0: 40.0,
        gamma0: 1.0,
        ..ModelConfig::default()
    }
    .with_case(CompositeCase::new(label))
    .with_gamma0_kt(gamma0_kt)
}

pub fn sine(kind: OscillatorKind, z: f64) -> f64 {
    match kind {
        OscillatorKind::Harmonic => z.sin(),
        OscillatorKind::Inverted => z.sinh(),
    }
}

pub fn cosine(kind: OscillatorKind, z: f64) -> f64 {
    match kind {
        OscillatorKind::Harmonic => z.cos(),
        OscillatorKind::Inverted => z.cosh(),
    }
}

const GK_NODES: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const GK_WEIGHTS: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const G_WEIGHTS: [f64; 4] =
    [0.129_484_966_168_869_7, 0.279_705_391_489_276_7, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = GK_WEIGHTS[7] * fc;
    let mut gauss = G_WEIGHTS[3] * fc;
    let mut abs = GK_WEIGHTS[7] * fc.abs();
    for i in 0..7 {
        let (f1, f2) = (f(c - h * GK_NODES[i]), f(c + h * GK_NODES[i]));
        kronrod += GK_WEIGHTS[i] * (f1 + f2);
        abs += GK_WEIGHTS[i] * (f1.abs() + f2.abs());
        if i % 2 == 1 {
            gauss += G_WEIGHTS[i / 2] * (f1 + f2);
        }
    }
    (kronrod * h, (kronrod - gauss).abs() * h, abs * h)
}

/// Adaptive Gauss–Kronrod (7/15) with recursive bisection. Returns the
/// integral and `∫|f|`.
pub fn adaptive_integral<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> (f64, f64) {
    fn recurse<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> (f64, f64) {
        let (value, err, abs) = gk15(f, a, b);
        if depth == 0 || err <= tol * abs.max(f64::MIN_POSITIVE) || err < 1e-300 {
            return (value, abs);
        }
        let m = 0.5 * (a + b);
        let (l, la) = recurse(f, a, m, tol, depth - 1);
        let (r, ra) = recurse(f, m, b, tol, depth - 1);
        (l + r, la + ra)
    }
    if a == b {
        return (0.0, 0.0);
    }
    recurse(&f, a, b, tol, 40)
}

/// Classical RK4 for `y'' = g(s, y)` from `s = 0` to `s_end`.
pub fn rk4_second_order<G: Fn(f64, f64) -> f64>(g: &G, y0: f64, v0: f64, s_end: f64, steps: usize) -> (f64, f64) {
    let h = s_end / steps as f64;
    let (mut y, mut v) = (y0, v0);
    for k in 0..steps {
        let s = k as f64 * h;
        let (k1y, k1v) = (v, g(s, y));
        let (k2y, k2v) = (v + 0.5 * h * k1v, g(s + 0.5 * h, y + 0.5 * h * k1y));
        let (k3y, k3v) = (v + 0.5 * h * k2v, g(s + 0.5 * h, y + 0.5 * h * k2y));
        let (k4y, k4v) = (v + h * k3v, g(s + h, y + h * k3y));
        y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    }
    (y, v)
}

/// Solves `y'' = κΩ²y + forcing(s)` with `y(0) = y0`, `y(t) = yt` by linear
/// shooting and returns `(y(s), y'(s))`.
pub fn shoot<F: Fn(f64) -> f64>(kappa_omega2: f64, forcing: F, t: f64, y0: f64, yt: f64, s: f64) -> (f64, f64) {
    let g = |u: f64, y: f64| kappa_omega2 * y + forcing(u);
    let steps = 20_000;
    let (end_a, _) = rk4_second_order(&g, y0, 0.0, t, steps);
    let (end_b, _) = rk4_second_order(&g, y0, 1.0, t, steps);
    // The end value is affine in the initial slope.
    let v0 = (yt - end_a) / (end_b - end_a);
    if s == 0.0 {
        return (y0, v0);
    }
    let sub_steps = ((steps as f64 * s / t).ceil() as usize).max(100);
    rk4_second_order(&g, y0, v0, s, sub_steps)
}
