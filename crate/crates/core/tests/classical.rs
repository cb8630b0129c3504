// Copyright 2026 The decohere Authors
// SPDX-License-Identifier: Apache-2.0

mod common;

use common::{adaptive_integral, cosine, rng, shoot, sine};
use decohere_core::{
    delta_q_trajectory, free_trajectory, source_convolution, CaseLabel, CompositeCase, DeltaXConvention, ModelConfig,
    OscillatorKind, TrajectorySpec,
};
use rand::Rng;

const KINDS: [OscillatorKind; 2] = [OscillatorKind::Harmonic, OscillatorKind::Inverted];

/// Independent evaluation of the boundary-value free trajectory.
fn free_by_hand(kind: OscillatorKind, freq: f64, t: f64, x0: f64, xf: f64, u: f64) -> f64 {
    (x0 * sine(kind, freq * (t - u)) + xf * sine(kind, freq * u)) / sine(kind, freq * t)
}

fn clear_of_caustic(kind: OscillatorKind, z: f64) -> bool {
    kind == OscillatorKind::Inverted || z.sin().abs() > 0.05
}

#[test]
fn convolution_matches_adaptive_quadrature_at_reference_point() {
    let (ka, kb) = (OscillatorKind::Harmonic, OscillatorKind::Inverted);
    let (omega, omega_b, t, s) = (1.0, 1.3, 2.0, 1.0);
    let pair = source_convolution(kb, omega_b, ka, omega, t, 1.0, 1.0, s).unwrap();
    let x = |u: f64| free_by_hand(ka, omega, t, 1.0, 1.0, u);
    let (partial, _) = adaptive_integral(|u| x(u) * sine(kb, omega_b * (s - u)), 0.0, s, 1e-14);
    let (full, _) = adaptive_integral(|u| x(u) * sine(kb, omega_b * (t - u)), 0.0, t, 1e-14);
    assert!((pair.partial - partial).abs() <= 1e-10 * partial.abs());
    assert!((pair.full - full).abs() <= 1e-10 * full.abs());
}

#[test]
fn convolution_matches_adaptive_quadrature_on_random_draws() {
    let mut rng = rng(0x5eed_c0de);
    let mut draws = 0;
    let mut worst: f64 = 0.0;
    while draws < 100 {
        let ka = KINDS[rng.random_range(0..2)];
        let kb = KINDS[rng.random_range(0..2)];
        let omega: f64 = rng.random_range(0.3..2.0);
        let omega_b: f64 = rng.random_range(0.3..2.0);
        let t: f64 = rng.random_range(0.2..3.0);
        if !clear_of_caustic(ka, omega * t) || !clear_of_caustic(kb, omega_b * t) {
            continue;
        }
        if ka == kb && (omega * omega - omega_b * omega_b).abs() < 1e-3 * (omega * omega + omega_b * omega_b) {
            continue;
        }
        let dx0: f64 = rng.random_range(-2.0..2.0);
        let dxf: f64 = rng.random_range(-2.0..2.0);
        let s = rng.random_range(0.0..t);
        let pair = source_convolution(kb, omega_b, ka, omega, t, dx0, dxf, s).unwrap();
        let x = |u: f64| free_by_hand(ka, omega, t, dx0, dxf, u);
        let (partial, _) = adaptive_integral(|u| x(u) * sine(kb, omega_b * (s - u)), 0.0, s, 1e-14);
        let (full, _) = adaptive_integral(|u| x(u) * sine(kb, omega_b * (t - u)), 0.0, t, 1e-14);
        for (got, want) in [(pair.partial, partial), (pair.full, full)] {
            let rel = (got - want).abs() / want.abs();
            worst = worst.max(rel);
            assert!(rel <= 1e-10, "draw {draws}: {ka:?}/{kb:?} ω={omega} Ω={omega_b} t={t} s={s}: {got} vs {want}");
        }
        draws += 1;
    }
    eprintln!("worst relative convolution error over {draws} draws: {worst:e}");
}

fn shooting_reference(cfg: &ModelConfig, traj: &TrajectorySpec, t: f64, s: f64) -> (f64, f64) {
    let ka = cfg.case.a_kind();
    let kb = cfg.case.b_kind();
    let omega = cfg.omega;
    let source = move |u: f64| match traj.delta_x {
        DeltaXConvention::ReleasedFromRest => traj.dx0 * cosine(ka, omega * u),
        DeltaXConvention::FixedEndpoints => free_by_hand(ka, omega, t, traj.dx0, traj.dxf, u),
    };
    let kappa = match kb {
        OscillatorKind::Harmonic => -1.0,
        OscillatorKind::Inverted => 1.0,
    };
    let coupling = cfg.lambda / cfg.m_b;
    shoot(kappa * cfg.omega_b.powi(2), |u| coupling * source(u), t, traj.dq0, traj.dqf, s)
}

#[test]
fn delta_q_matches_shooting_for_case_a_reference() {
    let cfg = ModelConfig { omega: 1.0, omega_b: 1.0, lambda: 0.1, ..ModelConfig::default() }
        .with_case(CompositeCase::new(CaseLabel::A));
    for convention in [DeltaXConvention::ReleasedFromRest, DeltaXConvention::FixedEndpoints] {
        let traj = TrajectorySpec::with_separation(1.0).with_convention(convention);
        let (q, v) = delta_q_trajectory(&cfg, &traj, 2.0, 1.0).unwrap();
        let (q_ref, v_ref) = shooting_reference(&cfg, &traj, 2.0, 1.0);
        assert!((q - q_ref).abs() < 1e-8, "{q} vs {q_ref}");
        assert!((v - v_ref).abs() < 1e-8, "{v} vs {v_ref}");
    }
}

#[test]
fn delta_q_matches_shooting_on_random_draws() {
    let mut rng = rng(42);
    let mut draws = 0;
    while draws < 20 {
        let label = CaseLabel::ALL[rng.random_range(0..4)];
        let cfg = ModelConfig {
            omega: rng.random_range(0.3..2.0),
            omega_b: rng.random_range(0.3..2.0),
            lambda: rng.random_range(-0.5..0.5),
            m_b: rng.random_range(0.5..2.0),
            ..ModelConfig::default()
        }
        .with_case(CompositeCase::new(label));
        let t: f64 = rng.random_range(0.3..2.5);
        if !clear_of_caustic(cfg.case.b_kind(), cfg.omega_b * t) || !clear_of_caustic(cfg.case.a_kind(), cfg.omega * t)
        {
            continue;
        }
        let convention =
            if rng.random_bool(0.5) { DeltaXConvention::ReleasedFromRest } else { DeltaXConvention::FixedEndpoints };
        let traj = TrajectorySpec {
            dx0: rng.random_range(-2.0..2.0),
            dxf: rng.random_range(-2.0..2.0),
            dq0: rng.random_range(-1.0..1.0),
            dqf: rng.random_range(-1.0..1.0),
            ..TrajectorySpec::with_separation(1.0)
        }
        .with_convention(convention);
        let s = rng.random_range(0.0..t);
        let (q, v) = delta_q_trajectory(&cfg, &traj, t, s).unwrap();
        let (q_ref, v_ref) = shooting_reference(&cfg, &traj, t, s);
        assert!((q - q_ref).abs() < 1e-8, "draw {draws} ({label}): {q} vs {q_ref}");
        assert!((v - v_ref).abs() < 1e-8, "draw {draws} ({label}): {v} vs {v_ref}");
        draws += 1;
    }
}

#[test]
fn free_trajectory_matches_hand_evaluation() {
    let mut rng = rng(7);
    for _ in 0..200 {
        let kind = KINDS[rng.random_range(0..2)];
        let freq: f64 = rng.random_range(0.1..2.0);
        let t: f64 = rng.random_range(0.1..1.5);
        let (x0, xf): (f64, f64) = (rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
        let s = rng.random_range(0.0..t);
        let got = free_trajectory(kind, freq, t, x0, xf, s).unwrap();
        let want = free_by_hand(kind, freq, t, x0, xf, s);
        assert!((got - want).abs() <= 1e-12 * want.abs().max(1.0));
    }
}

#[test]
fn delta_q_is_jointly_linear() {
    let cfg = common::reference_model(CaseLabel::C, 0.0);
    let a = TrajectorySpec { dq0: 0.2, dqf: -0.4, ..TrajectorySpec::with_separation(1.5) }
        .with_convention(DeltaXConvention::FixedEndpoints);
    let b = TrajectorySpec { dx0: -0.7, dxf: 2.0, dq0: 1.1, dqf: 0.3, ..a };
    let sum = TrajectorySpec { dx0: a.dx0 + b.dx0, dxf: a.dxf + b.dxf, dq0: a.dq0 + b.dq0, dqf: a.dqf + b.dqf, ..a };
    for s in [0.1, 0.6, 1.2] {
        let (qa, va) = delta_q_trajectory(&cfg, &a, 1.3, s).unwrap();
        let (qb, vb) = delta_q_trajectory(&cfg, &b, 1.3, s).unwrap();
        let (qs, vs) = delta_q_trajectory(&cfg, &sum, 1.3, s).unwrap();
        assert!((qs - qa - qb).abs() < 1e-12);
        assert!((vs - va - vb).abs() < 1e-12);
    }
}
