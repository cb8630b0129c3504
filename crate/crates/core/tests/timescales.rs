// Copyright 2026 The decohere Authors
// SPDX-License-Identifier: Apache-2.0

mod common;

use common::reference_model;
use decohere_core::{
    decoherence_factor, harmonic_decoherence_time, threshold_crossing_time, CaseLabel, DecoherenceSeries, Error,
    LyapunovSpec, QuadSettings, TimeGrid, TrajectorySpec,
};

fn grid() -> TimeGrid {
    TimeGrid::new(2.5, 2000).unwrap()
}

#[test]
fn harmonic_criterion_agrees_with_rescaled_threshold() {
    let cfg = reference_model(CaseLabel::C, 1.0);
    let traj = TrajectorySpec::for_config(&cfg);
    let quad = QuadSettings::default();
    let l = traj.separation();
    let t_d = harmonic_decoherence_time(&cfg, &traj, l, &grid(), &quad).unwrap();

    let series = decoherence_factor(&cfg, &traj, &grid(), &quad).unwrap();
    let scaled: Vec<f64> = series.d_values.iter().map(|d| d * l * l).collect();
    let rebuilt = DecoherenceSeries::from_rates(&grid(), scaled, quad.outer).unwrap();
    let t_cross = threshold_crossing_time(&rebuilt, (-1f64).exp()).unwrap();
    assert!((t_d - t_cross).abs() <= grid().spacing(), "{t_d} vs {t_cross}");
}

#[test]
fn harmonic_criterion_reports_attained_maximum() {
    let cfg = reference_model(CaseLabel::A, 0.0);
    let traj = TrajectorySpec::for_config(&cfg);
    let short = TimeGrid::new(0.05, 50).unwrap();
    match harmonic_decoherence_time(&cfg, &traj, 1e-3, &short, &QuadSettings::default()) {
        Err(Error::NotReached { t_max, attained }) => {
            assert_eq!(t_max, 0.05);
            assert!(attained > 0.0 && attained < 1.0);
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn unstable_environment_decoheres_case_d_before_b() {
    let quad = QuadSettings::default();
    let crossing = |label| {
        let cfg = reference_model(label, 0.0);
        let series = decoherence_factor(&cfg, &TrajectorySpec::for_config(&cfg), &grid(), &quad).unwrap();
        threshold_crossing_time(&series, 0.01)
    };
    let (b, d) = (crossing(CaseLabel::B).unwrap(), crossing(CaseLabel::D).unwrap());
    assert!(d < b, "d={d} b={b}");
}

#[test]
fn zero_coupling_never_crosses() {
    let mut cfg = reference_model(CaseLabel::D, 100.0);
    cfg.lambda = 0.0;
    let series =
        decoherence_factor(&cfg, &TrajectorySpec::for_config(&cfg), &grid(), &QuadSettings::default()).unwrap();
    assert_eq!(threshold_crossing_time(&series, 0.01), None);
}

#[test]
fn lyapunov_estimate_is_built_from_plateau() {
    let cfg = reference_model(CaseLabel::D, 1.0);
    let series =
        decoherence_factor(&cfg, &TrajectorySpec::for_config(&cfg), &grid(), &QuadSettings::default()).unwrap();
    let spec = LyapunovSpec::from_series(&series, cfg.lambda_lyap()).unwrap();
    assert_eq!(spec.lambda_lyap, cfg.omega);
    assert!(spec.d_reference > 0.0);
    assert!(spec.t_max_onset >= 0.0 && spec.t_max_onset < 2.5);
    let t = spec.decoherence_time(cfg.sigma_p0).unwrap();
    let crossing = threshold_crossing_time(&series, 0.01).unwrap();
    assert!((t - crossing).abs() / crossing < 0.3, "{t} vs {crossing}");
}

#[test]
fn case_c_recoherence_is_reported() {
    let quad = QuadSettings::default();
    for g in [0.0, 1.0] {
        let cfg = reference_model(CaseLabel::C, g);
        let series = decoherence_factor(&cfg, &TrajectorySpec::for_config(&cfg), &grid(), &quad).unwrap();
        let rises = series.gamma_values.windows(2).filter(|w| w[1] > w[0]).count();
        eprintln!("case c, γ₀k_BT = {g}: Γ increases on {rises} of {} grid intervals", grid().n_steps());
    }
}
