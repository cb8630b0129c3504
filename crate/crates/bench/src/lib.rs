// Copyright 2026 The decohere Authors
// SPDX-License-Identifier: Apache-2.0

//! Shared fixtures for the benchmarks.

use decohere_core::{
    BranchPair, CaseLabel, CompositeCase, DensityMatrixGrid, ModelConfig, OracleSettings, TimeGrid, TrajectorySpec,
};

/// The ω = 2Ω parameter set used by the shipped `fig1-right` config.
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

pub fn reference_trajectory(cfg: &ModelConfig) -> TrajectorySpec {
    TrajectorySpec::for_config(cfg)
}

pub fn reference_grid(n_steps: usize) -> TimeGrid {
    TimeGrid::new(2.5, n_steps).expect("static grid is valid")
}

/// Two-branch initial state on a grid of `points` nodes.
pub fn oracle_state(cfg: &ModelConfig, points: usize, freeze_kinetic: bool) -> (DensityMatrixGrid, OracleSettings) {
    let settings = OracleSettings { points, freeze_kinetic, ..OracleSettings::default() };
    let branches = BranchPair::for_config(cfg, &reference_trajectory(cfg));
    let state = DensityMatrixGrid::superposition(&branches, &settings).expect("static packet is valid");
    (state, settings)
}
