// Copyright 2026 The decohere Authors
// SPDX-License-Identifier: Apache-2.0

//! Decoherence of an oscillator `A` that reaches a hot Ohmic bath only through
//! a second oscillator `B`.
//!
//! Either oscillator may be harmonic or inverted, which gives the four
//! compositions (a)–(d). The engine evaluates the closed-form classical
//! difference trajectories, the two-part diffusion coefficient `D(t)`, the
//! decoherence factor `Γ(t) = exp(-∫D)`, and decoherence-time estimates. A
//! position-grid master-equation integrator is provided as an independent
//! check on the dephasing produced by `D(t)`.
//!
//! Natural units (`ħ = k_B = 1`) are the default, but both constants are
//! carried explicitly in [`ModelConfig`].

pub mod classical;
pub mod diffusion;
mod error;
pub mod model;
pub mod oracle;
pub mod quadrature;
pub mod sweep;
pub mod timescales;

pub use classical::{
    delta_q_trajectory, free_trajectory, free_trajectory_derivative, source_convolution, ConvolutionPair, DeltaQPath,
    ModeFunctions, ModePair,
};
pub use diffusion::{
    decoherence_factor, diffusion_coefficient, diffusion_series, noise_kernel, spectral_density, DecoherenceSeries,
    DiffusionPoint, DiffusionSeries,
};
pub use error::{Error, Result, Violation};
pub use model::{
    case_from_label, validate_config, CaseLabel, CompositeCase, DeltaXConvention, KernelPrefactor, LyapunovRule,
    ModelConfig, OscillatorKind, ThermalRate, TimeGrid, TrajectorySpec,
};
pub use oracle::{
    evolve_density_matrix, fringe_visibility, BranchPair, CoefficientSet, DensityMatrixGrid, OracleSettings,
    OracleTrajectory,
};
pub use quadrature::{OuterRule, QuadSettings};
pub use sweep::{emit_outputs, load_config, run_sweep, FileManifest, RunConfig, SweepReport};
pub use timescales::{
    critical_width, harmonic_decoherence_time, harmonic_time_from_series, squeezing_width, threshold_crossing_time,
    unstable_decoherence_time, LyapunovSpec,
};
