// Copyright 2026 The decohere Authors
// SPDX-License-Identifier: Apache-2.0

use rayon::prelude::*;

use crate::diffusion::{diffusion_series, DecoherenceSeries, DiffusionSeries};
use crate::error::{Error, Result};
use crate::model::{CompositeCase, ModelConfig, OscillatorKind};
use crate::oracle::{evolve_density_matrix, fringe_visibility, BranchPair, CoefficientSet, DensityMatrixGrid};
use crate::timescales::{harmonic_time_from_series, threshold_crossing_time, LyapunovSpec};

use super::RunConfig;

/// Everything computed for one `(case, γ₀k_BT)` cell.
#[derive(Debug, Clone, PartialEq)]
pub struct CellResult {
    pub diffusion: DiffusionSeries,
    pub decoherence: DecoherenceSeries,
    pub t_threshold: Option<f64>,
    /// Estimator matching the kind of `A`: the Lyapunov route for an
    /// inverted `A`, the `L²∫D = 1` criterion for a harmonic one.
    pub t_formula: Option<f64>,
    /// Relative gap between oracle visibility and the rescaled engine `Γ`.
    pub oracle_agreement: Option<f64>,
}

#[derive(Debug)]
pub struct CellReport {
    pub case: CompositeCase,
    pub gamma0_kt: f64,
    pub outcome: Result<CellResult>,
}

/// Cells sorted by case, then temperature.
#[derive(Debug)]
pub struct SweepReport {
    pub cells: Vec<CellReport>,
    pub epsilon: f64,
    pub oracle: bool,
}

impl SweepReport {
    pub fn failures(&self) -> impl Iterator<Item = &CellReport> {
        self.cells.iter().filter(|c| c.outcome.is_err())
    }

    pub fn all_succeeded(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn cell(&self, case: CompositeCase, gamma0_kt: f64) -> Option<&CellReport> {
        self.cells.iter().find(|c| c.case == case && c.gamma0_kt == gamma0_kt)
    }
}

fn formula_time(cfg: &ModelConfig, config: &RunConfig, series: &DecoherenceSeries) -> Option<f64> {
    match cfg.case.a_kind() {
        OscillatorKind::Harmonic => harmonic_time_from_series(series, config.traj.separation()).ok(),
        OscillatorKind::Inverted => LyapunovSpec::from_series(series, cfg.lambda_lyap())
            .and_then(|spec| spec.decoherence_time(cfg.sigma_p0))
            .ok(),
    }
}

/// Runs the frozen-kinetic oracle up to the first grid time where the
/// rescaled exponent `(M/ħ)L²∫D` reaches `ln 2` (or the end of the grid) and
/// returns `|V − Γ^{(M/ħ)L²}| / Γ^{(M/ħ)L²}` there.
fn oracle_agreement(cfg: &ModelConfig, config: &RunConfig, series: &DecoherenceSeries) -> Result<f64> {
    let sep = config.traj.separation();
    let scale = cfg.m_a / cfg.hbar * sep * sep;
    let target = 2f64.ln();
    let k = series.cumulative_d.iter().position(|c| scale * c >= target).unwrap_or(series.grid.n_steps()).max(1);
    let t_eval = series.grid.time(k);
    let expected = (-scale * series.cumulative_d[k]).exp();

    let branches = BranchPair::for_config(cfg, &config.traj);
    let initial = DensityMatrixGrid::superposition(&branches, &config.oracle_settings)?;
    let coeffs = CoefficientSet::from_engine(cfg, &config.traj, &config.quad);
    let run = evolve_density_matrix(cfg, &coeffs, &initial, t_eval, series.grid.spacing(), &config.oracle_settings)?;
    let visibility = fringe_visibility(run.final_state(), &branches)?;
    if expected <= 0.0 {
        return Err(Error::NonFinite("rescaled decoherence factor"));
    }
    Ok((visibility - expected).abs() / expected)
}

fn run_cell(config: &RunConfig, case: CompositeCase, gamma0_kt: f64) -> Result<CellResult> {
    let cfg = config.cell_model(case, gamma0_kt);
    let diffusion = diffusion_series(&cfg, &config.traj, &config.grid, &config.quad)?;
    let decoherence = DecoherenceSeries::from_diffusion(&diffusion, config.quad.outer)?;
    let t_threshold = threshold_crossing_time(&decoherence, config.epsilon);
    let t_formula = formula_time(&cfg, config, &decoherence);
    let oracle_agreement = if config.oracle { Some(oracle_agreement(&cfg, config, &decoherence)?) } else { None };
    Ok(CellResult { diffusion, decoherence, t_threshold, t_formula, oracle_agreement })
}

/// Evaluates every `(case, temperature)` cell in parallel. A failing cell is
/// recorded in its report entry and does not affect the others.
pub fn run_sweep(config: &RunConfig) -> SweepReport {
    let jobs: Vec<(CompositeCase, f64)> =
        config.cases.iter().flat_map(|&c| config.gamma0_kt.iter().map(move |&g| (c, g))).collect();
    let mut cells: Vec<CellReport> = jobs
        .into_par_iter()
        .map(|(case, gamma0_kt)| CellReport { case, gamma0_kt, outcome: run_cell(config, case, gamma0_kt) })
        .collect();
    cells.sort_by(|a, b| a.case.cmp(&b.case).then(a.gamma0_kt.total_cmp(&b.gamma0_kt)));
    SweepReport { cells, epsilon: config.epsilon, oracle: config.oracle }
}
