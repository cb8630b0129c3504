// Copyright 2026 The decohere Authors
// SPDX-License-Identifier: Apache-2.0

//! Noise kernel, diffusion coefficient `D(t)` and decoherence factor `Γ(t)`.

use rayon::prelude::*;

use crate::classical::{delta_x_source, DeltaQPath};
use crate::error::{Error, Result};
use crate::model::{KernelPrefactor, ModelConfig, ThermalRate, TimeGrid, TrajectorySpec};
use crate::quadrature::{cumulative, integrate, OuterRule, QuadSettings};

/// Largest exponent magnitude passed to `exp` when forming `Γ`.
pub const EXPONENT_CLAMP: f64 = 700.0;

/// Ohmic bath spectral density with Gaussian cutoff,
/// `2·m·γ₀·ω̃·exp(−ω̃²/Λ²)`.
pub fn spectral_density(omega_tilde: f64, m: f64, gamma0: f64, cutoff: f64) -> f64 {
    2.0 * m * gamma0 * omega_tilde * (-(omega_tilde / cutoff).powi(2)).exp()
}

fn kernel_scale(cfg: &ModelConfig) -> f64 {
    cfg.lambda * cfg.lambda * cfg.sigma / (32.0 * cfg.hbar)
}

/// `ν̃(Δs) = (λ²σ/32ħ)·cosh(ΩΔs)` for an inverted `B`, `cos` for a harmonic one.
pub fn noise_kernel(cfg: &ModelConfig, delta_s: f64) -> f64 {
    kernel_scale(cfg) * cfg.case.b_kind().cosine(cfg.omega_b * delta_s)
}

/// One sample of `D(t)` split into its two addends.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DiffusionPoint {
    pub total: f64,
    pub thermal: f64,
    pub kernel: f64,
}

impl DiffusionPoint {
    fn new(thermal: f64, kernel: f64) -> Self {
        Self { total: thermal + kernel, thermal, kernel }
    }
}

/// Diffusion coefficient at horizon `t`.
///
/// The thermal addend is `(2γ₀k_BT/ħΩ²)·λ²·∫₀ᵗ Δq·R ds`, where the rate `R`
/// is chosen by [`ThermalRate`]; the kernel addend is `∫₀ᵗ ν̃(t − s)·Δx(s) ds`.
pub fn diffusion_coefficient(
    cfg: &ModelConfig,
    traj: &TrajectorySpec,
    t: f64,
    quad: &QuadSettings,
) -> Result<DiffusionPoint> {
    cfg.validate()?;
    traj.validate()?;
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::Domain(format!("time must be finite and >= 0, got {t}")));
    }
    if t == 0.0 {
        return Ok(DiffusionPoint::default());
    }

    let (source, _) = delta_x_source(cfg, traj, t)?;
    let extra = match cfg.kernel_prefactor {
        KernelPrefactor::Single => 1.0,
        KernelPrefactor::Double => kernel_scale(cfg),
    };
    let kernel = extra * integrate(|s| noise_kernel(cfg, t - s) * source.value(s), 0.0, t, quad)?.value;

    let bath = cfg.gamma0 * cfg.kb_t;
    let thermal = if bath == 0.0 || cfg.lambda == 0.0 {
        0.0
    } else {
        let path = DeltaQPath::new(cfg, traj, t)?;
        let scale = 2.0 * bath * cfg.lambda * cfg.lambda / (cfg.hbar * cfg.omega_b * cfg.omega_b);
        let integral = match cfg.thermal_rate {
            ThermalRate::HorizonRate => integrate(|s| path.value(s) * path.horizon_rate(s), 0.0, t, quad)?.value,
            ThermalRate::PathSlope => integrate(|s| path.value(s) * path.slope(s), 0.0, t, quad)?.value,
        };
        scale * integral
    };

    let point = DiffusionPoint::new(thermal, kernel);
    if point.total.is_finite() {
        Ok(point)
    } else {
        Err(Error::NonFinite("diffusion coefficient"))
    }
}

/// `D` sampled on a time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct DiffusionSeries {
    pub grid: TimeGrid,
    pub d_values: Vec<f64>,
    pub thermal_part: Vec<f64>,
    pub kernel_part: Vec<f64>,
}

/// Evaluates [`diffusion_coefficient`] at every grid point in parallel.
pub fn diffusion_series(
    cfg: &ModelConfig,
    traj: &TrajectorySpec,
    grid: &TimeGrid,
    quad: &QuadSettings,
) -> Result<DiffusionSeries> {
    let points: Vec<DiffusionPoint> = (0..grid.len())
        .into_par_iter()
        .map(|k| diffusion_coefficient(cfg, traj, grid.time(k), quad))
        .collect::<Result<_>>()?;
    Ok(DiffusionSeries {
        grid: *grid,
        d_values: points.iter().map(|p| p.total).collect(),
        thermal_part: points.iter().map(|p| p.thermal).collect(),
        kernel_part: points.iter().map(|p| p.kernel).collect(),
    })
}

/// `Γ(t_k) = exp(−∫₀^{t_k} D ds)` on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct DecoherenceSeries {
    pub grid: TimeGrid,
    pub d_values: Vec<f64>,
    pub cumulative_d: Vec<f64>,
    pub gamma_values: Vec<f64>,
    /// Set when some `|cumulative_d|` exceeded [`EXPONENT_CLAMP`].
    pub clamped: bool,
    pub rule: OuterRule,
}

impl DecoherenceSeries {
    /// Builds the series from precomputed rates, e.g. synthetic ones.
    pub fn from_rates(grid: &TimeGrid, d_values: Vec<f64>, rule: OuterRule) -> Result<Self> {
        if d_values.len() != grid.len() {
            return Err(Error::Domain(format!(
                "expected {} rate samples for the grid, got {}",
                grid.len(),
                d_values.len()
            )));
        }
        if d_values.iter().any(|d| !d.is_finite()) {
            return Err(Error::NonFinite("diffusion rate sample"));
        }
        let cumulative_d = cumulative(&d_values, grid.spacing(), rule);
        let clamped = cumulative_d.iter().any(|c| c.abs() > EXPONENT_CLAMP);
        let gamma_values = cumulative_d.iter().map(|c| (-c.clamp(-EXPONENT_CLAMP, EXPONENT_CLAMP)).exp()).collect();
        Ok(Self { grid: *grid, d_values, cumulative_d, gamma_values, clamped, rule })
    }

    pub fn from_diffusion(series: &DiffusionSeries, rule: OuterRule) -> Result<Self> {
        Self::from_rates(&series.grid, series.d_values.clone(), rule)
    }

    pub fn final_gamma(&self) -> f64 {
        *self.gamma_values.last().expect("grid has at least three points")
    }
}

/// [`diffusion_series`] followed by cumulative integration with `quad.outer`.
pub fn decoherence_factor(
    cfg: &ModelConfig,
    traj: &TrajectorySpec,
    grid: &TimeGrid,
    quad: &QuadSettings,
) -> Result<DecoherenceSeries> {
    let series = diffusion_series(cfg, traj, grid, quad)?;
    DecoherenceSeries::from_rates(grid, series.d_values, quad.outer)
}
