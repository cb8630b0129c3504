// Copyright 2026 The decohere Authors
// SPDX-License-Identifier: Apache-2.0

//! Decoherence-time estimators.
//!
//! Unstable `A` (cases b, d): the momentum width of the packet grows as
//! `σ_p0·e^{Λt}` and decoherence sets in once it reaches the critical width
//! `σ_c = √(2D/Λ)`. Harmonic `A` (cases a, c): the first time at which
//! `L²·∫₀ᵗ D ds` reaches one. Both can be compared against the plain
//! threshold crossing of `Γ(t)`.

use crate::diffusion::{decoherence_factor, DecoherenceSeries};
use crate::error::{Error, Result};
use crate::model::{ModelConfig, TimeGrid, TrajectorySpec};
use crate::quadrature::{interpolate_cumulative, QuadSettings};

/// Fraction of the grid (from the end) whose median defines the plateau rate.
const PLATEAU_FRACTION: f64 = 0.2;
/// Onset is the first sample with `|D|` above this fraction of the plateau.
const ONSET_FRACTION: f64 = 0.05;

/// `σ_p(t) = σ_p0·e^{Λt}`.
pub fn squeezing_width(sigma_p0: f64, lambda_lyap: f64, t: f64) -> f64 {
    sigma_p0 * (lambda_lyap * t).exp()
}

/// `σ_c = √(2D/Λ)`.
pub fn critical_width(d_reference: f64, lambda_lyap: f64) -> f64 {
    (2.0 * d_reference / lambda_lyap).sqrt()
}

/// `t_D = t_onset + ln(σ_p0/σ_c)/Λ`. Values below `t_onset` are returned as is.
pub fn unstable_decoherence_time(sigma_p0: f64, t_max_onset: f64, sigma_c: f64, lambda_lyap: f64) -> Result<f64> {
    if !(sigma_c > 0.0 && sigma_c.is_finite()) {
        return Err(Error::Domain(format!("critical width must be finite and > 0, got {sigma_c}")));
    }
    if !(sigma_p0 > 0.0 && sigma_p0.is_finite()) {
        return Err(Error::Domain(format!("initial momentum width must be finite and > 0, got {sigma_p0}")));
    }
    if !(lambda_lyap > 0.0 && lambda_lyap.is_finite()) {
        return Err(Error::Domain(format!("Lyapunov exponent must be finite and > 0, got {lambda_lyap}")));
    }
    Ok(t_max_onset + (sigma_p0 / sigma_c).ln() / lambda_lyap)
}

/// Inputs to the unstable-oscillator estimate read off a `D(t)` series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LyapunovSpec {
    pub lambda_lyap: f64,
    /// Time at which decoherence becomes effective.
    pub t_max_onset: f64,
    /// Plateau diffusion rate.
    pub d_reference: f64,
}

impl LyapunovSpec {
    /// `d_reference` is the median of `D` over the last fifth of the grid;
    /// the onset is the first sample where `|D|` exceeds 5% of it.
    pub fn from_series(series: &DecoherenceSeries, lambda_lyap: f64) -> Result<Self> {
        if !(lambda_lyap > 0.0 && lambda_lyap.is_finite()) {
            return Err(Error::Domain(format!("Lyapunov exponent must be finite and > 0, got {lambda_lyap}")));
        }
        let n_steps = series.grid.n_steps();
        let start = ((1.0 - PLATEAU_FRACTION) * n_steps as f64).floor() as usize;
        let mut tail = series.d_values[start..].to_vec();
        tail.sort_by(f64::total_cmp);
        let mid = tail.len() / 2;
        let d_reference = if tail.len() % 2 == 1 { tail[mid] } else { 0.5 * (tail[mid - 1] + tail[mid]) };
        if d_reference <= 0.0 {
            return Err(Error::Domain(format!("plateau diffusion rate must be > 0, got {d_reference}")));
        }
        let onset = series
            .d_values
            .iter()
            .position(|d| d.abs() > ONSET_FRACTION * d_reference)
            .expect("the plateau median itself exceeds the onset level");
        Ok(Self { lambda_lyap, t_max_onset: series.grid.time(onset), d_reference })
    }

    pub fn critical_width(&self) -> f64 {
        critical_width(self.d_reference, self.lambda_lyap)
    }

    pub fn decoherence_time(&self, sigma_p0: f64) -> Result<f64> {
        unstable_decoherence_time(sigma_p0, self.t_max_onset, self.critical_width(), self.lambda_lyap)
    }
}

/// First time with `Γ ≤ ε`, linearly interpolated between grid points.
///
/// # Panics
///
/// When `epsilon` is not inside `(0, 1)`.
pub fn threshold_crossing_time(series: &DecoherenceSeries, epsilon: f64) -> Option<f64> {
    assert!(epsilon > 0.0 && epsilon < 1.0, "threshold must lie in (0, 1), got {epsilon}");
    let gamma = &series.gamma_values;
    let k = gamma.iter().position(|&g| g <= epsilon)?;
    if k == 0 {
        return Some(series.grid.time(0));
    }
    let (g0, g1) = (gamma[k - 1], gamma[k]);
    let (t0, t1) = (series.grid.time(k - 1), series.grid.time(k));
    Some(t0 + (g0 - epsilon) / (g0 - g1) * (t1 - t0))
}

/// First root of `L²·∫₀ᵗ D ds = 1` on an existing series.
pub fn harmonic_time_from_series(series: &DecoherenceSeries, separation: f64) -> Result<f64> {
    if !(separation > 0.0 && separation.is_finite()) {
        return Err(Error::Domain(format!("separation must be finite and > 0, got {separation}")));
    }
    let scale = separation * separation;
    let cum = &series.cumulative_d;
    let Some(k) = cum.iter().position(|c| scale * c >= 1.0) else {
        let attained = cum.iter().fold(f64::NEG_INFINITY, |m, c| m.max(scale * c));
        return Err(Error::NotReached { t_max: series.grid.t_max(), attained });
    };
    if k == 0 {
        return Ok(0.0);
    }
    let h = series.grid.spacing();
    let cell = k - 1;
    let f = |theta: f64| scale * interpolate_cumulative(&series.d_values, cum, h, cell, theta) - 1.0;
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if f(mid) >= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(series.grid.time(cell) + 0.5 * (lo + hi) * h)
}

/// Harmonic-oscillator decoherence time: first `t` with `L²·∫₀ᵗ D ds = 1`.
pub fn harmonic_decoherence_time(
    cfg: &ModelConfig,
    traj: &TrajectorySpec,
    separation: f64,
    grid: &TimeGrid,
    quad: &QuadSettings,
) -> Result<f64> {
    let series = decoherence_factor(cfg, traj, grid, quad)?;
    harmonic_time_from_series(&series, separation)
}
