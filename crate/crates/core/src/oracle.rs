// Copyright 2026 The decohere Authors
// SPDX-License-Identifier: Apache-2.0

//! Grid integrator for the reduced master equation of `A`.
//!
//! The density matrix `ρ(x, x′)` lives on a uniform grid with Dirichlet
//! walls. Each step is Strang-split:
//!
//! ```text
//! N(dt/2) · P(dt/2) · K(dt) · P(dt/2) · N(dt/2)
//! ```
//!
//! `K` is the exact kinetic propagator of the discrete Laplacian (sine
//! basis), `P` the diagonal potential phase, and `N` the non-unitary
//! coefficient terms: the diffusion damping `exp(−(M/ħ)(x − x′)²·D·h)` with
//! `D` at the half-step midpoint, and the two first-derivative terms by an
//! explicit midpoint step. An absorbing cosine taper at the walls removes
//! escaping probability, which is tracked separately.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use ndarray::{Array1, Array2, Zip};
use num_complex::Complex64;

use crate::diffusion::diffusion_coefficient;
use crate::error::{Error, Result};
use crate::model::{ModelConfig, OscillatorKind, TrajectorySpec};
use crate::quadrature::QuadSettings;

pub type CoefficientFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

fn zero_fn() -> CoefficientFn {
    Arc::new(|_| 0.0)
}

/// Time-dependent coefficients of the master equation.
#[derive(Clone)]
pub struct CoefficientSet {
    /// Frequency shift `δΩ²(t)`.
    pub delta_omega2: CoefficientFn,
    /// Dissipation rate.
    pub gamma_diss: CoefficientFn,
    /// Diffusion coefficient `D(t)`.
    pub d_diff: CoefficientFn,
    /// Anomalous-diffusion factor `f(t)`.
    pub f_anom: CoefficientFn,
}

impl Default for CoefficientSet {
    fn default() -> Self {
        Self { delta_omega2: zero_fn(), gamma_diss: zero_fn(), d_diff: zero_fn(), f_anom: zero_fn() }
    }
}

impl fmt::Debug for CoefficientSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoefficientSet").finish_non_exhaustive()
    }
}

impl CoefficientSet {
    pub fn with_diffusion<F>(d_diff: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self { d_diff: Arc::new(d_diff), ..Self::default() }
    }

    /// `D(t)` from the diffusion engine; evaluation failures surface as
    /// non-finite coefficients and stop the integrator.
    pub fn from_engine(cfg: &ModelConfig, traj: &TrajectorySpec, quad: &QuadSettings) -> Self {
        let (cfg, traj, quad) = (cfg.clone(), *traj, *quad);
        Self::with_diffusion(move |t| diffusion_coefficient(&cfg, &traj, t, &quad).map_or(f64::NAN, |p| p.total))
    }
}

/// Two superposed Gaussian branches of equal position width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchPair {
    pub centres: (f64, f64),
    pub width: f64,
}

impl BranchPair {
    /// Branches at `±L/2` with position width `σ`.
    pub fn for_config(cfg: &ModelConfig, traj: &TrajectorySpec) -> Self {
        let half = 0.5 * traj.separation();
        Self { centres: (-half, half), width: cfg.sigma }
    }

    pub fn separation(&self) -> f64 {
        (self.centres.1 - self.centres.0).abs()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleSettings {
    pub points: usize,
    /// Margin beyond the outer branch centres, in packet widths.
    pub span_widths: f64,
    /// Fraction of the grid on each side covered by the absorbing taper.
    pub taper_fraction: f64,
    /// Drops the kinetic term (infinitely heavy `A`).
    pub freeze_kinetic: bool,
    /// Allowed drift of trace plus absorbed probability, per unit time.
    pub trace_tol: f64,
    pub hermiticity_tol: f64,
    /// Keep every `record_every`-th state (0 keeps only the final one).
    pub record_every: usize,
}

impl Default for OracleSettings {
    fn default() -> Self {
        Self {
            points: 256,
            span_widths: 8.0,
            taper_fraction: 0.08,
            freeze_kinetic: false,
            trace_tol: 1e-8,
            hermiticity_tol: 1e-10,
            record_every: 0,
        }
    }
}

/// `ρ(x_i, x′_j)` at one instant.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrixGrid {
    pub x_points: Array1<f64>,
    pub rho: Array2<Complex64>,
    pub time: f64,
    /// Probability removed by the absorbing boundary so far.
    pub absorbed: f64,
}

impl DensityMatrixGrid {
    /// Grid whose spacing places both branch centres exactly on nodes.
    pub fn grid_for(branches: &BranchPair, settings: &OracleSettings) -> Result<Array1<f64>> {
        let n = settings.points;
        if n < 8 || n % 2 != 0 {
            return Err(Error::Domain(format!("oracle grid needs an even number of points >= 8, got {n}")));
        }
        if !(branches.width > 0.0 && branches.width.is_finite()) {
            return Err(Error::Domain(format!("packet width must be finite and > 0, got {}", branches.width)));
        }
        let middle = 0.5 * (branches.centres.0 + branches.centres.1);
        let half_sep = 0.5 * branches.separation();
        let half_cells = 0.5 * (n as f64 - 1.0);
        let wanted_half_span = half_sep + settings.span_widths * branches.width;
        let dx = if half_sep > 0.0 {
            // Nodes sit at middle ± (k + ½)·dx; choose k so ±L/2 land on them.
            let k = (half_sep * half_cells / wanted_half_span - 0.5).round().max(0.0);
            half_sep / (k + 0.5)
        } else {
            wanted_half_span / half_cells
        };
        Ok(Array1::from_shape_fn(n, |j| middle + (j as f64 - half_cells) * dx))
    }

    /// Pure state `ψ ∝ Σ exp(−(x − c)²/(4w²))` over the branch centres,
    /// normalized so that `Σ ρ_ii·dx = 1`.
    pub fn superposition(branches: &BranchPair, settings: &OracleSettings) -> Result<Self> {
        let x_points = Self::grid_for(branches, settings)?;
        let w = branches.width;
        let (c1, c2) = branches.centres;
        let psi: Array1<f64> = x_points.mapv(|x| {
            let g = |c: f64| (-(x - c).powi(2) / (4.0 * w * w)).exp();
            if c1 == c2 {
                g(c1)
            } else {
                g(c1) + g(c2)
            }
        });
        let dx = x_points[1] - x_points[0];
        let norm = psi.iter().map(|p| p * p).sum::<f64>() * dx;
        let psi = psi / norm.sqrt();
        let n = psi.len();
        let rho = Array2::from_shape_fn((n, n), |(i, j)| Complex64::new(psi[i] * psi[j], 0.0));
        Ok(Self { x_points, rho, time: 0.0, absorbed: 0.0 })
    }

    pub fn spacing(&self) -> f64 {
        self.x_points[1] - self.x_points[0]
    }

    pub fn trace(&self) -> f64 {
        self.rho.diag().iter().map(|z| z.re).sum::<f64>() * self.spacing()
    }

    /// `max |ρ − ρ†|`.
    pub fn hermiticity_residual(&self) -> f64 {
        let n = self.rho.nrows();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.rho[[i, j]] - self.rho[[j, i]].conj()).norm());
            }
        }
        worst
    }

    fn nearest(&self, x: f64) -> usize {
        let dx = self.spacing();
        let k = ((x - self.x_points[0]) / dx).round();
        (k.max(0.0) as usize).min(self.x_points.len() - 1)
    }
}

/// States recorded along one evolution; the last entry is the final state.
#[derive(Debug, Clone)]
pub struct OracleTrajectory {
    pub states: Vec<DensityMatrixGrid>,
}

impl OracleTrajectory {
    pub fn final_state(&self) -> &DensityMatrixGrid {
        self.states.last().expect("a trajectory holds at least its final state")
    }
}

struct Stepper {
    x: Array1<f64>,
    dx: f64,
    taper: Array1<f64>,
    /// Kinetic propagator `U` for one full step; `None` when frozen.
    kinetic: Option<Array2<Complex64>>,
    kinetic_adj: Option<Array2<Complex64>>,
    kind: OscillatorKind,
    omega: f64,
    mass_over_hbar: f64,
}

impl Stepper {
    fn new(cfg: &ModelConfig, grid: &DensityMatrixGrid, dt: f64, settings: &OracleSettings) -> Self {
        let x = grid.x_points.clone();
        let n = x.len();
        let dx = grid.spacing();
        let taper_len = ((settings.taper_fraction * n as f64).round() as usize).min(n / 2);
        let taper = Array1::from_shape_fn(n, |j| {
            let depth = taper_len.saturating_sub(j.min(n - 1 - j));
            if taper_len == 0 || depth == 0 {
                1.0
            } else {
                (0.5 * PI * depth as f64 / taper_len as f64).cos().powf(0.125)
            }
        });
        let (kinetic, kinetic_adj) = if settings.freeze_kinetic {
            (None, None)
        } else {
            let (u, u_adj) = kinetic_propagator(n, dx, cfg.hbar / cfg.m_a, dt);
            (Some(u), Some(u_adj))
        };
        Self {
            x,
            dx,
            taper,
            kinetic,
            kinetic_adj,
            kind: cfg.case.a_kind(),
            omega: cfg.omega,
            mass_over_hbar: cfg.m_a / cfg.hbar,
        }
    }

    fn potential_half(&self, rho: &mut Array2<Complex64>, delta_omega2: f64, h: f64) {
        let base = match self.kind {
            OscillatorKind::Harmonic => self.omega * self.omega,
            OscillatorKind::Inverted => -self.omega * self.omega,
        };
        // V/ħ = ½(M/ħ)(±ω² + δΩ²)x²
        let coef = 0.5 * self.mass_over_hbar * (base + delta_omega2);
        let phase: Array1<Complex64> = self.x.mapv(|x| Complex64::from_polar(1.0, -coef * x * x * h));
        Zip::indexed(rho).par_for_each(|(i, j), r| *r *= phase[i] * phase[j].conj());
    }

    fn dephase(&self, rho: &mut Array2<Complex64>, d: f64, h: f64) {
        let scale = self.mass_over_hbar * d * h;
        let x = &self.x;
        Zip::indexed(rho).par_for_each(|(i, j), r| {
            let sep = x[i] - x[j];
            if i != j {
                *r *= (-scale * sep * sep).exp();
            }
        });
    }

    /// `−Γ(x − x′)(∂x − ∂x′)ρ + iΓf(x − x′)(∂x + ∂x′)ρ`, central differences.
    fn advection(&self, rho: &Array2<Complex64>, gamma: f64, gamma_f: f64) -> Array2<Complex64> {
        let n = rho.nrows();
        let inv = 0.5 / self.dx;
        let at = |i: isize, j: isize| -> Complex64 {
            if i < 0 || j < 0 || i >= n as isize || j >= n as isize {
                Complex64::new(0.0, 0.0)
            } else {
                rho[[i as usize, j as usize]]
            }
        };
        let x = &self.x;
        let mut out = Array2::zeros((n, n));
        Zip::indexed(&mut out).par_for_each(|(i, j), o| {
            let (ii, jj) = (i as isize, j as isize);
            let d_x = (at(ii + 1, jj) - at(ii - 1, jj)) * inv;
            let d_xp = (at(ii, jj + 1) - at(ii, jj - 1)) * inv;
            let sep = x[i] - x[j];
            *o = -gamma * sep * (d_x - d_xp) + Complex64::new(0.0, gamma_f * sep) * (d_x + d_xp);
        });
        out
    }

    fn non_unitary_half(&self, rho: &mut Array2<Complex64>, coeffs: &CoefficientSet, t_mid: f64, h: f64) -> Result<()> {
        let d = (coeffs.d_diff)(t_mid);
        let gamma = (coeffs.gamma_diss)(t_mid);
        let f = (coeffs.f_anom)(t_mid);
        for (name, v) in [("diffusion", d), ("dissipation", gamma), ("anomalous diffusion", f)] {
            if !v.is_finite() {
                return Err(Error::IntegratorFailure {
                    time: t_mid,
                    reason: format!("{name} coefficient is not finite ({v})"),
                });
            }
        }
        let gamma_f = gamma * f;
        if gamma != 0.0 || gamma_f != 0.0 {
            let span = self.x[self.x.len() - 1] - self.x[0];
            let courant = h * gamma.abs().max(gamma_f.abs()) * span / self.dx;
            if courant > 1.0 {
                return Err(Error::StepSize { dt: 2.0 * h, bound: 2.0 * h / courant });
            }
            let k1 = self.advection(rho, gamma, gamma_f);
            let half = &*rho + &(k1 * Complex64::new(0.5 * h, 0.0));
            let k2 = self.advection(&half, gamma, gamma_f);
            *rho = &*rho + &(k2 * Complex64::new(h, 0.0));
        }
        if d != 0.0 {
            self.dephase(rho, d, h);
        }
        Ok(())
    }

    fn kinetic_step(&self, rho: &mut Array2<Complex64>) {
        if let (Some(u), Some(u_adj)) = (&self.kinetic, &self.kinetic_adj) {
            *rho = u.dot(&*rho).dot(u_adj);
        }
    }

    fn absorb(&self, rho: &mut Array2<Complex64>) {
        let m = &self.taper;
        Zip::indexed(rho).par_for_each(|(i, j), r| *r *= m[i] * m[j]);
    }
}

/// `U = V·diag(exp(−iE_k·dt/ħ))·V` for the Dirichlet Laplacian on `n`
/// interior nodes, and its adjoint.
fn kinetic_propagator(n: usize, dx: f64, hbar_over_mass: f64, dt: f64) -> (Array2<Complex64>, Array2<Complex64>) {
    let np1 = (n + 1) as f64;
    let norm = (2.0 / np1).sqrt();
    let v = Array2::from_shape_fn((n, n), |(j, k)| norm * (PI * (j + 1) as f64 * (k + 1) as f64 / np1).sin());
    // E_k/ħ = (ħ/2M)·(4/dx²)·sin²(π(k+1)/(2(n+1)))
    let rates: Vec<f64> = (0..n)
        .map(|k| 0.5 * hbar_over_mass * 4.0 / (dx * dx) * (PI * (k + 1) as f64 / (2.0 * np1)).sin().powi(2))
        .collect();
    let vc = v.mapv(|a| Complex64::new(a, 0.0));
    let mut scaled = vc.clone();
    for (k, mut col) in scaled.columns_mut().into_iter().enumerate() {
        col *= Complex64::from_polar(1.0, -rates[k] * dt);
    }
    let u = scaled.dot(&vc);
    let u_adj = u.t().mapv(|z| z.conj());
    (u, u_adj)
}

/// Integrates the master equation from `initial.time` to `t_final`.
///
/// The step is shortened so that a whole number of steps lands on
/// `t_final`.
pub fn evolve_density_matrix(
    cfg: &ModelConfig,
    coeffs: &CoefficientSet,
    initial: &DensityMatrixGrid,
    t_final: f64,
    dt: f64,
    settings: &OracleSettings,
) -> Result<OracleTrajectory> {
    cfg.validate()?;
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::StepSize { dt, bound: f64::INFINITY });
    }
    let span = t_final - initial.time;
    if !(span >= 0.0 && span.is_finite()) {
        return Err(Error::Domain(format!("final time {t_final} precedes the initial time {}", initial.time)));
    }
    let residual = initial.hermiticity_residual();
    if residual > settings.hermiticity_tol {
        return Err(Error::Domain(format!("initial density matrix is not Hermitian (residual {residual:e})")));
    }
    let steps = (span / dt).ceil() as usize;
    let mut states = Vec::new();
    let mut state = initial.clone();
    if steps == 0 {
        states.push(state);
        return Ok(OracleTrajectory { states });
    }
    let dt = span / steps as f64;
    let stepper = Stepper::new(cfg, initial, dt, settings);
    let budget = initial.trace() + initial.absorbed;
    let t0 = initial.time;

    for step in 0..steps {
        let t = t0 + step as f64 * dt;
        let h = 0.5 * dt;
        let rho = &mut state.rho;
        stepper.non_unitary_half(rho, coeffs, t + 0.25 * dt, h)?;
        stepper.potential_half(rho, (coeffs.delta_omega2)(t + 0.25 * dt), h);
        stepper.kinetic_step(rho);
        stepper.potential_half(rho, (coeffs.delta_omega2)(t + 0.75 * dt), h);
        stepper.non_unitary_half(rho, coeffs, t + 0.75 * dt, h)?;

        let before = state.trace();
        stepper.absorb(&mut state.rho);
        state.absorbed += before - state.trace();
        state.time = t0 + (step + 1) as f64 * dt;

        let elapsed = state.time - t0;
        let drift = (state.trace() + state.absorbed - budget).abs();
        if drift > settings.trace_tol * elapsed.max(1.0) * budget.abs().max(1.0) {
            return Err(Error::IntegratorFailure { time: state.time, reason: format!("trace drifted by {drift:e}") });
        }
        let residual = state.hermiticity_residual();
        if residual > settings.hermiticity_tol {
            return Err(Error::IntegratorFailure {
                time: state.time,
                reason: format!("Hermiticity residual {residual:e}"),
            });
        }
        if settings.record_every > 0 && (step + 1) % settings.record_every == 0 && step + 1 != steps {
            states.push(state.clone());
        }
    }
    states.push(state);
    Ok(OracleTrajectory { states })
}

/// `|ρ(c₁, c₂)| / √(ρ(c₁, c₁)·ρ(c₂, c₂))` at the grid nodes nearest the
/// branch centres.
pub fn fringe_visibility(rho: &DensityMatrixGrid, branches: &BranchPair) -> Result<f64> {
    let (i, j) = (rho.nearest(branches.centres.0), rho.nearest(branches.centres.1));
    let (a, b) = (rho.rho[[i, i]].re, rho.rho[[j, j]].re);
    let peak = rho.rho.diag().iter().fold(0.0f64, |m, z| m.max(z.re));
    let floor = 1e-12 * peak.max(f64::MIN_POSITIVE);
    if !(a > floor && b > floor) {
        return Err(Error::UndefinedVisibility { peak: a.min(b) });
    }
    Ok((rho.rho[[i, j]].norm() / (a * b).sqrt()).min(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn small_settings() -> OracleSettings {
        OracleSettings { points: 64, ..OracleSettings::default() }
    }

    fn branches() -> BranchPair {
        BranchPair { centres: (-2.0, 2.0), width: 0.5 }
    }

    #[test]
    fn branch_centres_are_grid_nodes() {
        let x = DensityMatrixGrid::grid_for(&branches(), &small_settings()).unwrap();
        for c in [-2.0, 2.0] {
            assert!(x.iter().any(|&p| (p - c).abs() < 1e-12), "{c} missing");
        }
        let half_span = x[x.len() - 1];
        assert!(half_span > 2.0 + 6.0 * 0.5);
    }

    #[test]
    fn superposition_is_normalized_and_pure() {
        let state = DensityMatrixGrid::superposition(&branches(), &small_settings()).unwrap();
        assert_relative_eq!(state.trace(), 1.0, max_relative = 1e-14);
        assert_eq!(state.hermiticity_residual(), 0.0);
        assert_relative_eq!(fringe_visibility(&state, &branches()).unwrap(), 1.0, max_relative = 1e-12);
    }

    #[test]
    fn dephased_mixture_has_zero_visibility() {
        let mut state = DensityMatrixGrid::superposition(&branches(), &small_settings()).unwrap();
        let n = state.rho.nrows();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    state.rho[[i, j]] = Complex64::new(0.0, 0.0);
                }
            }
        }
        assert_eq!(fringe_visibility(&state, &branches()).unwrap(), 0.0);
    }

    #[test]
    fn empty_state_has_undefined_visibility() {
        let mut state = DensityMatrixGrid::superposition(&branches(), &small_settings()).unwrap();
        state.rho.fill(Complex64::new(0.0, 0.0));
        assert!(matches!(fringe_visibility(&state, &branches()), Err(Error::UndefinedVisibility { .. })));
    }

    #[test]
    fn kinetic_propagator_is_unitary() {
        let (u, u_adj) = kinetic_propagator(16, 0.3, 1.0, 0.05);
        let id = u.dot(&u_adj);
        for ((i, j), z) in id.indexed_iter() {
            let expected = if i == j { 1.0 } else { 0.0 };
            assert!((z - expected).norm() < 1e-13);
        }
    }

    #[test]
    fn diffusion_term_leaves_diagonal_untouched() {
        let cfg = ModelConfig::default();
        let mut state = DensityMatrixGrid::superposition(&branches(), &small_settings()).unwrap();
        let diag_before = state.rho.diag().to_owned();
        let stepper = Stepper::new(&cfg, &state, 0.01, &OracleSettings { freeze_kinetic: true, ..small_settings() });
        stepper.dephase(&mut state.rho, 3.0, 0.1);
        assert_eq!(state.rho.diag(), diag_before);
    }

    #[test]
    fn oversized_dissipation_step_is_rejected() {
        let cfg = ModelConfig::default();
        let state = DensityMatrixGrid::superposition(&branches(), &small_settings()).unwrap();
        let coeffs = CoefficientSet { gamma_diss: Arc::new(|_| 50.0), ..CoefficientSet::default() };
        let err = evolve_density_matrix(&cfg, &coeffs, &state, 0.5, 0.1, &small_settings()).unwrap_err();
        assert!(matches!(err, Error::StepSize { .. }), "{err}");
    }

    #[test]
    fn non_finite_coefficient_stops_integration() {
        let cfg = ModelConfig::default();
        let state = DensityMatrixGrid::superposition(&branches(), &small_settings()).unwrap();
        let coeffs = CoefficientSet::with_diffusion(|t| if t > 0.05 { f64::NAN } else { 0.0 });
        let err = evolve_density_matrix(&cfg, &coeffs, &state, 0.2, 0.01, &small_settings()).unwrap_err();
        assert!(matches!(err, Error::IntegratorFailure { .. }), "{err}");
    }

    #[test]
    fn dissipation_preserves_trace_and_hermiticity() {
        let cfg = ModelConfig::default();
        let state = DensityMatrixGrid::superposition(&branches(), &small_settings()).unwrap();
        let coeffs = CoefficientSet {
            gamma_diss: Arc::new(|_| 0.05),
            f_anom: Arc::new(|t| 0.5 + t),
            d_diff: Arc::new(|_| 0.1),
            ..CoefficientSet::default()
        };
        let out = evolve_density_matrix(&cfg, &coeffs, &state, 0.5, 0.01, &small_settings()).unwrap();
        let last = out.final_state();
        assert_relative_eq!(last.trace() + last.absorbed, 1.0, max_relative = 1e-9);
        assert_eq!(last.time, 0.5);
    }

    #[test]
    fn records_intermediate_states() {
        let cfg = ModelConfig::default();
        let state = DensityMatrixGrid::superposition(&branches(), &small_settings()).unwrap();
        let settings = OracleSettings { record_every: 2, ..small_settings() };
        let out = evolve_density_matrix(&cfg, &CoefficientSet::default(), &state, 0.1, 0.01, &settings).unwrap();
        assert_eq!(out.states.len(), 5);
    }
}
