// Copyright 2026 The decohere Authors
// SPDX-License-Identifier: Apache-2.0

//! Closed-form classical trajectories of the two oscillators.
//!
//! Every trajectory here is a combination `c·C(ωu) + s·S(ωu)` of the mode
//! functions of one oscillator kind (`C`/`S` = cos/sin or cosh/sinh). Such a
//! combination is a sum of two complex exponentials, so its convolution with
//! another mode function has an exact closed form; see [`ModePair::convolve`].

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{DeltaXConvention, ModelConfig, OscillatorKind, TrajectorySpec};

const CAUSTIC_TOL: f64 = 1e-8;
const RESONANCE_TOL: f64 = 1e-9;

fn check_caustic(kind: OscillatorKind, freq: f64, horizon: f64) -> Result<(f64, f64)> {
    if !(freq.is_finite() && freq > 0.0) {
        return Err(Error::Domain(format!("frequency must be finite and > 0, got {freq}")));
    }
    if !(horizon.is_finite() && horizon >= 0.0) {
        return Err(Error::Domain(format!("horizon must be finite and >= 0, got {horizon}")));
    }
    let z = freq * horizon;
    let (s, c) = (kind.sine(z), kind.cosine(z));
    if s.abs() < CAUSTIC_TOL * c.abs().max(1.0) {
        return Err(Error::Caustic { freq, horizon });
    }
    Ok((s, c))
}

fn check_time(s: f64, horizon: f64) -> Result<()> {
    // A little slack so grid points computed as k·h never trip on rounding.
    let slack = 1e-12 * horizon.max(1.0);
    if s.is_finite() && s >= -slack && s <= horizon + slack {
        Ok(())
    } else {
        Err(Error::Domain(format!("time {s} lies outside [0, {horizon}]")))
    }
}

/// Boundary mode functions `u₀`, `u_f` of one oscillator on `[0, t]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeFunctions {
    kind: OscillatorKind,
    freq: f64,
    horizon: f64,
    sine_t: f64,
    cosine_t: f64,
}

impl ModeFunctions {
    /// Fails with [`Error::Caustic`] when `sine(freq·t)` is too close to zero.
    pub fn new(kind: OscillatorKind, freq: f64, horizon: f64) -> Result<Self> {
        let (sine_t, cosine_t) = check_caustic(kind, freq, horizon)?;
        Ok(Self { kind, freq, horizon, sine_t, cosine_t })
    }

    pub fn kind(&self) -> OscillatorKind {
        self.kind
    }

    pub fn freq(&self) -> f64 {
        self.freq
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    /// `sine(freq·(t − s)) / sine(freq·t)`: one at `s = 0`, zero at `s = t`.
    pub fn u0(&self, s: f64) -> f64 {
        self.kind.sine(self.freq * (self.horizon - s)) / self.sine_t
    }

    /// `sine(freq·s) / sine(freq·t)`: zero at `s = 0`, one at `s = t`.
    pub fn uf(&self, s: f64) -> f64 {
        self.kind.sine(self.freq * s) / self.sine_t
    }

    pub fn u0_rate(&self, s: f64) -> f64 {
        -self.freq * self.kind.cosine(self.freq * (self.horizon - s)) / self.sine_t
    }

    pub fn uf_rate(&self, s: f64) -> f64 {
        self.freq * self.kind.cosine(self.freq * s) / self.sine_t
    }

    /// The boundary-value solution through `a` at `s = 0` and `b` at `s = t`.
    pub fn through(&self, a: f64, b: f64) -> ModePair {
        ModePair { kind: self.kind, freq: self.freq, cos_coef: a, sin_coef: (b - a * self.cosine_t) / self.sine_t }
    }

    /// Derivative of [`through`](Self::through) with respect to the horizon
    /// `t`, endpoints held fixed.
    pub fn through_horizon_rate(&self, a: f64, b: f64) -> ModePair {
        ModePair {
            kind: self.kind,
            freq: self.freq,
            cos_coef: 0.0,
            sin_coef: self.freq * (a - b * self.cosine_t) / (self.sine_t * self.sine_t),
        }
    }
}

/// Which mode function plays the convolution kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelShape {
    Sine,
    Cosine,
}

/// `cos_coef·cosine(freq·u) + sin_coef·sine(freq·u)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModePair {
    pub kind: OscillatorKind,
    pub freq: f64,
    pub cos_coef: f64,
    pub sin_coef: f64,
}

impl ModePair {
    pub fn zero(kind: OscillatorKind, freq: f64) -> Self {
        Self { kind, freq, cos_coef: 0.0, sin_coef: 0.0 }
    }

    pub fn value(&self, u: f64) -> f64 {
        let z = self.freq * u;
        self.cos_coef * self.kind.cosine(z) + self.sin_coef * self.kind.sine(z)
    }

    pub fn derivative(&self, u: f64) -> f64 {
        let z = self.freq * u;
        self.freq
            * (self.cos_coef * self.kind.curvature_sign() * self.kind.sine(z) + self.sin_coef * self.kind.cosine(z))
    }

    fn exponentials(&self) -> [(Complex64, Complex64); 2] {
        exponential_form(self.kind, self.freq, self.cos_coef, self.sin_coef)
    }

    /// `∫₀ˢ self(u)·K(freq·(s − u)) du` where `K` is the sine or cosine of
    /// `kind` at `freq`.
    pub fn convolve(&self, kind: OscillatorKind, freq: f64, shape: KernelShape, s: f64) -> f64 {
        if s == 0.0 || (self.cos_coef == 0.0 && self.sin_coef == 0.0) {
            return 0.0;
        }
        let mut kernel_freq = freq;
        if kind == self.kind {
            let (a, b) = (self.freq * self.freq, freq * freq);
            if (a - b).abs() < RESONANCE_TOL * (a + b) {
                kernel_freq = self.freq;
            }
        }
        let kernel = match shape {
            KernelShape::Sine => exponential_form(kind, kernel_freq, 0.0, 1.0),
            KernelShape::Cosine => exponential_form(kind, kernel_freq, 1.0, 0.0),
        };
        let mut total = Complex64::new(0.0, 0.0);
        for (a, r) in self.exponentials() {
            for (b, m) in kernel {
                total += a * b * exp_convolution(r, m, s);
            }
        }
        total.re
    }
}

/// Rewrites `c·C(ωu) + s·S(ωu)` as `Σ aₖ·exp(rₖ·u)`.
fn exponential_form(kind: OscillatorKind, freq: f64, c: f64, s: f64) -> [(Complex64, Complex64); 2] {
    match kind {
        OscillatorKind::Inverted => [
            (Complex64::new(0.5 * (c + s), 0.0), Complex64::new(freq, 0.0)),
            (Complex64::new(0.5 * (c - s), 0.0), Complex64::new(-freq, 0.0)),
        ],
        OscillatorKind::Harmonic => [
            (Complex64::new(0.5 * c, -0.5 * s), Complex64::new(0.0, freq)),
            (Complex64::new(0.5 * c, 0.5 * s), Complex64::new(0.0, -freq)),
        ],
    }
}

/// `∫₀ˢ exp(r·u)·exp(m·(s − u)) du = s·exp(m·s)·φ₁((r − m)·s)`.
fn exp_convolution(r: Complex64, m: Complex64, s: f64) -> Complex64 {
    (m * s).exp() * phi1((r - m) * s) * s
}

/// `(eᶻ − 1)/z`, accurate near zero.
fn phi1(z: Complex64) -> Complex64 {
    if z.norm() < 1e-4 {
        return 1.0 + z * (0.5 + z * (1.0 / 6.0 + z / 24.0));
    }
    let (x, y) = (z.re, z.im);
    let half = (0.5 * y).sin();
    let expm1 = Complex64::new(x.exp_m1() * y.cos() - 2.0 * half * half, x.exp() * y.sin());
    expm1 / z
}

/// Free trajectory through `x0` at `s = 0` and `xf` at `s = t`.
pub fn free_trajectory(kind: OscillatorKind, freq: f64, t: f64, x0: f64, xf: f64, s: f64) -> Result<f64> {
    check_time(s, t)?;
    if s == 0.0 {
        return Ok(x0);
    }
    if s == t {
        return Ok(xf);
    }
    let modes = ModeFunctions::new(kind, freq, t)?;
    Ok(x0 * modes.u0(s) + xf * modes.uf(s))
}

/// `d/ds` of [`free_trajectory`].
pub fn free_trajectory_derivative(kind: OscillatorKind, freq: f64, t: f64, x0: f64, xf: f64, s: f64) -> Result<f64> {
    check_time(s, t)?;
    let modes = ModeFunctions::new(kind, freq, t)?;
    Ok(x0 * modes.u0_rate(s) + xf * modes.uf_rate(s))
}

/// The two sine-kernel convolutions of a source trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvolutionPair {
    /// `∫₀ˢ x(u)·S_B(Ω(s − u)) du`
    pub partial: f64,
    /// `∫₀ᵗ x(u)·S_B(Ω(t − u)) du`
    pub full: f64,
}

/// Sine-kernel convolutions of the `A` free trajectory through `dx0`, `dxf`
/// against oscillator `B`.
#[allow(clippy::too_many_arguments)]
pub fn source_convolution(
    kind_b: OscillatorKind,
    omega_b: f64,
    kind_a: OscillatorKind,
    omega: f64,
    t: f64,
    dx0: f64,
    dxf: f64,
    s: f64,
) -> Result<ConvolutionPair> {
    check_time(s, t)?;
    check_caustic(kind_b, omega_b, t)?;
    let source = ModeFunctions::new(kind_a, omega, t)?.through(dx0, dxf);
    Ok(ConvolutionPair {
        partial: source.convolve(kind_b, omega_b, KernelShape::Sine, s.clamp(0.0, t)),
        full: source.convolve(kind_b, omega_b, KernelShape::Sine, t),
    })
}

/// `Δx_cl` on `[0, t]` and its derivative with respect to `t`.
pub fn delta_x_source(cfg: &ModelConfig, traj: &TrajectorySpec, t: f64) -> Result<(ModePair, ModePair)> {
    let kind = cfg.case.a_kind();
    match traj.delta_x {
        DeltaXConvention::ReleasedFromRest => {
            let pair = ModePair { kind, freq: cfg.omega, cos_coef: traj.dx0, sin_coef: 0.0 };
            Ok((pair, ModePair::zero(kind, cfg.omega)))
        }
        DeltaXConvention::FixedEndpoints => {
            let modes = ModeFunctions::new(kind, cfg.omega, t)?;
            Ok((modes.through(traj.dx0, traj.dxf), modes.through_horizon_rate(traj.dx0, traj.dxf)))
        }
    }
}

/// `Δq_cl(s; t)` for a fixed horizon `t`, with the horizon-dependent pieces
/// evaluated once.
///
/// `Δq(s) = dq0·u₀(s) + dqf·u_f(s) + c·[P(s) − u_f(s)·P(t)]` with
/// `c = λ/(M_B·Ω)` and `P(s) = ∫₀ˢ Δx(u)·S_B(Ω(s − u)) du`. It solves
/// `Δq̈ = ±Ω²Δq + (λ/M_B)·Δx` with the given endpoints.
#[derive(Debug, Clone, Copy)]
pub struct DeltaQPath {
    modes: ModeFunctions,
    source: ModePair,
    source_rate: ModePair,
    dq0: f64,
    dqf: f64,
    coupling: f64,
    p_sine_t: f64,
    p_cosine_t: f64,
    p_rate_t: f64,
}

impl DeltaQPath {
    pub fn new(cfg: &ModelConfig, traj: &TrajectorySpec, t: f64) -> Result<Self> {
        let kind_b = cfg.case.b_kind();
        let modes = ModeFunctions::new(kind_b, cfg.omega_b, t)?;
        let (source, source_rate) = delta_x_source(cfg, traj, t)?;
        let omega_b = cfg.omega_b;
        Ok(Self {
            modes,
            source,
            source_rate,
            dq0: traj.dq0,
            dqf: traj.dqf,
            coupling: cfg.lambda / (cfg.m_b * omega_b),
            p_sine_t: source.convolve(kind_b, omega_b, KernelShape::Sine, t),
            p_cosine_t: source.convolve(kind_b, omega_b, KernelShape::Cosine, t),
            p_rate_t: source_rate.convolve(kind_b, omega_b, KernelShape::Sine, t),
        })
    }

    pub fn horizon(&self) -> f64 {
        self.modes.horizon
    }

    fn p(&self, pair: &ModePair, shape: KernelShape, s: f64) -> f64 {
        pair.convolve(self.modes.kind, self.modes.freq, shape, s)
    }

    pub fn value(&self, s: f64) -> f64 {
        let m = &self.modes;
        self.dq0 * m.u0(s)
            + self.dqf * m.uf(s)
            + self.coupling * (self.p(&self.source, KernelShape::Sine, s) - m.uf(s) * self.p_sine_t)
    }

    /// `∂Δq/∂s`.
    pub fn slope(&self, s: f64) -> f64 {
        let m = &self.modes;
        let p_cos = self.p(&self.source, KernelShape::Cosine, s);
        self.dq0 * m.u0_rate(s)
            + self.dqf * m.uf_rate(s)
            + self.coupling * (m.freq * p_cos - m.uf_rate(s) * self.p_sine_t)
    }

    /// `∂Δq/∂t` at fixed `s`, endpoints held fixed.
    pub fn horizon_rate(&self, s: f64) -> f64 {
        let m = &self.modes;
        let uf = m.uf(s);
        // ∂t u_f(s) = −u_f(s)·Ω·C_B(Ωt)/S_B(Ωt); ∂t u₀(s) = u_f(s)·Ω/S_B(Ωt)
        let log_rate = m.freq * m.cosine_t / m.sine_t;
        let homogeneous = self.dq0 * uf * m.freq / m.sine_t - self.dqf * uf * log_rate;
        let d_p_t = m.freq * self.p_cosine_t + self.p_rate_t;
        let forced = self.p(&self.source_rate, KernelShape::Sine, s) + uf * log_rate * self.p_sine_t - uf * d_p_t;
        homogeneous + self.coupling * forced
    }

    pub fn evaluate(&self, s: f64) -> (f64, f64) {
        (self.value(s), self.slope(s))
    }

    /// The `A` difference trajectory driving this path.
    pub fn source(&self) -> &ModePair {
        &self.source
    }
}

/// `(Δq_cl(s), ∂_sΔq_cl(s))` on the horizon `t`.
pub fn delta_q_trajectory(cfg: &ModelConfig, traj: &TrajectorySpec, t: f64, s: f64) -> Result<(f64, f64)> {
    check_time(s, t)?;
    Ok(DeltaQPath::new(cfg, traj, t)?.evaluate(s.clamp(0.0, t)))
}
