// Copyright 2026 The decohere Authors
// SPDX-License-Identifier: Apache-2.0

//! Physical parameters, the (a)–(d) case taxonomy, and time grids.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Violation};

/// Harmonic (`+ω²x²/2` potential) or inverted (`-ω²x²/2`) oscillator.
///
/// The frequency itself is always stored positive; the kind selects the
/// trigonometric or hyperbolic mode functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OscillatorKind {
    Harmonic,
    Inverted,
}

impl OscillatorKind {
    /// `sin(z)` or `sinh(z)`.
    #[inline]
    pub fn sine(self, z: f64) -> f64 {
        match self {
            OscillatorKind::Harmonic => z.sin(),
            OscillatorKind::Inverted => z.sinh(),
        }
    }

    /// `cos(z)` or `cosh(z)`.
    #[inline]
    pub fn cosine(self, z: f64) -> f64 {
        match self {
            OscillatorKind::Harmonic => z.cos(),
            OscillatorKind::Inverted => z.cosh(),
        }
    }

    /// Sign `κ` in `d/dz cosine(z) = κ·sine(z)`; also the sign of the
    /// restoring term in `ẍ = κ·ω²·x`.
    #[inline]
    pub fn curvature_sign(self) -> f64 {
        match self {
            OscillatorKind::Harmonic => -1.0,
            OscillatorKind::Inverted => 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CaseLabel {
    A,
    B,
    C,
    D,
}

impl CaseLabel {
    pub const ALL: [CaseLabel; 4] = [CaseLabel::A, CaseLabel::B, CaseLabel::C, CaseLabel::D];

    pub fn as_str(self) -> &'static str {
        match self {
            CaseLabel::A => "a",
            CaseLabel::B => "b",
            CaseLabel::C => "c",
            CaseLabel::D => "d",
        }
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One of the four compositions of subsystem `A` with subsystem `B`.
///
/// | label | A        | B        |
/// |-------|----------|----------|
/// | a     | harmonic | inverted |
/// | b     | inverted | harmonic |
/// | c     | harmonic | harmonic |
/// | d     | inverted | inverted |
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CompositeCase {
    label: CaseLabel,
}

impl CompositeCase {
    pub const fn new(label: CaseLabel) -> Self {
        Self { label }
    }

    pub fn label(self) -> CaseLabel {
        self.label
    }

    pub fn a_kind(self) -> OscillatorKind {
        use OscillatorKind::*;
        match self.label {
            CaseLabel::A | CaseLabel::C => Harmonic,
            CaseLabel::B | CaseLabel::D => Inverted,
        }
    }

    pub fn b_kind(self) -> OscillatorKind {
        use OscillatorKind::*;
        match self.label {
            CaseLabel::B | CaseLabel::C => Harmonic,
            CaseLabel::A | CaseLabel::D => Inverted,
        }
    }

    pub fn all() -> [CompositeCase; 4] {
        CaseLabel::ALL.map(CompositeCase::new)
    }
}

impl fmt::Display for CompositeCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.label.fmt(f)
    }
}

impl FromStr for CompositeCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        case_from_label(s)
    }
}

/// Parses `"a"`–`"d"` (case-insensitive, surrounding whitespace ignored).
pub fn case_from_label(label: &str) -> Result<CompositeCase> {
    let label_enum = match label.trim().to_ascii_lowercase().as_str() {
        "a" => CaseLabel::A,
        "b" => CaseLabel::B,
        "c" => CaseLabel::C,
        "d" => CaseLabel::D,
        _ => return Err(Error::UnknownCase { label: label.to_string() }),
    };
    Ok(CompositeCase::new(label_enum))
}

/// How often the `λ²σ/32ħ` prefactor multiplies the noise-kernel term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KernelPrefactor {
    /// Applied once, inside the noise kernel.
    #[default]
    Single,
    /// Applied both inside the kernel and as the outer coefficient.
    Double,
}

/// Which rate of `Δq_cl` multiplies `Δq_cl` in the thermal integrand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ThermalRate {
    /// `∂Δq_cl(s; t)/∂t`, the rate with respect to the final time.
    #[default]
    HorizonRate,
    /// `∂Δq_cl(s; t)/∂s`. The integral collapses to `(dq_f² − dq_0²)/2`.
    PathSlope,
}

/// Lyapunov exponent assigned to an inverted `A` oscillator.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LyapunovRule {
    /// `Λ = ω`, the growth rate of `sinh(ωt)`.
    #[default]
    Frequency,
    /// `Λ = 2ω²`.
    TwiceSquaredFrequency,
    Fixed(f64),
}

impl LyapunovRule {
    pub fn exponent(self, omega: f64) -> f64 {
        match self {
            LyapunovRule::Frequency => omega,
            LyapunovRule::TwiceSquaredFrequency => 2.0 * omega * omega,
            LyapunovRule::Fixed(value) => value,
        }
    }
}

/// Full physical parameter set for one composite system.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelConfig {
    /// Mass of `A`.
    pub m_a: f64,
    /// Mass of `B`.
    pub m_b: f64,
    /// Bare frequency `ω` of `A`.
    pub omega: f64,
    /// Bare frequency `Ω` of `B`.
    pub omega_b: f64,
    /// Bilinear `A`–`B` coupling `λ`.
    pub lambda: f64,
    /// Bath damping `γ₀`.
    pub gamma0: f64,
    /// Bath temperature `k_B T`.
    pub kb_t: f64,
    pub hbar: f64,
    /// Width `σ` of the initial wave packet.
    pub sigma: f64,
    /// Initial momentum width `σ_p(0)` of `A`.
    pub sigma_p0: f64,
    /// Bath frequency cutoff.
    pub cutoff: f64,
    pub case: CompositeCase,
    pub kernel_prefactor: KernelPrefactor,
    pub thermal_rate: ThermalRate,
    pub lyapunov: LyapunovRule,
}

impl Default for ModelConfig {
    fn default() -> Self {
        Self {
            m_a: 1.0,
            m_b: 1.0,
            omega: 1.0,
            omega_b: 1.0,
            lambda: 0.1,
            gamma0: 0.0,
            kb_t: 1.0,
            hbar: 1.0,
            sigma: 1.0,
            sigma_p0: 1.0,
            cutoff: 50.0,
            case: CompositeCase::new(CaseLabel::A),
            kernel_prefactor: KernelPrefactor::Single,
            thermal_rate: ThermalRate::HorizonRate,
            lyapunov: LyapunovRule::Frequency,
        }
    }
}

impl ModelConfig {
    pub fn with_case(mut self, case: CompositeCase) -> Self {
        self.case = case;
        self
    }

    /// Sets `γ₀ k_B T` to `product`, keeping `γ₀` (or using 1 when it is zero).
    /// A zero product switches the bath off with `γ₀ = 0`.
    pub fn with_gamma0_kt(mut self, product: f64) -> Self {
        if product == 0.0 {
            self.gamma0 = 0.0;
        } else {
            if self.gamma0 <= 0.0 {
                self.gamma0 = 1.0;
            }
            self.kb_t = product / self.gamma0;
        }
        self
    }

    pub fn gamma0_kt(&self) -> f64 {
        self.gamma0 * self.kb_t
    }

    /// Lyapunov exponent of `A`, meaningful when `A` is inverted.
    pub fn lambda_lyap(&self) -> f64 {
        self.lyapunov.exponent(self.omega)
    }

    pub fn validate(&self) -> Result<()> {
        let mut bad = Vec::new();
        let mut positive = |field: &'static str, value: f64| {
            if !(value.is_finite() && value > 0.0) {
                bad.push(Violation::new(field, format!("must be finite and > 0, got {value}")));
            }
        };
        positive("m_a", self.m_a);
        positive("m_b", self.m_b);
        positive("hbar", self.hbar);
        positive("sigma", self.sigma);
        positive("sigma_p0", self.sigma_p0);
        positive("omega", self.omega);
        positive("omega_b", self.omega_b);

        let mut non_negative = |field: &'static str, value: f64| {
            if !(value.is_finite() && value >= 0.0) {
                bad.push(Violation::new(field, format!("must be finite and >= 0, got {value}")));
            }
        };
        non_negative("gamma0", self.gamma0);
        non_negative("kb_t", self.kb_t);

        if !self.lambda.is_finite() {
            bad.push(Violation::new("lambda", format!("must be finite, got {}", self.lambda)));
        }
        let fastest = self.omega.max(self.omega_b);
        if !(self.cutoff.is_finite() && self.cutoff > fastest) {
            bad.push(Violation::new(
                "cutoff",
                format!("must exceed max(omega, omega_b) = {fastest}, got {}", self.cutoff),
            ));
        }
        if let LyapunovRule::Fixed(value) = self.lyapunov {
            if !(value.is_finite() && value > 0.0) {
                bad.push(Violation::new("lyapunov", format!("fixed exponent must be > 0, got {value}")));
            }
        }

        if bad.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidConfig(bad))
        }
    }
}

/// Returns `cfg` unchanged when every invariant holds, otherwise an error that
/// names each violated field.
pub fn validate_config(cfg: ModelConfig) -> Result<ModelConfig> {
    cfg.validate()?;
    Ok(cfg)
}

/// How the `A` difference trajectory `Δx_cl(s)` is built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DeltaXConvention {
    /// Two branches separated by `dx0` released with no relative velocity:
    /// `Δx(s) = dx0·cosine(ωs)`. Equivalent to the boundary-value solution
    /// with `dxf = dx0·cosine(ωt)`, but free of harmonic caustics.
    #[default]
    ReleasedFromRest,
    /// Boundary-value solution through `dx0` at `s = 0` and `dxf` at `s = t`.
    FixedEndpoints,
}

/// Endpoint data for the classical trajectories.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectorySpec {
    pub x0: f64,
    pub xf: f64,
    pub q0: f64,
    pub qf: f64,
    pub dx0: f64,
    pub dxf: f64,
    pub dq0: f64,
    pub dqf: f64,
    pub delta_x: DeltaXConvention,
}

impl TrajectorySpec {
    /// Superposition separation `L` on both `Δx` endpoints, zero `Δq` endpoints.
    pub fn with_separation(separation: f64) -> Self {
        Self {
            x0: 0.0,
            xf: 0.0,
            q0: 0.0,
            qf: 0.0,
            dx0: separation,
            dxf: separation,
            dq0: 0.0,
            dqf: 0.0,
            delta_x: DeltaXConvention::ReleasedFromRest,
        }
    }

    /// Default trajectory for `cfg`: `L = 2σ`.
    pub fn for_config(cfg: &ModelConfig) -> Self {
        Self::with_separation(2.0 * cfg.sigma)
    }

    pub fn with_convention(mut self, delta_x: DeltaXConvention) -> Self {
        self.delta_x = delta_x;
        self
    }

    /// Typical superposition distance `L` carried by this spec.
    pub fn separation(&self) -> f64 {
        self.dx0
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("x0", self.x0),
            ("xf", self.xf),
            ("q0", self.q0),
            ("qf", self.qf),
            ("dx0", self.dx0),
            ("dxf", self.dxf),
            ("dq0", self.dq0),
            ("dqf", self.dqf),
        ];
        let bad: Vec<_> = fields
            .iter()
            .filter(|(_, v)| !v.is_finite())
            .map(|(name, v)| Violation::new(name, format!("must be finite, got {v}")))
            .collect();
        if bad.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidConfig(bad))
        }
    }
}

/// Uniform grid `s_k = k·t_max/n_steps`, `k = 0..=n_steps`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    t_max: f64,
    n_steps: usize,
}

impl TimeGrid {
    pub fn new(t_max: f64, n_steps: usize) -> Result<Self> {
        let mut bad = Vec::new();
        if !(t_max.is_finite() && t_max > 0.0) {
            bad.push(Violation::new("t_max", format!("must be finite and > 0, got {t_max}")));
        }
        if n_steps < 2 {
            bad.push(Violation::new("n_steps", format!("must be >= 2, got {n_steps}")));
        }
        if bad.is_empty() {
            Ok(Self { t_max, n_steps })
        } else {
            Err(Error::InvalidConfig(bad))
        }
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    pub fn len(&self) -> usize {
        self.n_steps + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        self.t_max / self.n_steps as f64
    }

    /// The `k`-th sample; the last one is exactly `t_max`.
    pub fn time(&self, k: usize) -> f64 {
        if k == self.n_steps {
            self.t_max
        } else {
            k as f64 * self.t_max / self.n_steps as f64
        }
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.len()).map(move |k| self.time(k))
    }

    /// Same span with twice as many steps.
    pub fn refined(&self) -> Self {
        Self { t_max: self.t_max, n_steps: 2 * self.n_steps }
    }
}
