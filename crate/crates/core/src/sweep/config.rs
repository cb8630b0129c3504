// Copyright 2026 The decohere Authors
// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{Error, Result, Violation};
use crate::model::{
    case_from_label, CompositeCase, DeltaXConvention, KernelPrefactor, LyapunovRule, ModelConfig, ThermalRate,
    TimeGrid, TrajectorySpec,
};
use crate::oracle::OracleSettings;
use crate::quadrature::QuadSettings;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum LyapunovName {
    Frequency,
    TwiceSquaredFrequency,
}

/// On-disk layout: one flat table of scalars and lists.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    schema_version: u32,

    m_a: Option<f64>,
    m_b: Option<f64>,
    omega: Option<f64>,
    omega_b: Option<f64>,
    lambda: Option<f64>,
    gamma0: Option<f64>,
    hbar: Option<f64>,
    sigma: Option<f64>,
    sigma_p0: Option<f64>,
    cutoff: Option<f64>,
    kernel_prefactor: Option<KernelPrefactor>,
    thermal_rate: Option<ThermalRate>,
    lyapunov: Option<LyapunovName>,
    lyapunov_exponent: Option<f64>,

    separation: Option<f64>,
    dq0: Option<f64>,
    dqf: Option<f64>,
    delta_x: Option<DeltaXConvention>,

    t_max: f64,
    n_steps: usize,
    quad_rel_tol: Option<f64>,

    cases: Vec<String>,
    gamma0_kt: Vec<f64>,
    epsilon: Option<f64>,

    out_dir: Option<PathBuf>,
    formats: Option<Vec<OutputFormat>>,
    oracle: Option<bool>,
}

/// A validated sweep description.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// Shared parameters; `case` and the bath temperature are set per cell.
    pub model: ModelConfig,
    pub traj: TrajectorySpec,
    pub grid: TimeGrid,
    pub quad: QuadSettings,
    pub cases: Vec<CompositeCase>,
    /// `γ₀·k_B T` values, one row of cells each.
    pub gamma0_kt: Vec<f64>,
    /// Threshold on `Γ` for the crossing time.
    pub epsilon: f64,
    pub out_dir: PathBuf,
    pub csv: bool,
    pub svg: bool,
    pub oracle: bool,
    pub oracle_settings: OracleSettings,
}

impl RunConfig {
    /// Parses TOML text; `origin` only labels error messages.
    pub fn from_toml(text: &str, origin: &Path) -> Result<Self> {
        let raw: RawConfig =
            toml::from_str(text).map_err(|e| Error::Parse { path: origin.to_path_buf(), message: e.to_string() })?;
        if raw.schema_version != SCHEMA_VERSION {
            return Err(Error::Parse {
                path: origin.to_path_buf(),
                message: format!("unsupported schema_version {} (expected {SCHEMA_VERSION})", raw.schema_version),
            });
        }
        let d = ModelConfig::default();
        let lyapunov = match (raw.lyapunov_exponent, raw.lyapunov) {
            (Some(value), _) => LyapunovRule::Fixed(value),
            (None, Some(LyapunovName::TwiceSquaredFrequency)) => LyapunovRule::TwiceSquaredFrequency,
            (None, _) => LyapunovRule::Frequency,
        };
        let model = ModelConfig {
            m_a: raw.m_a.unwrap_or(d.m_a),
            m_b: raw.m_b.unwrap_or(d.m_b),
            omega: raw.omega.unwrap_or(d.omega),
            omega_b: raw.omega_b.unwrap_or(d.omega_b),
            lambda: raw.lambda.unwrap_or(d.lambda),
            // The swept product sets k_B T; γ₀ is only its split.
            gamma0: raw.gamma0.unwrap_or(1.0),
            kb_t: d.kb_t,
            hbar: raw.hbar.unwrap_or(d.hbar),
            sigma: raw.sigma.unwrap_or(d.sigma),
            sigma_p0: raw.sigma_p0.unwrap_or(d.sigma_p0),
            cutoff: raw.cutoff.unwrap_or(d.cutoff),
            case: d.case,
            kernel_prefactor: raw.kernel_prefactor.unwrap_or_default(),
            thermal_rate: raw.thermal_rate.unwrap_or_default(),
            lyapunov,
        };

        let cases = raw.cases.iter().map(|label| case_from_label(label)).collect::<Result<Vec<_>>>()?;

        let mut bad = match model.validate() {
            Ok(()) => Vec::new(),
            Err(Error::InvalidConfig(v)) => v,
            Err(other) => return Err(other),
        };
        let grid = match TimeGrid::new(raw.t_max, raw.n_steps) {
            Ok(grid) => Some(grid),
            Err(Error::InvalidConfig(v)) => {
                bad.extend(v);
                None
            }
            Err(other) => return Err(other),
        };
        if cases.is_empty() {
            bad.push(Violation::new("cases", "at least one case is required"));
        }
        if raw.gamma0_kt.is_empty() {
            bad.push(Violation::new("gamma0_kt", "at least one temperature point is required"));
        }
        for g in &raw.gamma0_kt {
            if !(g.is_finite() && *g >= 0.0) {
                bad.push(Violation::new("gamma0_kt", format!("entries must be finite and >= 0, got {g}")));
            }
        }
        let epsilon = raw.epsilon.unwrap_or(0.01);
        if !(epsilon > 0.0 && epsilon < 1.0) {
            bad.push(Violation::new("epsilon", format!("must lie in (0, 1), got {epsilon}")));
        }
        let separation = raw.separation.unwrap_or(2.0 * model.sigma);
        if !(separation.is_finite() && separation > 0.0) {
            bad.push(Violation::new("separation", format!("must be finite and > 0, got {separation}")));
        }
        let quad = QuadSettings { rel_tol: raw.quad_rel_tol.unwrap_or(1e-9), ..QuadSettings::default() };
        if !(quad.rel_tol > 0.0 && quad.rel_tol < 1.0) {
            bad.push(Violation::new("quad_rel_tol", format!("must lie in (0, 1), got {}", quad.rel_tol)));
        }
        let traj = TrajectorySpec {
            dq0: raw.dq0.unwrap_or(0.0),
            dqf: raw.dqf.unwrap_or(0.0),
            ..TrajectorySpec::with_separation(separation)
        }
        .with_convention(raw.delta_x.unwrap_or_default());
        if let Err(Error::InvalidConfig(v)) = traj.validate() {
            bad.extend(v);
        }
        if !bad.is_empty() {
            return Err(Error::InvalidConfig(bad));
        }

        let formats = raw.formats.unwrap_or_else(|| vec![OutputFormat::Csv]);
        let mut gamma0_kt = raw.gamma0_kt;
        gamma0_kt.sort_by(f64::total_cmp);
        gamma0_kt.dedup();
        let mut cases = cases;
        cases.sort();
        cases.dedup();
        Ok(Self {
            model,
            traj,
            grid: grid.expect("grid errors were reported above"),
            quad,
            cases,
            gamma0_kt,
            epsilon,
            out_dir: raw.out_dir.unwrap_or_else(|| PathBuf::from("decohere-out")),
            csv: formats.contains(&OutputFormat::Csv),
            svg: formats.contains(&OutputFormat::Svg),
            oracle: raw.oracle.unwrap_or(false),
            oracle_settings: OracleSettings { freeze_kinetic: true, ..OracleSettings::default() },
        })
    }

    /// Model parameters for one cell.
    pub fn cell_model(&self, case: CompositeCase, gamma0_kt: f64) -> ModelConfig {
        self.model.clone().with_case(case).with_gamma0_kt(gamma0_kt)
    }
}

/// Reads and validates a TOML run description.
pub fn load_config(path: impl AsRef<Path>) -> Result<RunConfig> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    RunConfig::from_toml(&text, path)
}
