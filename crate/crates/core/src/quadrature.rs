// Copyright 2026 The decohere Authors
// SPDX-License-Identifier: Apache-2.0

//! Composite Gauss–Legendre panels for the inner integrals and cumulative
//! rules on a uniform grid for the outer one.

use crate::error::{Error, Result};

/// Rule used to accumulate `∫₀^{t_k} D ds` from grid samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OuterRule {
    /// Composite trapezoid, second order.
    Trapezoid,
    /// Per-cell integral of the cubic through the four nearest samples
    /// (one-sided at the ends), fourth order.
    #[default]
    Cubic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadSettings {
    /// Relative tolerance on successive panel refinements.
    pub rel_tol: f64,
    /// Gauss–Legendre nodes per panel.
    pub nodes_per_panel: usize,
    pub initial_panels: usize,
    pub max_panels: usize,
    pub outer: OuterRule,
}

impl Default for QuadSettings {
    fn default() -> Self {
        Self { rel_tol: 1e-9, nodes_per_panel: 16, initial_panels: 2, max_panels: 1 << 12, outer: OuterRule::Cubic }
    }
}

/// Nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss–Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            // Tricomi initial guess, then Newton on P_n.
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, dp) = legendre_with_derivative(n, x);
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Composite rule on `panels` equal panels of `[a, b]`; returns
    /// `(∫f, ∫|f|)`.
    pub fn composite<F: FnMut(f64) -> f64>(&self, f: &mut F, a: f64, b: f64, panels: usize) -> (f64, f64) {
        let width = (b - a) / panels as f64;
        let half = 0.5 * width;
        let mut sum = 0.0;
        let mut abs_sum = 0.0;
        for p in 0..panels {
            let mid = a + (p as f64 + 0.5) * width;
            for (x, w) in self.nodes.iter().zip(&self.weights) {
                let v = f(mid + half * x);
                sum += w * v;
                abs_sum += w * v.abs();
            }
        }
        (sum * half, abs_sum * half)
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    (p1, n as f64 * (x * p1 - p0) / (x * x - 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error_estimate: f64,
    pub panels: usize,
}

/// Integrates `f` over `[a, b]`, doubling the panel count until two
/// successive composite Gauss–Legendre sums agree to
/// `rel_tol · max(|I|, 1e-3 ∫|f|)`.
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, settings: &QuadSettings) -> Result<Integral> {
    if a == b {
        return Ok(Integral { value: 0.0, error_estimate: 0.0, panels: 0 });
    }
    let rule = GaussLegendre::new(settings.nodes_per_panel);
    let mut panels = settings.initial_panels.max(1);
    let (mut coarse, _) = rule.composite(&mut f, a, b, panels);
    loop {
        panels *= 2;
        let (fine, l1) = rule.composite(&mut f, a, b, panels);
        if !fine.is_finite() {
            return Err(Error::NonFinite("quadrature integrand"));
        }
        let estimate = (fine - coarse).abs();
        let tolerance = settings.rel_tol * fine.abs().max(1e-3 * l1);
        if estimate <= tolerance || l1 == 0.0 {
            return Ok(Integral { value: fine, error_estimate: estimate, panels });
        }
        if panels >= settings.max_panels {
            return Err(Error::NumericalAccuracy { lower: a, upper: b, estimate, tolerance });
        }
        coarse = fine;
    }
}

/// Running integral of uniformly spaced samples; `out[0] = 0`.
pub fn cumulative(values: &[f64], h: f64, rule: OuterRule) -> Vec<f64> {
    let n = values.len();
    let mut out = vec![0.0; n];
    if n < 2 {
        return out;
    }
    let cells = n - 1;
    let use_cubic = rule == OuterRule::Cubic && cells >= 2;
    for k in 0..cells {
        let inc = if !use_cubic {
            0.5 * h * (values[k] + values[k + 1])
        } else if cells == 2 {
            // Quadratic through all three samples.
            let (d0, d1, d2) = (values[0], values[1], values[2]);
            if k == 0 {
                h / 12.0 * (5.0 * d0 + 8.0 * d1 - d2)
            } else {
                h / 12.0 * (-d0 + 8.0 * d1 + 5.0 * d2)
            }
        } else if k == 0 {
            h / 24.0 * (9.0 * values[0] + 19.0 * values[1] - 5.0 * values[2] + values[3])
        } else if k == cells - 1 {
            h / 24.0 * (9.0 * values[k + 1] + 19.0 * values[k] - 5.0 * values[k - 1] + values[k - 2])
        } else {
            h / 24.0 * (-values[k - 1] + 13.0 * values[k] + 13.0 * values[k + 1] - values[k + 2])
        };
        out[k + 1] = out[k] + inc;
    }
    out
}

/// Running integral inside cell `k` at fraction `theta ∈ [0, 1]`, using the
/// trapezoid (piecewise-linear) model of the rate. The rule correction of the
/// cell is spread linearly so the interpolant meets both grid values.
pub fn interpolate_cumulative(values: &[f64], cumulative: &[f64], h: f64, k: usize, theta: f64) -> f64 {
    let (d0, d1) = (values[k], values[k + 1]);
    let trapezoid = |th: f64| h * (th * d0 + 0.5 * th * th * (d1 - d0));
    let correction = cumulative[k + 1] - cumulative[k] - trapezoid(1.0);
    cumulative[k] + trapezoid(theta) + theta * correction
}
