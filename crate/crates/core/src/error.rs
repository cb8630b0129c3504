// Copyright 2026 The decohere Authors
// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// One violated invariant, keyed by the offending field.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub field: &'static str,
    pub message: String,
}

impl Violation {
    pub(crate) fn new(field: &'static str, message: impl Into<String>) -> Self {
        Self { field, message: message.into() }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

fn join(violations: &[Violation]) -> String {
    violations.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {}", join(.0))]
    InvalidConfig(Vec<Violation>),

    #[error("unknown case label {label:?}; allowed labels are a, b, c, d")]
    UnknownCase { label: String },

    #[error("boundary value problem is singular: the sine mode vanishes at frequency {freq}, horizon {horizon}")]
    Caustic { freq: f64, horizon: f64 },

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error(
        "quadrature did not converge on [{lower}, {upper}]: error estimate {estimate:e} above tolerance {tolerance:e}"
    )]
    NumericalAccuracy { lower: f64, upper: f64, estimate: f64, tolerance: f64 },

    #[error("non-finite value while evaluating {0}")]
    NonFinite(&'static str),

    #[error("decoherence criterion not reached before t = {t_max}; largest L²∫D attained was {attained}")]
    NotReached { t_max: f64, attained: f64 },

    #[error("time step {dt} exceeds the stability bound {bound}")]
    StepSize { dt: f64, bound: f64 },

    #[error("integrator failure at t = {time}: {reason}")]
    IntegratorFailure { time: f64, reason: String },

    #[error("fringe visibility undefined: diagonal peak {peak:e} below numerical floor")]
    UndefinedVisibility { peak: f64 },

    #[error("config parse error in {path}: {message}")]
    Parse { path: PathBuf, message: String },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}
