// Copyright 2026 The decohere Authors
// SPDX-License-Identifier: Apache-2.0

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::model::CaseLabel;

use super::run::{CellReport, SweepReport};
use super::RunConfig;

pub const CELL_HEADER: &str = "t,D_total,D_thermal,D_kernel,cum_D,Gamma";
pub const SUMMARY_HEADER: &str = "case,gamma0kT,t_threshold,t_formula,epsilon";
pub const SUMMARY_FILE: &str = "summary.csv";

/// One written file and the SHA-256 of its contents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifestEntry {
    /// Path relative to the output directory.
    pub file: String,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FileManifest {
    pub entries: Vec<ManifestEntry>,
}

impl FileManifest {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `sha256sum`-compatible listing, sorted by file name.
    pub fn to_text(&self) -> String {
        let mut entries = self.entries.clone();
        entries.sort_by(|a, b| a.file.cmp(&b.file));
        entries.iter().fold(String::new(), |mut out, e| {
            let _ = writeln!(out, "{}  {}", e.sha256, e.file);
            out
        })
    }
}

fn number(x: f64) -> String {
    format!("{x:.16e}")
}

fn optional(x: Option<f64>) -> String {
    x.map(number).unwrap_or_default()
}

/// File name of the per-cell CSV.
pub fn cell_file_name(case: CaseLabel, gamma0_kt: f64) -> String {
    format!("cell_{}_gkt{gamma0_kt}.csv", case.as_str())
}

fn svg_file_name(gamma0_kt: f64) -> String {
    format!("gamma_gkt{gamma0_kt}.svg")
}

fn cell_csv(cell: &CellReport) -> Option<String> {
    let result = cell.outcome.as_ref().ok()?;
    let d = &result.diffusion;
    let g = &result.decoherence;
    let mut out = String::with_capacity(128 * d.grid.len());
    out.push_str(CELL_HEADER);
    out.push('\n');
    for (k, t) in d.grid.points().enumerate() {
        let row = [t, d.d_values[k], d.thermal_part[k], d.kernel_part[k], g.cumulative_d[k], g.gamma_values[k]];
        let row: Vec<String> = row.iter().map(|v| number(*v)).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    Some(out)
}

fn summary_csv(report: &SweepReport) -> String {
    let mut out = String::from(SUMMARY_HEADER);
    if report.oracle {
        out.push_str(",oracle_agreement");
    }
    out.push('\n');
    for cell in &report.cells {
        let ok = cell.outcome.as_ref().ok();
        let mut fields = vec![
            cell.case.label().as_str().to_string(),
            number(cell.gamma0_kt),
            optional(ok.and_then(|r| r.t_threshold)),
            optional(ok.and_then(|r| r.t_formula)),
            number(report.epsilon),
        ];
        if report.oracle {
            fields.push(optional(ok.and_then(|r| r.oracle_agreement)));
        }
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

const COLOURS: [&str; 4] = ["#1b9e77", "#d95f02", "#7570b3", "#e7298a"];

fn panel_svg(report: &SweepReport, gamma0_kt: f64, t_max: f64) -> String {
    let (w, h, m) = (640.0, 400.0, 50.0);
    let cells: Vec<_> = report
        .cells
        .iter()
        .filter(|c| c.gamma0_kt == gamma0_kt)
        .filter_map(|c| c.outcome.as_ref().ok().map(|r| (c.case, r)))
        .collect();
    let y_max =
        cells.iter().flat_map(|(_, r)| r.decoherence.gamma_values.iter().copied()).fold(1.0f64, f64::max).min(10.0);
    let px = |t: f64| m + (w - 2.0 * m) * t / t_max;
    let py = |g: f64| h - m - (h - 2.0 * m) * g.min(y_max) / y_max;

    let mut out = String::new();
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#);
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(out, r#"<path d="M{m},{m} V{} H{}" fill="none" stroke="black"/>"#, h - m, w - m);
    let _ = writeln!(out, r#"<text x="{}" y="{}" font-size="14" text-anchor="middle">t</text>"#, w / 2.0, h - 12.0);
    let _ = writeln!(out, r#"<text x="14" y="{}" font-size="14">Γ</text>"#, h / 2.0);
    let _ = writeln!(
        out,
        r#"<text x="{}" y="30" font-size="14" text-anchor="middle">γ₀k_BT = {gamma0_kt}</text>"#,
        w / 2.0
    );
    let _ =
        writeln!(out, r#"<text x="{}" y="{}" font-size="11" text-anchor="end">{t_max}</text>"#, w - m, h - m + 16.0);
    let _ = writeln!(out, r#"<text x="{}" y="{}" font-size="11" text-anchor="end">{y_max}</text>"#, m - 4.0, m + 4.0);
    for (i, (case, result)) in cells.iter().enumerate() {
        let colour = COLOURS[case.label() as usize % COLOURS.len()];
        let series = &result.decoherence;
        let stride = series.grid.len().div_ceil(600).max(1);
        let points: Vec<String> = (0..series.grid.len())
            .filter(|k| k % stride == 0 || *k == series.grid.len() - 1)
            .map(|k| format!("{:.2},{:.2}", px(series.grid.time(k)), py(series.gamma_values[k])))
            .collect();
        let _ = writeln!(
            out,
            r#"<polyline fill="none" stroke="{colour}" stroke-width="1.5" points="{}"/>"#,
            points.join(" ")
        );
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" font-size="12" fill="{colour}">({})</text>"#,
            w - m - 30.0,
            m + 16.0 * (i as f64 + 1.0),
            case.label().as_str()
        );
    }
    out.push_str("</svg>\n");
    out
}

fn write_file(dir: &Path, name: &str, contents: &str, manifest: &mut FileManifest) -> Result<()> {
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|e| Error::io(&path, e))?;
    manifest.entries.push(ManifestEntry { file: name.to_string(), sha256: hex::encode(Sha256::digest(contents)) });
    Ok(())
}

/// Writes cell CSVs, the summary and (optionally) one SVG panel per
/// temperature into `config.out_dir`.
pub fn emit_outputs(report: &SweepReport, config: &RunConfig) -> Result<FileManifest> {
    let dir = &config.out_dir;
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut manifest = FileManifest::default();
    if config.csv {
        for cell in &report.cells {
            if let Some(csv) = cell_csv(cell) {
                write_file(dir, &cell_file_name(cell.case.label(), cell.gamma0_kt), &csv, &mut manifest)?;
            }
        }
    }
    write_file(dir, SUMMARY_FILE, &summary_csv(report), &mut manifest)?;
    if config.svg {
        for &g in &config.gamma0_kt {
            write_file(dir, &svg_file_name(g), &panel_svg(report, g, config.grid.t_max()), &mut manifest)?;
        }
    }
    Ok(manifest)
}
