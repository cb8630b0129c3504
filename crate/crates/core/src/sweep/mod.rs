// Copyright 2026 The decohere Authors
// SPDX-License-Identifier: Apache-2.0

//! Batch runs over cases and bath temperatures, with CSV/SVG output.

mod config;
mod output;
mod run;

pub use config::{load_config, OutputFormat, RunConfig, SCHEMA_VERSION};
pub use output::{
    cell_file_name, emit_outputs, FileManifest, ManifestEntry, CELL_HEADER, SUMMARY_FILE, SUMMARY_HEADER,
};
pub use run::{run_sweep, CellReport, CellResult, SweepReport};
