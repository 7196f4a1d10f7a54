//! CSV rows and the JSON run manifest.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::config::ExperimentConfig;
use crate::error::{CliError, Result};
use crate::experiment::{ResultRow, RunOutput};

pub const CSV_HEADER: [&str; 8] = ["sweep_param", "sweep_value", "quantity", "value", "ci_low", "ci_high", "trials", "seed"];

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

/// Writes the header and rows. Floats use the shortest text that parses
/// back to the same value, so identical results give identical bytes.
pub fn write_csv<W: Write>(rows: &[ResultRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record([
            r.sweep_param.clone().unwrap_or_default(),
            opt(r.sweep_value),
            r.quantity.to_string(),
            r.value.to_string(),
            opt(r.ci.map(|c| c.0)),
            opt(r.ci.map(|c| c.1)),
            opt(r.trials),
            opt(r.seed),
        ])?;
    }
    w.flush().map_err(|e| CliError::Csv(e.into()))?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub toolkit: String,
    pub version: String,
    /// Fully resolved config; `mmwave run --config <manifest>` re-runs it.
    pub config: ExperimentConfig,
    pub points: usize,
    pub rows: usize,
    pub csv: PathBuf,
    #[serde(default)]
    pub warnings: Vec<String>,
}

impl Manifest {
    pub fn new(config: &ExperimentConfig, output: &RunOutput, csv: &Path) -> Self {
        Self {
            toolkit: "mmwave".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            config: config.clone(),
            points: output.points,
            rows: output.rows.len(),
            csv: csv.into(),
            warnings: output.warnings.clone(),
        }
    }
}

/// `fig5.csv` -> `fig5.manifest.json`.
pub fn manifest_path(csv: &Path) -> PathBuf {
    csv.with_extension("manifest.json")
}

/// Writes the CSV to `csv` and the manifest next to it.
pub fn write_outputs(config: &ExperimentConfig, output: &RunOutput, csv: &Path) -> Result<PathBuf> {
    let write_err = |path: &Path| {
        let path = path.to_path_buf();
        move |source| CliError::Write { path, source }
    };
    let mut buf = Vec::new();
    write_csv(&output.rows, &mut buf)?;
    std::fs::write(csv, buf).map_err(write_err(csv))?;
    let manifest_file = manifest_path(csv);
    let manifest = Manifest::new(config, output, csv);
    let json = serde_json::to_string_pretty(&manifest).expect("manifest serializes") + "\n";
    std::fs::write(&manifest_file, json).map_err(write_err(&manifest_file))?;
    Ok(manifest_file)
}
