//! Trajectory serialization.
//!
//! CSV floats use `{:.16e}`: 17 significant digits, enough for an exact
//! round trip of every `f64`.

use std::fs;
use std::path::Path;

use ergokit_core::TrajectoryRecord;
use serde::Serialize;

use crate::config::{Format, ScenarioConfig};
use crate::error::{CliError, Result};

pub const CSV_HEADER: [&str; 10] = [
    "t",
    "rho_ee",
    "re_rho_ge",
    "im_rho_ge",
    "energy",
    "W",
    "W_IC",
    "W_C",
    "pulse_tag",
    "delta",
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OutputRow {
    pub t: f64,
    pub rho_ee: f64,
    pub re_rho_ge: f64,
    pub im_rho_ge: f64,
    pub energy: f64,
    #[serde(rename = "W")]
    pub w: f64,
    #[serde(rename = "W_IC")]
    pub w_ic: f64,
    #[serde(rename = "W_C")]
    pub w_c: f64,
    pub pulse_tag: &'static str,
    pub delta: f64,
}

pub fn rows(record: &TrajectoryRecord) -> Vec<OutputRow> {
    let delta = record.params.delta;
    record
        .iter()
        .map(|(s, d)| OutputRow {
            t: s.t,
            rho_ee: s.state.rho_ee(),
            re_rho_ge: s.state.rho_ge().re,
            im_rho_ge: s.state.rho_ge().im,
            energy: d.energy,
            w: d.ergotropy.total,
            w_ic: d.ergotropy.incoherent,
            w_c: d.ergotropy.coherent,
            pulse_tag: s.tag.as_str(),
            delta,
        })
        .collect()
}

fn float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn to_csv(rows: &[OutputRow]) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| CliError::Config(format!("csv encoding: {e}"));
    w.write_record(CSV_HEADER).map_err(csv_err)?;
    for r in rows {
        w.write_record([
            float(r.t),
            float(r.rho_ee),
            float(r.re_rho_ge),
            float(r.im_rho_ge),
            float(r.energy),
            float(r.w),
            float(r.w_ic),
            float(r.w_c),
            r.pulse_tag.to_owned(),
            float(r.delta),
        ])
        .map_err(csv_err)?;
    }
    w.into_inner()
        .map_err(|e| CliError::Config(format!("csv encoding: {}", e.error())))
}

#[derive(Serialize)]
struct JsonDocument<'a> {
    config: &'a ScenarioConfig,
    samples: &'a [OutputRow],
}

pub fn to_json(config: &ScenarioConfig, rows: &[OutputRow]) -> Result<Vec<u8>> {
    let mut bytes = serde_json::to_vec_pretty(&JsonDocument {
        config,
        samples: rows,
    })
    .map_err(|e| CliError::Config(format!("json encoding: {e}")))?;
    bytes.push(b'\n');
    Ok(bytes)
}

pub fn encode(format: Format, config: &ScenarioConfig, rows: &[OutputRow]) -> Result<Vec<u8>> {
    match format {
        Format::Csv => to_csv(rows),
        Format::Json => to_json(config, rows),
    }
}

pub fn write(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|e| CliError::io(parent, e))?;
    }
    fs::write(path, bytes).map_err(|e| CliError::io(path, e))
}
