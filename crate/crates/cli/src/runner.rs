//! Scenario execution.

use std::io::Write;
use std::path::{Path, PathBuf};

use ergokit_core::{
    ergotropy_breakdown, simulate, steady_state, BatteryHamiltonian, ErgotropyBreakdown,
    TrajectoryRecord,
};
use rayon::prelude::*;

use crate::config::{Overrides, ScenarioConfig};
use crate::error::{CliError, Result};
use crate::output;
use crate::presets::{self, RunSpec};

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub out_dir: PathBuf,
    pub overrides: Overrides,
    /// Worker threads; `None` lets the pool pick.
    pub workers: Option<usize>,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            out_dir: PathBuf::from("."),
            overrides: Overrides::default(),
            workers: None,
        }
    }
}

/// One finished run and where it was written.
#[derive(Debug, Clone)]
pub struct RunReport {
    pub name: String,
    pub path: PathBuf,
    pub final_ergotropy: f64,
    /// Bloch distance between the final state and the fixed point of the
    /// drive in force at `t_end`.
    pub steady_state_distance: f64,
}

impl RunReport {
    pub fn summary(&self) -> String {
        format!(
            "{}: final W = {:.6e}, steady-state distance = {:.3e} -> {}",
            self.name,
            self.final_ergotropy,
            self.steady_state_distance,
            self.path.display()
        )
    }
}

fn pool(workers: Option<usize>) -> Result<rayon::ThreadPool> {
    if workers == Some(0) {
        return Err(CliError::Config("workers: must be at least 1".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Config(format!("workers: {e}")))
}

fn simulate_spec(spec: &RunSpec) -> Result<TrajectoryRecord> {
    let c = &spec.config;
    Ok(simulate(
        &c.initial_state.state()?,
        &c.protocol(),
        &c.params(),
        &c.settings(),
    )?)
}

/// Runs every spec on its own worker; results come back in input order.
pub fn execute(specs: &[RunSpec], workers: Option<usize>) -> Result<Vec<TrajectoryRecord>> {
    pool(workers)?.install(|| specs.par_iter().map(simulate_spec).collect())
}

fn report(spec: &RunSpec, record: &TrajectoryRecord, path: PathBuf) -> RunReport {
    let fixed_point = steady_state(record.protocol.final_drive(), &record.params);
    RunReport {
        name: spec.name.clone(),
        path,
        final_ergotropy: record.final_derived().ergotropy.total,
        steady_state_distance: record
            .final_sample()
            .state
            .bloch()
            .distance(&fixed_point.bloch()),
    }
}

fn resolve(out_dir: &Path, path: &Path) -> PathBuf {
    if path.is_absolute() {
        path.to_path_buf()
    } else {
        out_dir.join(path)
    }
}

fn write_runs(
    specs: &[RunSpec],
    options: &RunOptions,
    path_of: impl Fn(&RunSpec) -> PathBuf,
) -> Result<Vec<RunReport>> {
    let records = execute(specs, options.workers)?;
    let mut reports = Vec::with_capacity(specs.len());
    for (spec, record) in specs.iter().zip(&records) {
        let path = path_of(spec);
        let bytes = output::encode(spec.config.format(), &spec.config, &output::rows(record))?;
        output::write(&path, &bytes)?;
        reports.push(report(spec, record, path));
    }
    Ok(reports)
}

/// `run`: a preset name or a config file. One output file per
/// (initial state, Δ) pair.
pub fn run_scenario(target: &str, options: &RunOptions) -> Result<Vec<RunReport>> {
    if presets::is_preset(target) {
        let mut scenarios = presets::scenarios(target).expect("known preset");
        for (config, _) in &mut scenarios {
            config.apply(&options.overrides)?;
        }
        let specs = presets::expand(target, &scenarios);
        return write_runs(&specs, options, |spec| {
            options.out_dir.join(format!(
                "{}.{}",
                spec.name,
                spec.config.format().extension()
            ))
        });
    }

    let mut config = ScenarioConfig::load(Path::new(target))?;
    config.apply(&options.overrides)?;
    let out = config.output.clone().expect("load fills in an output");
    let target_path = resolve(&options.out_dir, &out.path);
    let stem = target_path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "scenario".to_owned());
    let swept = config.sweep.is_some();
    let specs: Vec<RunSpec> = config
        .deltas()
        .into_iter()
        .map(|delta| {
            let name = if swept {
                format!("{stem}_delta{delta}")
            } else {
                stem.clone()
            };
            RunSpec::new(name, &config, delta)
        })
        .collect();
    write_runs(&specs, options, |spec| {
        if swept {
            target_path.with_file_name(format!("{}.{}", spec.name, out.format.extension()))
        } else {
            target_path.clone()
        }
    })
}

/// `sweep`: one run per Δ, merged into a single file ordered by Δ then t.
pub fn run_sweep(config_path: &Path, options: &RunOptions) -> Result<(PathBuf, Vec<RunReport>)> {
    let mut config = ScenarioConfig::load(config_path)?;
    config.apply(&options.overrides)?;
    let mut deltas = match &config.sweep {
        Some(list) => list.clone(),
        None => return Err(CliError::Config("sweep: missing list of detunings".into())),
    };
    deltas.sort_by(f64::total_cmp);
    let specs: Vec<RunSpec> = deltas
        .iter()
        .map(|&d| RunSpec::new(format!("delta{d}"), &config, d))
        .collect();
    let records = execute(&specs, options.workers)?;

    let out = config.output.clone().expect("load fills in an output");
    let path = resolve(&options.out_dir, &out.path);
    let rows: Vec<output::OutputRow> = records.iter().flat_map(output::rows).collect();
    let mut echo = config.resolved_for_delta(config.physics.delta);
    echo.sweep = Some(deltas);
    output::write(&path, &output::encode(out.format, &echo, &rows)?)?;

    let reports = specs
        .iter()
        .zip(&records)
        .map(|(spec, record)| report(spec, record, path.clone()))
        .collect();
    Ok((path, reports))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteadyRow {
    pub delta: f64,
    pub rho_ee: f64,
    pub ergotropy: ErgotropyBreakdown,
}

/// `steady`: analytic fixed point and its ergotropy for every Δ.
pub fn steady_state_report(config_path: &Path) -> Result<Vec<SteadyRow>> {
    let config = ScenarioConfig::load(config_path)?;
    steady_rows(&config)
}

pub fn steady_rows(config: &ScenarioConfig) -> Result<Vec<SteadyRow>> {
    let omega = config.protocol().constant_drive().ok_or_else(|| {
        CliError::Config("protocol: steady state needs a constant drive, not a pulse train".into())
    })?;
    let h = BatteryHamiltonian::qubit(config.physics.omega0_battery)?;
    let mut deltas = config.deltas();
    deltas.sort_by(f64::total_cmp);
    deltas
        .into_iter()
        .map(|delta| {
            let state = steady_state(omega, &config.params().with_delta(delta));
            Ok(SteadyRow {
                delta,
                rho_ee: state.rho_ee(),
                ergotropy: ergotropy_breakdown(&state.to_nlevel(), &h)?,
            })
        })
        .collect()
}

pub fn print_steady_table(rows: &[SteadyRow], out: &mut impl Write) -> std::io::Result<()> {
    writeln!(
        out,
        "{:>10} {:>24} {:>24} {:>24} {:>24}",
        "delta", "rho_ee_ss", "W_ss", "W_IC_ss", "W_C_ss"
    )?;
    for r in rows {
        writeln!(
            out,
            "{:>10} {:>24.16e} {:>24.16e} {:>24.16e} {:>24.16e}",
            r.delta, r.rho_ee, r.ergotropy.total, r.ergotropy.incoherent, r.ergotropy.coherent
        )?;
    }
    Ok(())
}
