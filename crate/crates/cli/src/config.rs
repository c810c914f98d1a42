//! Scenario configuration files.
//!
//! TOML, one scenario per file:
//!
//! ```toml
//! schema = 1
//! initial_state = "excited"          # ground | max_coherent | { custom = [r1, r2, r3] }
//! t_end = 5.0                        # optional
//! dt = 1e-4                          # optional
//! sample_every = 10                  # optional
//! sweep = [0.0, 3.0, 5.0, 8.0]       # optional detuning list
//!
//! [physics]
//! gamma = 2.0
//! delta = 0.0
//! omega0_battery = 1.0
//!
//! [protocol]
//! kind = "periodic_pi_x"             # none | continuous | periodic_pi_x | square_pulses
//! tau = 0.3
//! n_pulses = 10
//!
//! [output]
//! path = "run.csv"
//! format = "csv"                     # csv | json
//! ```
//!
//! Unknown keys are rejected.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use ergokit_core::qstate::state_from_bloch;
use ergokit_core::{BlochVector, DriveProtocol, PhysicsParams, QubitState, SimulationSettings};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_DT: f64 = 1e-4;
pub const DEFAULT_SAMPLE_EVERY: usize = 10;
/// Span for undriven and continuously driven runs.
pub const DEFAULT_CONTINUOUS_T_END: f64 = 5.0;
/// Free decay appended after the last pulse of a train.
pub const PULSED_TAIL: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitialState {
    Excited,
    Ground,
    MaxCoherent,
    /// Bloch vector `[r1, r2, r3]`.
    Custom([f64; 3]),
}

impl InitialState {
    pub fn label(&self) -> &'static str {
        match self {
            InitialState::Excited => "excited",
            InitialState::Ground => "ground",
            InitialState::MaxCoherent => "max_coherent",
            InitialState::Custom(_) => "custom",
        }
    }

    pub fn state(&self) -> Result<QubitState> {
        match *self {
            InitialState::Excited => Ok(QubitState::excited()),
            InitialState::Ground => Ok(QubitState::ground()),
            InitialState::MaxCoherent => Ok(QubitState::max_coherent()),
            InitialState::Custom([r1, r2, r3]) => state_from_bloch(&BlochVector::new(r1, r2, r3))
                .map_err(|e| CliError::Config(format!("initial_state: {e}"))),
        }
    }
}

fn default_gamma() -> f64 {
    ergokit_core::dynamics::DEFAULT_GAMMA
}

fn default_omega0() -> f64 {
    1.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhysicsConfig {
    #[serde(default = "default_gamma")]
    pub gamma: f64,
    #[serde(default)]
    pub delta: f64,
    #[serde(default = "default_omega0")]
    pub omega0_battery: f64,
}

impl Default for PhysicsConfig {
    fn default() -> Self {
        Self {
            gamma: default_gamma(),
            delta: 0.0,
            omega0_battery: default_omega0(),
        }
    }
}

impl From<PhysicsConfig> for PhysicsParams {
    fn from(c: PhysicsConfig) -> Self {
        PhysicsParams {
            gamma: c.gamma,
            delta: c.delta,
            omega0_battery: c.omega0_battery,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ProtocolConfig {
    None,
    Continuous {
        omega: f64,
    },
    PeriodicPiX {
        tau: f64,
        n_pulses: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        first_pulse_at: Option<f64>,
    },
    SquarePulses {
        omega: f64,
        tau: f64,
        n_pulses: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        duration: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        first_pulse_at: Option<f64>,
    },
}

impl ProtocolConfig {
    pub fn to_protocol(&self) -> DriveProtocol {
        match *self {
            ProtocolConfig::None => DriveProtocol::None,
            ProtocolConfig::Continuous { omega } => DriveProtocol::Continuous { omega },
            ProtocolConfig::PeriodicPiX {
                tau,
                n_pulses,
                first_pulse_at,
            } => DriveProtocol::PeriodicPiX {
                tau,
                n_pulses,
                first_pulse_at: first_pulse_at.unwrap_or(tau),
            },
            ProtocolConfig::SquarePulses {
                omega,
                tau,
                n_pulses,
                duration,
                first_pulse_at,
            } => DriveProtocol::SquarePulses {
                omega,
                duration: duration.unwrap_or(std::f64::consts::PI / omega),
                tau,
                n_pulses,
                first_pulse_at: first_pulse_at.unwrap_or(tau),
            },
        }
    }

    /// The same protocol with every default spelled out.
    pub fn resolved(&self) -> Self {
        match self.to_protocol() {
            DriveProtocol::PeriodicPiX {
                tau,
                n_pulses,
                first_pulse_at,
            } => ProtocolConfig::PeriodicPiX {
                tau,
                n_pulses,
                first_pulse_at: Some(first_pulse_at),
            },
            DriveProtocol::SquarePulses {
                omega,
                duration,
                tau,
                n_pulses,
                first_pulse_at,
            } => ProtocolConfig::SquarePulses {
                omega,
                tau,
                n_pulses,
                duration: Some(duration),
                first_pulse_at: Some(first_pulse_at),
            },
            _ => *self,
        }
    }

    fn default_t_end(&self) -> f64 {
        match self.to_protocol() {
            DriveProtocol::PeriodicPiX {
                tau,
                n_pulses,
                first_pulse_at,
            }
            | DriveProtocol::SquarePulses {
                tau,
                n_pulses,
                first_pulse_at,
                ..
            } => {
                // n·τ + tail when the first pulse sits at τ
                first_pulse_at + (n_pulses as f64 - 1.0) * tau + PULSED_TAIL
            }
            _ => DEFAULT_CONTINUOUS_T_END,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(&self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    pub path: PathBuf,
    #[serde(default)]
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub schema: u32,
    pub initial_state: InitialState,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_end: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dt: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sample_every: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<Vec<f64>>,
    #[serde(default)]
    pub physics: PhysicsConfig,
    pub protocol: ProtocolConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputConfig>,
}

/// Command-line settings that take precedence over the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub dt: Option<f64>,
    pub t_end: Option<f64>,
    pub format: Option<Format>,
}

impl ScenarioConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let config: ScenarioConfig =
            toml::from_str(text).map_err(|e| CliError::Config(e.message().to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let mut config = Self::from_toml(&text)
            .map_err(|e| CliError::Config(format!("{}: {}", path.display(), strip(e))))?;
        if config.output.is_none() {
            let stem = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "scenario".to_owned());
            config.output = Some(OutputConfig {
                path: PathBuf::from(format!("{stem}.csv")),
                format: Format::Csv,
            });
        }
        Ok(config)
    }

    pub fn apply(&mut self, overrides: &Overrides) -> Result<()> {
        if let Some(dt) = overrides.dt {
            self.dt = Some(dt);
        }
        if let Some(t_end) = overrides.t_end {
            self.t_end = Some(t_end);
        }
        if let Some(format) = overrides.format {
            let output = self.output.get_or_insert_with(|| OutputConfig {
                path: PathBuf::from("scenario.csv"),
                format,
            });
            output.format = format;
            output.path.set_extension(format.extension());
        }
        self.validate()
    }

    pub fn params(&self) -> PhysicsParams {
        self.physics.into()
    }

    pub fn protocol(&self) -> DriveProtocol {
        self.protocol.to_protocol()
    }

    pub fn settings(&self) -> SimulationSettings {
        SimulationSettings {
            t_end: self.t_end.unwrap_or_else(|| self.protocol.default_t_end()),
            dt: self.dt.unwrap_or(DEFAULT_DT),
            sample_every: self.sample_every.unwrap_or(DEFAULT_SAMPLE_EVERY),
        }
    }

    pub fn format(&self) -> Format {
        self.output.as_ref().map(|o| o.format).unwrap_or_default()
    }

    /// Detunings to run: the sweep list when present, else `physics.delta`.
    pub fn deltas(&self) -> Vec<f64> {
        match &self.sweep {
            Some(list) => list.clone(),
            None => vec![self.physics.delta],
        }
    }

    /// Copy with all defaults filled in and a single detuning.
    pub fn resolved_for_delta(&self, delta: f64) -> ScenarioConfig {
        let settings = self.settings();
        ScenarioConfig {
            schema: self.schema,
            initial_state: self.initial_state,
            t_end: Some(settings.t_end),
            dt: Some(settings.dt),
            sample_every: Some(settings.sample_every),
            sweep: None,
            physics: PhysicsConfig {
                delta,
                ..self.physics
            },
            protocol: self.protocol.resolved(),
            output: self.output.clone(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.schema != SCHEMA_VERSION {
            return Err(CliError::Config(format!(
                "schema: unsupported version {} (expected {SCHEMA_VERSION})",
                self.schema
            )));
        }
        self.initial_state.state()?;
        let field = |name: &'static str| {
            move |e: ergokit_core::Error| CliError::Config(format!("{name}: {e}"))
        };
        self.params().validate().map_err(field("physics"))?;
        let protocol = self.protocol();
        protocol.validate().map_err(field("protocol"))?;
        self.settings().validate(&protocol).map_err(field("grid"))?;
        if let Some(list) = &self.sweep {
            if list.is_empty() {
                return Err(CliError::Config("sweep: list is empty".into()));
            }
            if list.iter().any(|d| !d.is_finite()) {
                return Err(CliError::Config("sweep: detunings must be finite".into()));
            }
            let distinct: BTreeSet<u64> = list.iter().map(|d| d.to_bits()).collect();
            if distinct.len() != list.len() {
                return Err(CliError::Config("sweep: duplicate detuning".into()));
            }
        }
        Ok(())
    }
}

fn strip(e: CliError) -> String {
    match e {
        CliError::Config(msg) => msg,
        other => other.to_string(),
    }
}
