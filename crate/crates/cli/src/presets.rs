//! Built-in scenarios.
//!
//! | preset | drive                         | Δ            | runs |
//! |--------|-------------------------------|--------------|------|
//! | fig2   | Ω = 30, plus undriven copies  | 0            | 4    |
//! | fig3   | Ω = 30                        | 0, 3, 5, 8   | 8    |
//! | fig4   | π_x train, τ = 0.3, 10 pulses | 0            | 2    |
//! | fig5   | π_x train, τ = 0.3, 10 pulses | 0, 3, 5, 8   | 8    |
//!
//! Every preset starts from the excited and the maximally coherent state.

use crate::config::{InitialState, PhysicsConfig, ProtocolConfig, ScenarioConfig, SCHEMA_VERSION};

pub const PRESET_NAMES: [&str; 4] = ["fig2", "fig3", "fig4", "fig5"];
pub const RABI: f64 = 30.0;
pub const PULSE_PERIOD: f64 = 0.3;
pub const PULSE_COUNT: usize = 10;
pub const DETUNINGS: [f64; 4] = [0.0, 3.0, 5.0, 8.0];
const STATES: [InitialState; 2] = [InitialState::Excited, InitialState::MaxCoherent];

/// One simulation with a single detuning and a file stem.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSpec {
    pub name: String,
    pub config: ScenarioConfig,
}

impl RunSpec {
    pub fn new(name: String, config: &ScenarioConfig, delta: f64) -> Self {
        Self {
            name,
            config: config.resolved_for_delta(delta),
        }
    }
}

pub fn is_preset(name: &str) -> bool {
    PRESET_NAMES.contains(&name)
}

fn scenario(
    initial_state: InitialState,
    protocol: ProtocolConfig,
    sweep: &[f64],
) -> ScenarioConfig {
    ScenarioConfig {
        schema: SCHEMA_VERSION,
        initial_state,
        t_end: None,
        dt: None,
        sample_every: None,
        sweep: Some(sweep.to_vec()),
        physics: PhysicsConfig::default(),
        protocol,
        output: None,
    }
}

/// File stem for one run: `{preset}_{state}_delta{Δ}[_undriven]`.
pub fn run_name(prefix: &str, state: InitialState, delta: f64, suffix: &str) -> String {
    format!("{prefix}_{}_delta{delta}{suffix}", state.label())
}

/// Unresolved scenarios of a preset, each paired with a name suffix.
pub fn scenarios(name: &str) -> Option<Vec<(ScenarioConfig, &'static str)>> {
    let continuous = ProtocolConfig::Continuous { omega: RABI };
    let pulsed = ProtocolConfig::PeriodicPiX {
        tau: PULSE_PERIOD,
        n_pulses: PULSE_COUNT,
        first_pulse_at: None,
    };
    let mut out = Vec::new();
    for state in STATES {
        match name {
            "fig2" => {
                out.push((scenario(state, continuous, &[0.0]), ""));
                out.push((scenario(state, ProtocolConfig::None, &[0.0]), "_undriven"));
            }
            "fig3" => out.push((scenario(state, continuous, &DETUNINGS), "")),
            "fig4" => out.push((scenario(state, pulsed, &[0.0]), "")),
            "fig5" => out.push((scenario(state, pulsed, &DETUNINGS), "")),
            _ => return None,
        }
    }
    Some(out)
}

/// Expand scenarios into single-detuning runs, states outermost.
pub fn expand(prefix: &str, scenarios: &[(ScenarioConfig, &str)]) -> Vec<RunSpec> {
    scenarios
        .iter()
        .flat_map(|(config, suffix)| {
            config.deltas().into_iter().map(move |delta| {
                RunSpec::new(
                    run_name(prefix, config.initial_state, delta, suffix),
                    config,
                    delta,
                )
            })
        })
        .collect()
}
