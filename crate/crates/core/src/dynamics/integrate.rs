//! Event-aligned fixed-step RK4.
//!
//! Steps never straddle an event: each segment between consecutive events is
//! covered by full steps of `dt` and one shortened step landing exactly on the
//! event. Pulses are then applied as exact maps between a `PrePulse` and a
//! `PostPulse` sample sharing the same time.

use alloc::vec::Vec;

use super::{apply_pi_x, bloch_rhs, DriveProtocol, PhysicsParams};
use crate::ergotropy::{ergotropy_breakdown, ErgotropyBreakdown};
use crate::qstate::{BatteryHamiltonian, QubitState};
use crate::{Complex, Error, Result, POSITIVITY_TOL};

/// A remaining segment within this fraction of `dt` of a whole number of steps
/// is covered by that many steps instead of adding a sliver step.
const STEP_SNAP: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleTag {
    Regular,
    PrePulse,
    PostPulse,
}

impl SampleTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            SampleTag::Regular => "regular",
            SampleTag::PrePulse => "pre_pulse",
            SampleTag::PostPulse => "post_pulse",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectorySample {
    pub t: f64,
    pub state: QubitState,
    pub tag: SampleTag,
}

/// Energy and ergotropy of one sample, against the battery Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedQuantities {
    pub energy: f64,
    pub ergotropy: ErgotropyBreakdown,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryRecord {
    pub params: PhysicsParams,
    pub protocol: DriveProtocol,
    pub samples: Vec<TrajectorySample>,
    /// Parallel to `samples`.
    pub derived: Vec<DerivedQuantities>,
}

impl TrajectoryRecord {
    pub fn iter(&self) -> impl Iterator<Item = (&TrajectorySample, &DerivedQuantities)> {
        self.samples.iter().zip(&self.derived)
    }

    pub fn final_sample(&self) -> &TrajectorySample {
        self.samples
            .last()
            .expect("a trajectory always holds its initial sample")
    }

    pub fn final_derived(&self) -> &DerivedQuantities {
        self.derived
            .last()
            .expect("a trajectory always holds its initial sample")
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulationSettings {
    pub t_end: f64,
    pub dt: f64,
    /// Record a regular sample every this many steps.
    pub sample_every: usize,
}

impl Default for SimulationSettings {
    fn default() -> Self {
        Self {
            t_end: 5.0,
            dt: 1e-4,
            sample_every: 10,
        }
    }
}

// derivative of (ρ_ee − ρ_gg, ρ_ge)
#[derive(Clone, Copy)]
struct Deriv {
    w: f64,
    ge: Complex,
}

impl Deriv {
    fn of(s: &QubitState, omega_x: f64, p: &PhysicsParams) -> Self {
        let d = bloch_rhs(s, omega_x, p);
        Self {
            w: 2.0 * d.d_rho_ee,
            ge: d.d_rho_ge,
        }
    }
}

fn advance(s: &QubitState, k: Deriv, h: f64) -> QubitState {
    QubitState::from_inversion(s.inversion() + h * k.w, s.rho_ge() + k.ge * h)
}

fn event_inside(protocol: &DriveProtocol, t: f64, dt: f64) -> Option<f64> {
    let slack = 4.0 * f64::EPSILON * (1.0 + t.abs() + dt);
    protocol
        .events()
        .into_iter()
        .find(|&e| e > t + slack && e < t + dt - slack)
}

/// One classical RK4 step from `t` to `t + dt`.
///
/// The drive is piecewise constant and no event may lie inside the step, so
/// `Ω_x` is read once at the step midpoint and used for all four stages.
pub fn rk4_step(
    s: &QubitState,
    t: f64,
    dt: f64,
    protocol: &DriveProtocol,
    p: &PhysicsParams,
) -> Result<QubitState> {
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::InvalidConfig("dt must be positive"));
    }
    if let Some(event) = event_inside(protocol, t, dt) {
        return Err(Error::StepOverPulseEvent {
            start: t,
            end: t + dt,
            event,
        });
    }
    Ok(rk4_unchecked(s, protocol.omega_at(t + 0.5 * dt), dt, p))
}

fn rk4_unchecked(s: &QubitState, omega_x: f64, h: f64, p: &PhysicsParams) -> QubitState {
    let k1 = Deriv::of(s, omega_x, p);
    let k2 = Deriv::of(&advance(s, k1, 0.5 * h), omega_x, p);
    let k3 = Deriv::of(&advance(s, k2, 0.5 * h), omega_x, p);
    let k4 = Deriv::of(&advance(s, k3, h), omega_x, p);
    let sixth = h / 6.0;
    QubitState::from_inversion(
        s.inversion() + sixth * (k1.w + 2.0 * k2.w + 2.0 * k3.w + k4.w),
        s.rho_ge() + (k1.ge + k2.ge * 2.0 + k3.ge * 2.0 + k4.ge) * sixth,
    )
}

impl SimulationSettings {
    /// Preconditions of [`simulate`] that involve the grid.
    pub fn validate(&self, protocol: &DriveProtocol) -> Result<()> {
        check_settings(protocol, self)
    }
}

fn check_settings(protocol: &DriveProtocol, settings: &SimulationSettings) -> Result<()> {
    let SimulationSettings {
        t_end,
        dt,
        sample_every,
    } = *settings;
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::InvalidConfig("dt must be positive"));
    }
    if !(t_end.is_finite() && t_end > 0.0) {
        return Err(Error::InvalidConfig("t_end must be positive"));
    }
    if sample_every == 0 {
        return Err(Error::InvalidConfig("sample_every must be at least 1"));
    }
    if let Some(tau) = protocol.tau() {
        if dt > tau / 10.0 * (1.0 + 1e-12) {
            return Err(Error::InvalidConfig(
                "dt must not exceed tau/10 for pulsed drives",
            ));
        }
    }
    Ok(())
}

struct Recorder {
    hamiltonian: BatteryHamiltonian,
    samples: Vec<TrajectorySample>,
    derived: Vec<DerivedQuantities>,
}

impl Recorder {
    fn push(&mut self, t: f64, state: QubitState, tag: SampleTag) -> Result<()> {
        let nlevel = state.to_nlevel();
        let energy = nlevel.energy(&self.hamiltonian)?;
        let ergotropy = ergotropy_breakdown(&nlevel, &self.hamiltonian)?;
        self.samples.push(TrajectorySample { t, state, tag });
        self.derived.push(DerivedQuantities { energy, ergotropy });
        Ok(())
    }
}

fn check_physical(t: f64, s: &QubitState) -> Result<()> {
    let r = s.bloch_radius();
    if !r.is_finite() || r > 1.0 + POSITIVITY_TOL {
        return Err(Error::NonPhysicalTrajectory {
            t,
            violation: r - 1.0,
        });
    }
    Ok(())
}

/// Integrates from `t = 0` to `settings.t_end`.
///
/// Records a regular sample at `t = 0`, every `sample_every` steps and at
/// `t_end`. Each pulse start gets a `PrePulse`/`PostPulse` pair; for
/// instantaneous pulses the `π_x` map is applied between them.
pub fn simulate(
    initial: &QubitState,
    protocol: &DriveProtocol,
    params: &PhysicsParams,
    settings: &SimulationSettings,
) -> Result<TrajectoryRecord> {
    params.validate()?;
    protocol.validate()?;
    check_settings(protocol, settings)?;
    check_physical(0.0, initial)?;

    let SimulationSettings {
        t_end,
        dt,
        sample_every,
    } = *settings;
    let pulse_starts = protocol.pulse_times();
    let instantaneous = matches!(protocol, DriveProtocol::PeriodicPiX { .. });

    let mut boundaries: Vec<f64> = protocol
        .events()
        .into_iter()
        .filter(|&e| e <= t_end)
        .collect();
    if boundaries.last().is_none_or(|&e| e < t_end) {
        boundaries.push(t_end);
    }

    let mut rec = Recorder {
        hamiltonian: crate::qstate::BatteryHamiltonian::qubit(params.omega0_battery)?,
        samples: Vec::new(),
        derived: Vec::new(),
    };

    let mut state = *initial;
    let mut t = 0.0;
    let mut steps: usize = 0;
    rec.push(0.0, state, SampleTag::Regular)?;

    for &boundary in &boundaries {
        let span = boundary - t;
        if span > 0.0 {
            let ratio = span / dt;
            let whole = libm::round(ratio);
            let n_steps = if whole >= 1.0 && (ratio - whole).abs() <= STEP_SNAP {
                whole as usize
            } else {
                libm::floor(ratio) as usize + 1
            };
            let seg_start = t;
            for k in 0..n_steps {
                let t0 = seg_start + k as f64 * dt;
                let t1 = if k + 1 == n_steps {
                    boundary
                } else {
                    seg_start + (k + 1) as f64 * dt
                };
                let h = t1 - t0;
                state = rk4_unchecked(&state, protocol.omega_at(t0 + 0.5 * h), h, params);
                check_physical(t1, &state)?;
                steps += 1;
                if steps.is_multiple_of(sample_every) && k + 1 != n_steps {
                    rec.push(t1, state, SampleTag::Regular)?;
                }
            }
            t = boundary;
        }

        if pulse_starts.contains(&boundary) {
            rec.push(t, state, SampleTag::PrePulse)?;
            if instantaneous {
                state = apply_pi_x(&state);
            }
            rec.push(t, state, SampleTag::PostPulse)?;
        } else if boundary < t_end && steps.is_multiple_of(sample_every) && span > 0.0 {
            // trailing edge of a square pulse that coincided with a sample slot
            rec.push(t, state, SampleTag::Regular)?;
        }
    }

    if rec.samples.last().is_some_and(|s| s.t < t_end) {
        rec.push(t_end, state, SampleTag::Regular)?;
    }

    Ok(TrajectoryRecord {
        params: *params,
        protocol: *protocol,
        samples: rec.samples,
        derived: rec.derived,
    })
}
