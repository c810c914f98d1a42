use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::{Error, Result};

/// Control field `Ω_x(t)`.
///
/// Pulse `k` (0-based) starts at `first_pulse_at + k·tau`. After the last
/// pulse the emitter evolves undriven.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DriveProtocol {
    None,
    Continuous {
        omega: f64,
    },
    /// Instantaneous `π_x` pulses.
    PeriodicPiX {
        tau: f64,
        n_pulses: usize,
        first_pulse_at: f64,
    },
    /// Finite square pulses: `Ω_x = omega` on `[start, start + duration)`.
    SquarePulses {
        omega: f64,
        duration: f64,
        tau: f64,
        n_pulses: usize,
        first_pulse_at: f64,
    },
}

impl DriveProtocol {
    /// Train whose first pulse follows one free interval.
    pub fn periodic_pi_x(tau: f64, n_pulses: usize) -> Self {
        DriveProtocol::PeriodicPiX {
            tau,
            n_pulses,
            first_pulse_at: tau,
        }
    }

    /// Square `π` pulses of length `π/omega`, first one at `tau`.
    pub fn square_pi_pulses(omega: f64, tau: f64, n_pulses: usize) -> Self {
        DriveProtocol::SquarePulses {
            omega,
            duration: PI / omega,
            tau,
            n_pulses,
            first_pulse_at: tau,
        }
    }

    pub fn is_pulsed(&self) -> bool {
        matches!(
            self,
            DriveProtocol::PeriodicPiX { .. } | DriveProtocol::SquarePulses { .. }
        )
    }

    pub fn tau(&self) -> Option<f64> {
        match *self {
            DriveProtocol::PeriodicPiX { tau, .. } | DriveProtocol::SquarePulses { tau, .. } => {
                Some(tau)
            }
            _ => None,
        }
    }

    /// Constant drive amplitude, if the protocol has one.
    pub fn constant_drive(&self) -> Option<f64> {
        match *self {
            DriveProtocol::None => Some(0.0),
            DriveProtocol::Continuous { omega } => Some(omega),
            _ => None,
        }
    }

    /// Drive that remains once every pulse has fired.
    pub fn final_drive(&self) -> f64 {
        self.constant_drive().unwrap_or(0.0)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            DriveProtocol::None => Ok(()),
            DriveProtocol::Continuous { omega } => {
                if omega.is_finite() {
                    Ok(())
                } else {
                    Err(Error::InvalidConfig("omega must be finite"))
                }
            }
            DriveProtocol::PeriodicPiX {
                tau,
                n_pulses,
                first_pulse_at,
            } => check_train(tau, n_pulses, first_pulse_at),
            DriveProtocol::SquarePulses {
                omega,
                duration,
                tau,
                n_pulses,
                first_pulse_at,
            } => {
                check_train(tau, n_pulses, first_pulse_at)?;
                if !omega.is_finite() {
                    return Err(Error::InvalidConfig("omega must be finite"));
                }
                if !(duration.is_finite() && duration > 0.0) {
                    return Err(Error::InvalidConfig("pulse duration must be positive"));
                }
                if duration > tau {
                    return Err(Error::InvalidConfig("pulse duration must not exceed tau"));
                }
                Ok(())
            }
        }
    }

    /// Start times of the pulses, ascending.
    pub fn pulse_times(&self) -> Vec<f64> {
        match *self {
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
            } => (0..n_pulses)
                .map(|k| first_pulse_at + k as f64 * tau)
                .collect(),
            _ => Vec::new(),
        }
    }

    /// Times where the right-hand side or the state is discontinuous:
    /// pulse starts, plus the trailing edges of square pulses.
    pub fn events(&self) -> Vec<f64> {
        let mut events = self.pulse_times();
        if let DriveProtocol::SquarePulses { duration, .. } = *self {
            let ends: Vec<f64> = events.iter().map(|s| s + duration).collect();
            events.extend(ends);
            events.sort_by(f64::total_cmp);
            events.dedup();
        }
        events
    }

    /// `Ω_x(t)`. Instantaneous pulses contribute nothing here; they act
    /// through [`apply_pi_x`](super::apply_pi_x).
    pub fn omega_at(&self, t: f64) -> f64 {
        match *self {
            DriveProtocol::None | DriveProtocol::PeriodicPiX { .. } => 0.0,
            DriveProtocol::Continuous { omega } => omega,
            DriveProtocol::SquarePulses {
                omega,
                duration,
                tau,
                n_pulses,
                first_pulse_at,
            } => {
                let on = (0..n_pulses).any(|k| {
                    let start = first_pulse_at + k as f64 * tau;
                    t >= start && t < start + duration
                });
                if on {
                    omega
                } else {
                    0.0
                }
            }
        }
    }
}

fn check_train(tau: f64, n_pulses: usize, first_pulse_at: f64) -> Result<()> {
    if !(tau.is_finite() && tau > 0.0) {
        return Err(Error::InvalidConfig("tau must be positive"));
    }
    if n_pulses == 0 {
        return Err(Error::InvalidConfig("n_pulses must be at least 1"));
    }
    if !(first_pulse_at.is_finite() && first_pulse_at >= 0.0) {
        return Err(Error::InvalidConfig("first_pulse_at must be non-negative"));
    }
    Ok(())
}
