//! Driven-dissipative two-level emitter.
//!
//! Only `(ρ_ee, ρ_ge)` are evolved:
//!
//! ```text
//! dρ_ee/dt = i(Ω_x/2)(ρ_eg − ρ_ge) − Γρ_ee
//! dρ_ge/dt = (iΔ − Γ/2)ρ_ge − i(Ω_x/2)(ρ_ee − ρ_gg)
//! ```
//!
//! `ρ_gg = 1 − ρ_ee` and `ρ_eg = conj(ρ_ge)`, so the equations for those two
//! entries carry no extra information.

mod integrate;
mod protocol;

pub use integrate::{
    rk4_step, simulate, DerivedQuantities, SampleTag, SimulationSettings, TrajectoryRecord,
    TrajectorySample,
};
pub use protocol::DriveProtocol;

use crate::qstate::QubitState;
use crate::{Complex, Error, Result};

/// Emission rate used when nothing else is configured.
pub const DEFAULT_GAMMA: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicsParams {
    /// Spontaneous emission rate `Γ`.
    pub gamma: f64,
    /// Detuning `Δ` between drive carrier and emitter transition.
    pub delta: f64,
    /// Level splitting `ω0` of the battery Hamiltonian used for ergotropy.
    pub omega0_battery: f64,
}

impl Default for PhysicsParams {
    fn default() -> Self {
        Self {
            gamma: DEFAULT_GAMMA,
            delta: 0.0,
            omega0_battery: 1.0,
        }
    }
}

impl PhysicsParams {
    pub fn with_delta(self, delta: f64) -> Self {
        Self { delta, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.gamma.is_finite() && self.gamma > 0.0) {
            return Err(Error::InvalidConfig("gamma must be positive and finite"));
        }
        if !self.delta.is_finite() {
            return Err(Error::InvalidConfig("delta must be finite"));
        }
        if !(self.omega0_battery.is_finite() && self.omega0_battery > 0.0) {
            return Err(Error::InvalidConfig(
                "omega0_battery must be positive and finite",
            ));
        }
        Ok(())
    }
}

/// Time derivative of `(ρ_ee, ρ_ge)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitDerivative {
    pub d_rho_ee: f64,
    pub d_rho_ge: Complex,
}

impl QubitDerivative {
    pub fn norm(&self) -> f64 {
        libm::hypot(self.d_rho_ee, self.d_rho_ge.norm())
    }
}

pub fn bloch_rhs(s: &QubitState, omega_x: f64, p: &PhysicsParams) -> QubitDerivative {
    let i = Complex::i();
    let half_drive = 0.5 * omega_x;
    let pumping = i * half_drive * (s.rho_eg() - s.rho_ge());
    // `pumping` is real: ρ_eg − ρ_ge is purely imaginary.
    let d_rho_ee = pumping.re - p.gamma * s.rho_ee();
    let d_rho_ge = Complex::new(-0.5 * p.gamma, p.delta) * s.rho_ge()
        - i * half_drive * (s.rho_ee() - s.rho_gg());
    QubitDerivative { d_rho_ee, d_rho_ge }
}

/// Instantaneous `π_x` pulse, `ρ ↦ σx ρ σx`: populations swap and the
/// coherence is conjugated.
pub fn apply_pi_x(s: &QubitState) -> QubitState {
    QubitState::from_inversion(-s.inversion(), s.rho_ge().conj())
}

/// Fixed point of the equations under a constant drive `Ω`:
///
/// ```text
/// ρ_ee = (Ω²/4) / (Δ² + Γ²/4 + Ω²/2)
/// ρ_ge = −(Ω/2)(Δ − iΓ/2) / (Δ² + Γ²/4 + Ω²/2)
/// ```
pub fn steady_state(omega: f64, p: &PhysicsParams) -> QubitState {
    let denom = p.delta * p.delta + 0.25 * p.gamma * p.gamma + 0.5 * omega * omega;
    let rho_ee = 0.25 * omega * omega / denom;
    let rho_ge = Complex::new(p.delta, -0.5 * p.gamma) * (-0.5 * omega / denom);
    QubitState::new_unchecked(rho_ee, rho_ge)
}
