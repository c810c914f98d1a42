//! Work extraction from a driven two-level emitter coupled to a photonic bath.
//!
//! The crate is `no_std` (it needs `alloc`) and contains only the numerics:
//!
//! - [`qstate`]: qubit and N-level density matrices, Bloch vectors, energy.
//! - [`ergotropy`]: total, incoherent and coherent ergotropy, passive states,
//!   the Hermitian eigensolver they rest on, and closed forms for qubits.
//! - [`dynamics`]: dissipative Bloch equations, drive protocols including
//!   instantaneous `π_x` pulses, an event-aligned RK4 integrator and the
//!   analytic steady state.
//!
//! Units follow the usual convention for this model: the spontaneous emission
//! rate defaults to `Γ = 2`, and ergotropy is measured against a battery
//! Hamiltonian whose level splitting defaults to `ω0 = 1`.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod dynamics;
pub mod ergotropy;
mod error;
pub mod qstate;

pub use error::{Error, Result};

pub use dynamics::{
    apply_pi_x, bloch_rhs, rk4_step, simulate, steady_state, DriveProtocol, PhysicsParams,
    SampleTag, SimulationSettings, TrajectoryRecord, TrajectorySample,
};
pub use ergotropy::{
    ergotropy_breakdown, ergotropy_incoherent, ergotropy_total, hermitian_eigensystem,
    passive_energy_oracle, passive_state_energy, qubit_ergotropy_closed_form, ErgotropyBreakdown,
    Spectrum,
};
pub use qstate::{BatteryHamiltonian, BlochVector, NLevelState, QubitState, Violation};

/// Complex scalar used throughout.
pub type Complex = num_complex::Complex64;

/// Slack allowed on the Bloch radius and on density-matrix eigenvalues.
pub const POSITIVITY_TOL: f64 = 1e-9;
