use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-physical state: Bloch radius {radius} exceeds 1")]
    NonPhysicalState { radius: f64 },

    #[error("non-physical state at t = {t}: Bloch radius exceeds 1 by {violation:e}")]
    NonPhysicalTrajectory { t: f64, violation: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension {dim} too large for permutation enumeration (max {max})")]
    DimensionTooLarge { dim: usize, max: usize },

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },

    #[error("integration step ({start}, {end}) would cross a pulse event at t = {event}")]
    StepOverPulseEvent { start: f64, end: f64, event: f64 },

    #[error("ergotropy component {component} is negative ({value:e}) beyond round-off")]
    InconsistentErgotropy { component: &'static str, value: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(&'static str),
}
