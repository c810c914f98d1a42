//! Qubit and N-level battery states.
//!
//! A qubit is stored as the population inversion `ρ_ee − ρ_gg` plus `ρ_ge`.
//! Both populations and `ρ_eg` follow from unit trace and Hermiticity, so
//! neither can drift, and population swaps are exact sign flips. The Bloch
//! parameterisation is `ρ = ½(σ0 + r1σx + r2σy + r3σz)` in the `(|e⟩, |g⟩)`
//! basis, which gives `r3 = ρ_ee − ρ_gg` and `ρ_ge = (r1 + i·r2)/2`.
//!
//! [`NLevelState`] is a dense density matrix in the eigenbasis of a
//! [`BatteryHamiltonian`], ordered by ascending energy. For a qubit, index 0
//! is `|g⟩` and index 1 is `|e⟩`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::ergotropy::hermitian_eigensystem;
use crate::{Complex, Error, Result, POSITIVITY_TOL};

/// Tolerance used by [`NLevelState::validate`] for trace and Hermiticity.
pub const MATRIX_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState {
    // ρ_ee − ρ_gg, i.e. the Bloch component r3
    inversion: f64,
    rho_ge: Complex,
}

impl QubitState {
    /// Builds a qubit state, rejecting anything outside the Bloch ball.
    pub fn new(rho_ee: f64, rho_ge: Complex) -> Result<Self> {
        let state = Self::new_unchecked(rho_ee, rho_ge);
        let radius = state.bloch_radius();
        if !radius.is_finite() || radius > 1.0 + POSITIVITY_TOL {
            return Err(Error::NonPhysicalState { radius });
        }
        Ok(state)
    }

    /// Skips the positivity check. Used by the integrator, which checks
    /// the radius itself after every step.
    pub(crate) fn new_unchecked(rho_ee: f64, rho_ge: Complex) -> Self {
        Self::from_inversion(2.0 * rho_ee - 1.0, rho_ge)
    }

    pub(crate) const fn from_inversion(inversion: f64, rho_ge: Complex) -> Self {
        Self { inversion, rho_ge }
    }

    pub const fn excited() -> Self {
        Self::from_inversion(1.0, Complex::new(0.0, 0.0))
    }

    pub const fn ground() -> Self {
        Self::from_inversion(-1.0, Complex::new(0.0, 0.0))
    }

    /// `(|e⟩ + |g⟩)/√2`.
    pub const fn max_coherent() -> Self {
        Self::from_inversion(0.0, Complex::new(0.5, 0.0))
    }

    pub const fn maximally_mixed() -> Self {
        Self::from_inversion(0.0, Complex::new(0.0, 0.0))
    }

    pub fn rho_ee(&self) -> f64 {
        0.5 * (1.0 + self.inversion)
    }

    pub fn rho_gg(&self) -> f64 {
        0.5 * (1.0 - self.inversion)
    }

    /// `ρ_ee − ρ_gg`.
    pub fn inversion(&self) -> f64 {
        self.inversion
    }

    pub fn rho_ge(&self) -> Complex {
        self.rho_ge
    }

    pub fn rho_eg(&self) -> Complex {
        self.rho_ge.conj()
    }

    pub fn bloch(&self) -> BlochVector {
        bloch_from_state(self)
    }

    pub fn bloch_radius(&self) -> f64 {
        self.bloch().radius()
    }

    /// Energy `Tr(ρH)` against a two-level Hamiltonian.
    pub fn energy(&self, h: &BatteryHamiltonian) -> Result<f64> {
        match h.levels() {
            [e_g, e_e] => Ok(e_g * self.rho_gg() + e_e * self.rho_ee()),
            levels => Err(Error::DimensionMismatch {
                expected: 2,
                found: levels.len(),
            }),
        }
    }

    /// The same state as a 2×2 matrix with `|g⟩` first.
    pub fn to_nlevel(&self) -> NLevelState {
        NLevelState {
            dim: 2,
            matrix: vec![
                Complex::new(self.rho_gg(), 0.0),
                self.rho_ge,
                self.rho_eg(),
                Complex::new(self.rho_ee(), 0.0),
            ],
        }
    }
}

impl From<QubitState> for NLevelState {
    fn from(s: QubitState) -> Self {
        s.to_nlevel()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub r1: f64,
    pub r2: f64,
    pub r3: f64,
}

impl BlochVector {
    pub const fn new(r1: f64, r2: f64, r3: f64) -> Self {
        Self { r1, r2, r3 }
    }

    pub fn radius(&self) -> f64 {
        libm::sqrt(self.r1 * self.r1 + self.r2 * self.r2 + self.r3 * self.r3)
    }

    pub fn distance(&self, other: &BlochVector) -> f64 {
        BlochVector::new(self.r1 - other.r1, self.r2 - other.r2, self.r3 - other.r3).radius()
    }
}

pub fn bloch_from_state(s: &QubitState) -> BlochVector {
    BlochVector {
        r1: 2.0 * s.rho_ge.re,
        r2: 2.0 * s.rho_ge.im,
        r3: s.inversion,
    }
}

pub fn state_from_bloch(b: &BlochVector) -> Result<QubitState> {
    let state = QubitState::from_inversion(b.r3, Complex::new(0.5 * b.r1, 0.5 * b.r2));
    let radius = b.radius();
    if !radius.is_finite() || radius > 1.0 + POSITIVITY_TOL {
        return Err(Error::NonPhysicalState { radius });
    }
    Ok(state)
}

/// Diagonal battery Hamiltonian, levels strictly ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct BatteryHamiltonian {
    levels: Vec<f64>,
}

impl BatteryHamiltonian {
    pub fn new(levels: Vec<f64>) -> Result<Self> {
        if levels.len() < 2 {
            return Err(Error::InvalidConfig(
                "battery Hamiltonian needs at least two levels",
            ));
        }
        if levels.iter().any(|e| !e.is_finite()) {
            return Err(Error::InvalidConfig("battery levels must be finite"));
        }
        if levels.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidConfig(
                "battery levels must be strictly ascending",
            ));
        }
        Ok(Self { levels })
    }

    /// `H = ω0|e⟩⟨e|`, i.e. levels `[0, ω0]`.
    pub fn qubit(omega0: f64) -> Result<Self> {
        Self::new(vec![0.0, omega0])
    }

    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    pub fn dim(&self) -> usize {
        self.levels.len()
    }

    pub fn ground_energy(&self) -> f64 {
        self.levels[0]
    }

    pub(crate) fn check_dim(&self, dim: usize) -> Result<()> {
        if self.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: dim,
            });
        }
        Ok(())
    }
}

impl Default for BatteryHamiltonian {
    fn default() -> Self {
        Self {
            levels: vec![0.0, 1.0],
        }
    }
}

/// Dense `dim × dim` density matrix, row-major.
///
/// Construction only checks the shape; call [`NLevelState::validate`] for the
/// physical invariants.
#[derive(Debug, Clone, PartialEq)]
pub struct NLevelState {
    dim: usize,
    matrix: Vec<Complex>,
}

/// First invariant a matrix fails, with its size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Violation {
    /// `|Tr ρ − 1|`.
    Trace(f64),
    /// Largest `|ρ_ij − conj(ρ_ji)|`.
    Hermiticity(f64),
    /// Magnitude of the most negative eigenvalue.
    Positivity(f64),
    /// Entries that are NaN or infinite.
    NonFinite,
    /// The eigensolver failed, so positivity could not be decided.
    Undetermined(f64),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Trace(v) => write!(f, "trace deviates from 1 by {v:e}"),
            Violation::Hermiticity(v) => write!(f, "not Hermitian (max asymmetry {v:e})"),
            Violation::Positivity(v) => write!(f, "negative eigenvalue of magnitude {v:e}"),
            Violation::NonFinite => f.write_str("non-finite entries"),
            Violation::Undetermined(r) => {
                write!(f, "eigensolver did not converge (residual {r:e})")
            }
        }
    }
}

impl NLevelState {
    pub fn new(dim: usize, matrix: Vec<Complex>) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidConfig("state dimension must be at least 2"));
        }
        if matrix.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: matrix.len(),
            });
        }
        Ok(Self { dim, matrix })
    }

    /// Diagonal state with the given populations (ascending-energy order).
    pub fn diagonal(populations: &[f64]) -> Result<Self> {
        let dim = populations.len();
        let mut matrix = vec![Complex::new(0.0, 0.0); dim * dim];
        for (i, p) in populations.iter().enumerate() {
            matrix[i * dim + i] = Complex::new(*p, 0.0);
        }
        Self::new(dim, matrix)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex {
        self.matrix[row * self.dim + col]
    }

    pub fn entries(&self) -> &[Complex] {
        &self.matrix
    }

    /// Real parts of the diagonal.
    pub fn populations(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self.get(i, i).re).collect()
    }

    /// `Tr(ρH)` for a Hamiltonian diagonal in this basis.
    pub fn energy(&self, h: &BatteryHamiltonian) -> Result<f64> {
        h.check_dim(self.dim)?;
        Ok(self
            .populations()
            .iter()
            .zip(h.levels())
            .map(|(p, e)| p * e)
            .sum())
    }

    /// Convex combination `α·self + (1 − α)·other`.
    pub fn mix(&self, other: &NLevelState, alpha: f64) -> Result<NLevelState> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let matrix = self
            .matrix
            .iter()
            .zip(&other.matrix)
            .map(|(a, b)| a * alpha + b * (1.0 - alpha))
            .collect();
        Ok(NLevelState {
            dim: self.dim,
            matrix,
        })
    }

    /// Checks trace, Hermiticity and positivity, in that order.
    pub fn validate(&self) -> core::result::Result<(), Violation> {
        if self
            .matrix
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Violation::NonFinite);
        }
        let trace: f64 = (0..self.dim).map(|i| self.get(i, i).re).sum();
        let trace_dev = (trace - 1.0).abs();
        if trace_dev > MATRIX_TOL {
            return Err(Violation::Trace(trace_dev));
        }
        let mut asym = 0.0_f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                asym = asym.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        if asym > MATRIX_TOL {
            return Err(Violation::Hermiticity(asym));
        }
        let spectrum = match hermitian_eigensystem(self) {
            Ok(s) => s,
            Err(Error::NoConvergence { residual, .. }) => {
                return Err(Violation::Undetermined(residual))
            }
            Err(_) => return Err(Violation::Undetermined(f64::NAN)),
        };
        let min = spectrum.eigenvalues().last().copied().unwrap_or(0.0);
        if min < -POSITIVITY_TOL {
            return Err(Violation::Positivity(-min));
        }
        Ok(())
    }
}

/// States that carry a mean energy against a [`BatteryHamiltonian`].
pub trait Energy {
    fn energy(&self, h: &BatteryHamiltonian) -> Result<f64>;
}

impl Energy for QubitState {
    fn energy(&self, h: &BatteryHamiltonian) -> Result<f64> {
        QubitState::energy(self, h)
    }
}

impl Energy for NLevelState {
    fn energy(&self, h: &BatteryHamiltonian) -> Result<f64> {
        NLevelState::energy(self, h)
    }
}

/// `Tr(ρH)`.
pub fn energy<S: Energy + ?Sized>(state: &S, h: &BatteryHamiltonian) -> Result<f64> {
    state.energy(h)
}
