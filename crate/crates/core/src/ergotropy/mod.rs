//! Ergotropy and its coherent/incoherent split.
//!
//! Ergotropy is the energy above the passive state, which pairs the
//! eigenvalues of `ρ` in descending order with the battery levels in ascending
//! order. The incoherent part is the ergotropy of the dephased state `ρ^d`
//! (coherences removed in the battery eigenbasis); the coherent part is the
//! remainder.

mod eigen;

use alloc::vec::Vec;

pub use eigen::{hermitian_eigensystem, Spectrum, MAX_SWEEPS, OFF_DIAGONAL_TOL};

use crate::qstate::{BatteryHamiltonian, BlochVector, NLevelState};
use crate::{Error, Result, POSITIVITY_TOL};

/// Values in `[−NEGATIVE_TOL, 0)` are round-off and clamp to zero; anything
/// lower is an error.
pub const NEGATIVE_TOL: f64 = 1e-12;

/// Largest dimension accepted by [`passive_energy_oracle`].
pub const ORACLE_MAX_DIM: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ErgotropyBreakdown {
    /// `W`
    pub total: f64,
    /// `W_IC`
    pub incoherent: f64,
    /// `W_C = W − W_IC`
    pub coherent: f64,
    /// Energy of the passive state.
    pub passive_energy: f64,
}

fn clamp_non_negative(component: &'static str, value: f64) -> Result<f64> {
    if value < -NEGATIVE_TOL {
        Err(Error::InconsistentErgotropy { component, value })
    } else {
        Ok(value.max(0.0))
    }
}

/// `Σ r_n^↓ ε_n^↑`.
pub fn passive_state_energy(spec: &Spectrum, h: &BatteryHamiltonian) -> Result<f64> {
    h.check_dim(spec.dim())?;
    Ok(spec
        .eigenvalues()
        .iter()
        .zip(h.levels())
        .map(|(r, e)| r * e)
        .sum())
}

/// Brute-force minimum of `Σ r_π(n) ε_n` over every permutation `π`.
pub fn passive_energy_oracle(spec: &Spectrum, h: &BatteryHamiltonian) -> Result<f64> {
    let n = spec.dim();
    if n > ORACLE_MAX_DIM {
        return Err(Error::DimensionTooLarge {
            dim: n,
            max: ORACLE_MAX_DIM,
        });
    }
    h.check_dim(n)?;
    let r = spec.eigenvalues();
    let levels = h.levels();
    let cost = |perm: &[usize]| -> f64 { perm.iter().zip(levels).map(|(&i, e)| r[i] * e).sum() };

    // Heap's algorithm, iterative form
    let mut perm: Vec<usize> = (0..n).collect();
    let mut counters = alloc::vec![0usize; n];
    let mut best = cost(&perm);
    let mut i = 0;
    while i < n {
        if counters[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(counters[i], i);
            }
            best = best.min(cost(&perm));
            counters[i] += 1;
            i = 0;
        } else {
            counters[i] = 0;
            i += 1;
        }
    }
    Ok(best)
}

/// `W = E(ρ) − E(ρ̃)`.
pub fn ergotropy_total(rho: &NLevelState, h: &BatteryHamiltonian) -> Result<f64> {
    Ok(total_and_passive(rho, h)?.0)
}

fn total_and_passive(rho: &NLevelState, h: &BatteryHamiltonian) -> Result<(f64, f64)> {
    let energy = rho.energy(h)?;
    let spectrum = hermitian_eigensystem(rho)?;
    let passive = passive_state_energy(&spectrum, h)?;
    Ok((clamp_non_negative("total", energy - passive)?, passive))
}

/// `W_IC = Tr(H(ρ^d − ρ^d_p))`, where `ρ^d` keeps only the populations and
/// `ρ^d_p` is its passive rearrangement.
pub fn ergotropy_incoherent(rho: &NLevelState, h: &BatteryHamiltonian) -> Result<f64> {
    h.check_dim(rho.dim())?;
    let populations = rho.populations();
    let dephased_energy: f64 = populations.iter().zip(h.levels()).map(|(p, e)| p * e).sum();
    let sorted = Spectrum::from_eigenvalues(&populations);
    let passive = passive_state_energy(&sorted, h)?;
    clamp_non_negative("incoherent", dephased_energy - passive)
}

pub fn ergotropy_breakdown(
    rho: &NLevelState,
    h: &BatteryHamiltonian,
) -> Result<ErgotropyBreakdown> {
    let (total, passive_energy) = total_and_passive(rho, h)?;
    let incoherent = ergotropy_incoherent(rho, h)?;
    let coherent = clamp_non_negative("coherent", total - incoherent)?;
    Ok(ErgotropyBreakdown {
        total,
        incoherent,
        coherent,
        passive_energy,
    })
}

/// Closed forms for `H = ω0|e⟩⟨e|`:
/// `W = (ω0/2)(r + r3)`, `W_IC = ω0·max(r3, 0)`, `W_C = W − W_IC`.
/// `r3 = 0` falls in the `W_IC = 0` branch.
pub fn qubit_ergotropy_closed_form(b: &BlochVector, omega0: f64) -> Result<ErgotropyBreakdown> {
    let r = b.radius();
    if !r.is_finite() || r > 1.0 + POSITIVITY_TOL {
        return Err(Error::NonPhysicalState { radius: r });
    }
    let r3 = b.r3;
    let total = 0.5 * omega0 * (r + r3);
    let (incoherent, coherent) = if r3 <= 0.0 {
        (0.0, 0.5 * omega0 * (r + r3))
    } else {
        (omega0 * r3, 0.5 * omega0 * (r - r3))
    };
    Ok(ErgotropyBreakdown {
        total,
        incoherent,
        coherent,
        passive_energy: 0.5 * omega0 * (1.0 - r),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Complex, QubitState};
    use alloc::vec;

    fn h1() -> BatteryHamiltonian {
        BatteryHamiltonian::qubit(1.0).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn passive_energy_examples() {
        let h3 = BatteryHamiltonian::new(vec![0.0, 1.0, 2.0]).unwrap();
        let two = Spectrum::from_eigenvalues(&[0.7, 0.3]);
        assert!(close(
            passive_state_energy(&two, &h1()).unwrap(),
            0.3,
            1e-15
        ));
        let pure = Spectrum::from_eigenvalues(&[1.0, 0.0]);
        assert_eq!(passive_state_energy(&pure, &h1()).unwrap(), 0.0);
        let three = Spectrum::from_eigenvalues(&[0.5, 0.3, 0.2]);
        assert!(close(
            passive_state_energy(&three, &h3).unwrap(),
            0.7,
            1e-15
        ));
        assert_eq!(
            passive_state_energy(&three, &h1()),
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 3
            })
        );
    }

    #[test]
    fn oracle_examples() {
        let h3 = BatteryHamiltonian::new(vec![0.0, 1.0, 2.0]).unwrap();
        let two = Spectrum::from_eigenvalues(&[0.7, 0.3]);
        assert!(close(
            passive_energy_oracle(&two, &h1()).unwrap(),
            0.3,
            1e-15
        ));
        // (0.5, 0.3, 0.2) over levels (0, 1, 2): the six assignments give
        // 0.7, 0.8, 1.1, 1.3, 1.4, 1.0.
        let three = Spectrum::from_eigenvalues(&[0.5, 0.3, 0.2]);
        assert!(close(
            passive_energy_oracle(&three, &h3).unwrap(),
            0.7,
            1e-15
        ));
        let tied = Spectrum::from_eigenvalues(&[0.25, 0.25, 0.25, 0.25]);
        let h4 = BatteryHamiltonian::new(vec![0.0, 1.0, 2.0, 3.0]).unwrap();
        assert_eq!(
            passive_energy_oracle(&tied, &h4).unwrap(),
            passive_state_energy(&tied, &h4).unwrap()
        );
    }

    #[test]
    fn oracle_refuses_large_dimension() {
        let levels: Vec<f64> = (0..9).map(|i| i as f64).collect();
        let h9 = BatteryHamiltonian::new(levels).unwrap();
        let spec = Spectrum::from_eigenvalues(&[1.0 / 9.0; 9]);
        assert_eq!(
            passive_energy_oracle(&spec, &h9),
            Err(Error::DimensionTooLarge { dim: 9, max: 8 })
        );
    }

    #[test]
    fn total_ergotropy_examples() {
        assert!(close(
            ergotropy_total(&QubitState::excited().to_nlevel(), &h1()).unwrap(),
            1.0,
            1e-15
        ));
        assert!(close(
            ergotropy_total(&QubitState::max_coherent().to_nlevel(), &h1()).unwrap(),
            0.5,
            1e-15
        ));
        assert_eq!(
            ergotropy_total(&QubitState::maximally_mixed().to_nlevel(), &h1()).unwrap(),
            0.0
        );
    }

    #[test]
    fn incoherent_ergotropy_examples() {
        assert_eq!(
            ergotropy_incoherent(&QubitState::excited().to_nlevel(), &h1()).unwrap(),
            1.0
        );
        assert_eq!(
            ergotropy_incoherent(&QubitState::max_coherent().to_nlevel(), &h1()).unwrap(),
            0.0
        );
        let s = QubitState::new(0.8, Complex::new(0.2, 0.0)).unwrap();
        // explicit sort: diagonal (0.2, 0.8) → passive (0.8, 0.2), energy 0.2
        assert!(close(
            ergotropy_incoherent(&s.to_nlevel(), &h1()).unwrap(),
            0.8 - 0.2,
            1e-15
        ));
    }

    #[test]
    fn breakdown_examples() {
        let mc = ergotropy_breakdown(&QubitState::max_coherent().to_nlevel(), &h1()).unwrap();
        assert!(close(mc.total, 0.5, 1e-15));
        assert_eq!(mc.incoherent, 0.0);
        assert!(close(mc.coherent, 0.5, 1e-15));

        let ex = ergotropy_breakdown(&QubitState::excited().to_nlevel(), &h1()).unwrap();
        assert_eq!((ex.total, ex.incoherent, ex.coherent), (1.0, 1.0, 0.0));

        // Bloch (0.6, 0, 0.3): r = √0.45
        let b = BlochVector::new(0.6, 0.0, 0.3);
        let s = crate::qstate::state_from_bloch(&b).unwrap();
        let got = ergotropy_breakdown(&s.to_nlevel(), &h1()).unwrap();
        let r = libm::sqrt(0.45);
        assert!(close(got.total, 0.5 * (r + 0.3), 1e-14));
        assert!(close(got.total, 0.48541, 1e-5));
        assert!(close(got.incoherent, 0.3, 1e-15));
        assert!(close(got.coherent, 0.18541, 1e-5));
        assert_eq!(got.total, got.incoherent + got.coherent);
    }

    #[test]
    fn closed_form_examples() {
        let f =
            |r1, r2, r3| qubit_ergotropy_closed_form(&BlochVector::new(r1, r2, r3), 1.0).unwrap();
        let ex = f(0.0, 0.0, 1.0);
        assert_eq!((ex.total, ex.incoherent, ex.coherent), (1.0, 1.0, 0.0));
        let mc = f(1.0, 0.0, 0.0);
        assert_eq!((mc.total, mc.incoherent, mc.coherent), (0.5, 0.0, 0.5));
        let g = f(0.0, 0.0, -1.0);
        assert_eq!((g.total, g.incoherent, g.coherent), (0.0, 0.0, 0.0));
        assert!(qubit_ergotropy_closed_form(&BlochVector::new(0.0, 0.0, 1.5), 1.0).is_err());
    }

    #[test]
    fn strongly_negative_component_is_an_error() {
        assert_eq!(clamp_non_negative("total", -1e-13), Ok(0.0));
        assert!(matches!(
            clamp_non_negative("total", -1e-9),
            Err(Error::InconsistentErgotropy { .. })
        ));
    }

    #[test]
    fn three_level_breakdown() {
        let h3 = BatteryHamiltonian::new(vec![0.0, 1.0, 2.0]).unwrap();
        // population inversion with no coherence: W = W_IC
        let rho = NLevelState::diagonal(&[0.1, 0.3, 0.6]).unwrap();
        let b = ergotropy_breakdown(&rho, &h3).unwrap();
        // energy 1.5, passive 0.6·0 + 0.3·1 + 0.1·2 = 0.5
        assert!(close(b.total, 1.0, 1e-12));
        assert!(close(b.incoherent, 1.0, 1e-12));
        assert!(b.coherent.abs() < 1e-12);
    }
}
