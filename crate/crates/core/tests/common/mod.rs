#![allow(dead_code)]

use ergokit_core::qstate::state_from_bloch;
use ergokit_core::{BlochVector, Complex, NLevelState, QubitState};
use rand::Rng;

/// Uniform over the Bloch ball, with every tenth draw pushed to the surface.
pub fn random_bloch<R: Rng>(rng: &mut R, index: usize) -> BlochVector {
    let (x, y, z) = loop {
        let v: (f64, f64, f64) = (
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        let n2 = v.0 * v.0 + v.1 * v.1 + v.2 * v.2;
        if n2 > 1e-6 && n2 <= 1.0 {
            break v;
        }
    };
    if index.is_multiple_of(10) {
        let n = (x * x + y * y + z * z).sqrt();
        BlochVector::new(x / n, y / n, z / n)
    } else {
        BlochVector::new(x, y, z)
    }
}

pub fn random_qubit<R: Rng>(rng: &mut R, index: usize) -> QubitState {
    state_from_bloch(&random_bloch(rng, index)).expect("inside the ball")
}

/// `G G† / Tr(G G†)` for a random complex `G`.
pub fn random_density_matrix<R: Rng>(rng: &mut R, dim: usize) -> NLevelState {
    let g: Vec<Complex> = (0..dim * dim)
        .map(|_| Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let mut m = vec![Complex::new(0.0, 0.0); dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            let mut acc = Complex::new(0.0, 0.0);
            for k in 0..dim {
                acc += g[i * dim + k] * g[j * dim + k].conj();
            }
            m[i * dim + j] = acc;
        }
    }
    let trace: f64 = (0..dim).map(|i| m[i * dim + i].re).sum();
    for z in &mut m {
        *z /= trace;
    }
    for i in 0..dim {
        m[i * dim + i].im = 0.0;
    }
    NLevelState::new(dim, m).unwrap()
}
