//! Hermitian eigensolver for small dense matrices.
//!
//! Dimension 2 uses the closed form. Larger matrices use cyclic complex Jacobi:
//! each rotation first removes the phase of `a_pq` and then applies the real
//! symmetric Jacobi rotation that zeroes it.

use alloc::vec;
use alloc::vec::Vec;

use crate::qstate::NLevelState;
use crate::{Complex, Error, Result};

pub const MAX_SWEEPS: usize = 100;
pub const OFF_DIAGONAL_TOL: f64 = 1e-12;

/// Eigenvalues in descending order with matching orthonormal eigenvectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    // row-major, column j pairs with eigenvalues[j]
    eigenvectors: Vec<Complex>,
}

impl Spectrum {
    /// A spectrum with no basis information beyond the computational one.
    /// Values are sorted descending; the eigenvectors are the matching unit
    /// vectors.
    pub fn from_eigenvalues(values: &[f64]) -> Self {
        let n = values.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| values[b].total_cmp(&values[a]));
        let mut eigenvectors = vec![Complex::new(0.0, 0.0); n * n];
        for (col, &src) in order.iter().enumerate() {
            eigenvectors[src * n + col] = Complex::new(1.0, 0.0);
        }
        Self {
            eigenvalues: order.iter().map(|&i| values[i]).collect(),
            eigenvectors,
        }
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Component `row` of eigenvector `col`.
    pub fn eigenvector_component(&self, row: usize, col: usize) -> Complex {
        self.eigenvectors[row * self.dim() + col]
    }

    pub fn eigenvector(&self, col: usize) -> Vec<Complex> {
        (0..self.dim())
            .map(|row| self.eigenvector_component(row, col))
            .collect()
    }

    fn sorted(mut values: Vec<f64>, vectors: Vec<Complex>) -> Self {
        let n = values.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| values[b].total_cmp(&values[a]));
        let mut eigenvectors = vec![Complex::new(0.0, 0.0); n * n];
        for (col, &src) in order.iter().enumerate() {
            for row in 0..n {
                eigenvectors[row * n + col] = vectors[row * n + src];
            }
        }
        values = order.iter().map(|&i| values[i]).collect();
        Self {
            eigenvalues: values,
            eigenvectors,
        }
    }
}

pub fn hermitian_eigensystem(m: &NLevelState) -> Result<Spectrum> {
    if m.dim() == 2 {
        Ok(eigensystem_2x2(m.get(0, 0).re, m.get(0, 1), m.get(1, 1).re))
    } else {
        jacobi(m.dim(), m.entries().to_vec())
    }
}

fn eigensystem_2x2(a: f64, b: Complex, d: f64) -> Spectrum {
    let mean = 0.5 * (a + d);
    let half_diff = 0.5 * (a - d);
    let b_abs = b.norm();
    let half_gap = libm::hypot(half_diff, b_abs);
    let hi = mean + half_gap;
    let lo = mean - half_gap;

    let one = Complex::new(1.0, 0.0);
    let zero = Complex::new(0.0, 0.0);
    if b_abs == 0.0 {
        let (values, vectors) = if a >= d {
            ([a, d], [one, zero, zero, one])
        } else {
            ([d, a], [zero, one, one, zero])
        };
        return Spectrum {
            eigenvalues: values.to_vec(),
            eigenvectors: vectors.to_vec(),
        };
    }
    let vectors = {
        // (H − λ)v = 0 with v = (b, λ − a), or equivalently (λ − d, b*).
        // Choose per eigenvalue whichever form has the larger norm.
        let vec_for = |lambda: f64| -> (Complex, Complex) {
            let (x, y) = if (lambda - a).abs() >= (lambda - d).abs() {
                (b, Complex::new(lambda - a, 0.0))
            } else {
                (Complex::new(lambda - d, 0.0), b.conj())
            };
            let norm = libm::hypot(x.norm(), y.norm());
            (x / norm, y / norm)
        };
        let (x0, y0) = vec_for(hi);
        let (x1, y1) = vec_for(lo);
        [x0, x1, y0, y1]
    };
    Spectrum {
        eigenvalues: vec![hi, lo],
        eigenvectors: vectors.to_vec(),
    }
}

fn off_diagonal_norm(n: usize, a: &[Complex]) -> f64 {
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[i * n + j].norm_sqr();
            }
        }
    }
    libm::sqrt(sum)
}

fn jacobi(n: usize, mut a: Vec<Complex>) -> Result<Spectrum> {
    let mut v = vec![Complex::new(0.0, 0.0); n * n];
    for i in 0..n {
        v[i * n + i] = Complex::new(1.0, 0.0);
    }

    for sweep in 0..=MAX_SWEEPS {
        let off = off_diagonal_norm(n, &a);
        if off < OFF_DIAGONAL_TOL {
            let values = (0..n).map(|i| a[i * n + i].re).collect();
            return Ok(Spectrum::sorted(values, v));
        }
        if sweep == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps: MAX_SWEEPS,
                residual: off,
            });
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(n, &mut a, &mut v, p, q);
            }
        }
    }
    unreachable!()
}

/// Zeroes `a[p][q]` with `A ← J†AJ`, `V ← VJ`.
fn rotate(n: usize, a: &mut [Complex], v: &mut [Complex], p: usize, q: usize) {
    let g = a[p * n + q];
    let g_abs = g.norm();
    if g_abs == 0.0 {
        return;
    }
    let phase = g / g_abs;
    let app = a[p * n + p].re;
    let aqq = a[q * n + q].re;

    let zeta = (aqq - app) / (2.0 * g_abs);
    let t = if zeta >= 0.0 {
        1.0 / (zeta + libm::sqrt(1.0 + zeta * zeta))
    } else {
        -1.0 / (-zeta + libm::sqrt(1.0 + zeta * zeta))
    };
    let c = 1.0 / libm::sqrt(1.0 + t * t);
    let s = t * c;

    // J restricted to (p, q): [[c, s], [−s·e^{−iφ}, c·e^{−iφ}]]
    let jpp = Complex::new(c, 0.0);
    let jpq = Complex::new(s, 0.0);
    let jqp = -phase.conj() * s;
    let jqq = phase.conj() * c;

    for k in 0..n {
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        a[k * n + p] = akp * jpp + akq * jqp;
        a[k * n + q] = akp * jpq + akq * jqq;

        let vkp = v[k * n + p];
        let vkq = v[k * n + q];
        v[k * n + p] = vkp * jpp + vkq * jqp;
        v[k * n + q] = vkp * jpq + vkq * jqq;
    }
    for k in 0..n {
        let apk = a[p * n + k];
        let aqk = a[q * n + k];
        a[p * n + k] = jpp.conj() * apk + jqp.conj() * aqk;
        a[q * n + k] = jpq.conj() * apk + jqq.conj() * aqk;
    }

    a[p * n + q] = Complex::new(0.0, 0.0);
    a[q * n + p] = Complex::new(0.0, 0.0);
    a[p * n + p] = Complex::new(app - t * g_abs, 0.0);
    a[q * n + q] = Complex::new(aqq + t * g_abs, 0.0);
}
