//! Seeded random operators and states for property checks.

use num_complex::Complex64 as C64;
use rand::Rng;

use super::matrix::{ComplexMatrix, ComplexVector};

fn gaussian_pair<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    // Box-Muller; the exact distribution does not matter, only coverage.
    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
    let u2: f64 = rng.gen();
    let r = (-2.0 * u1.ln()).sqrt();
    C64::from_polar(r, 2.0 * std::f64::consts::PI * u2)
}

/// Matrix with independent complex Gaussian entries.
pub fn random_matrix<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(dim, |_, _| gaussian_pair(rng))
}

/// `(A + A^dagger) / 2` of a random matrix.
pub fn random_hermitian<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    let a = random_matrix(dim, rng);
    (&a + &a.adjoint()).scale(C64::new(0.5, 0.0))
}

pub fn random_state<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexVector {
    let v = ComplexVector::new((0..dim).map(|_| gaussian_pair(rng)).collect());
    let n = v.norm();
    v.scale(C64::new(1.0 / n, 0.0))
}

/// Full-rank mixed state `A A^dagger / Tr(A A^dagger)`.
pub fn random_density<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    let a = random_matrix(dim, rng);
    let rho = &a * &a.adjoint();
    let tr = rho.trace().re;
    let mut out = rho.scale(C64::new(1.0 / tr, 0.0));
    // Exact Hermitian symmetry after rounding.
    for r in 0..dim {
        out[(r, r)] = C64::new(out[(r, r)].re, 0.0);
        for c in r + 1..dim {
            out[(c, r)] = out[(r, c)].conj();
        }
    }
    out
}
