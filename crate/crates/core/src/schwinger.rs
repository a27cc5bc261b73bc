//! The clock/shift unitary pair on an odd-prime dimensional space.
//!
//! All matrices are written in the energy basis `{|u_n>}`, which is the
//! computational basis here. Labels run over `0..N` with arithmetic mod `N`.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::numerics::{is_odd_prime, scalar_ratio, ComplexMatrix, ComplexVector};

const COMMUTATION_TOL: f64 = 1e-12;

/// `exp(2 pi i p / n)` with the exponent reduced mod `n` first.
pub fn root_of_unity(p: i64, n: usize) -> C64 {
    let r = p.rem_euclid(n as i64) as f64;
    C64::from_polar(1.0, 2.0 * PI * r / n as f64)
}

/// `U^p` in the energy basis: `diag(exp(2 pi i p k / N))`.
pub fn clock_power(dim: usize, p: i64) -> ComplexMatrix {
    let diag: Vec<C64> = (0..dim).map(|k| root_of_unity(p * k as i64, dim)).collect();
    ComplexMatrix::from_diagonal(&diag)
}

/// `V^p`, the cyclic shift taking `|u_n>` to `|u_{n-p}>`.
pub fn shift_power(dim: usize, p: i64) -> ComplexMatrix {
    let s = p.rem_euclid(dim as i64) as usize;
    ComplexMatrix::from_fn(dim, |r, c| {
        if c == (r + s) % dim {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

#[derive(Debug, Clone)]
pub struct SchwingerPair {
    dim: usize,
    u: ComplexMatrix,
    v: ComplexMatrix,
    fourier: ComplexMatrix,
}

impl SchwingerPair {
    pub fn new(dim: usize) -> Result<Self> {
        if !is_odd_prime(dim) {
            return Err(Error::DimensionNotOddPrime(dim));
        }
        let norm = 1.0 / (dim as f64).sqrt();
        // fourier[k][n] = <v_k|u_n>
        let fourier = ComplexMatrix::from_fn(dim, |k, n| {
            root_of_unity(-((k * n) as i64), dim) * norm
        });
        Ok(SchwingerPair {
            dim,
            u: clock_power(dim, 1),
            v: shift_power(dim, 1),
            fourier,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn u(&self) -> &ComplexMatrix {
        &self.u
    }

    pub fn v(&self) -> &ComplexMatrix {
        &self.v
    }

    /// Entries `<v_k|u_n>` indexed `(k, n)`.
    pub fn fourier(&self) -> &ComplexMatrix {
        &self.fourier
    }

    /// `U^p` for any integer `p`.
    pub fn u_pow(&self, p: i64) -> ComplexMatrix {
        clock_power(self.dim, p)
    }

    /// `V^p` for any integer `p`.
    pub fn v_pow(&self, p: i64) -> ComplexMatrix {
        shift_power(self.dim, p)
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if index >= self.dim {
            return Err(Error::IndexOutOfRange {
                index,
                dim: self.dim,
            });
        }
        Ok(())
    }

    pub fn u_eigenvector(&self, k: usize) -> Result<ComplexVector> {
        self.check_index(k)?;
        Ok(ComplexVector::basis(self.dim, k))
    }

    /// `|v_k>` in the energy basis, components `exp(2 pi i k n / N) / sqrt(N)`.
    pub fn v_eigenvector(&self, k: usize) -> Result<ComplexVector> {
        self.check_index(k)?;
        Ok(ComplexVector::new(
            (0..self.dim).map(|n| self.fourier[(k, n)].conj()).collect(),
        ))
    }

    /// The scalar `c` with `U^j V^l = c V^l U^j`.
    pub fn commutation_phase(&self, j: i64, l: i64) -> Result<C64> {
        let uj = self.u_pow(j);
        let vl = self.v_pow(l);
        scalar_ratio(&(&uj * &vl), &(&vl * &uj), COMMUTATION_TOL)
    }
}
