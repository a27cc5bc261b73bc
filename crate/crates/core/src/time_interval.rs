//! The time-interval operator of a compatible Hamiltonian.
//!
//! `T = dtau * sum_j j |v_j><v_j|` is diagonal in the shift eigenbasis with
//! eigenvalues `dtau * l`. Its exponentials generate cyclic shifts of the
//! energy labels, and together with the propagator at clock multiples they
//! satisfy a Weyl-type commutation relation.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::numerics::{exp_hermitian, scalar_ratio, ComplexMatrix};
use crate::phase_space::{OperatorBasis, WignerGrid};
use crate::schwinger::{shift_power, SchwingerPair};
use crate::spectrum::{Spectrum, SpectrumDecomposition};

const PAIR_TOL: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct TimeIntervalOperator {
    matrix: ComplexMatrix,
    eigenvalues: Vec<f64>,
    decomp: SpectrumDecomposition,
}

impl TimeIntervalOperator {
    pub fn new(pair: &SchwingerPair, decomp: &SpectrumDecomposition) -> Result<Self> {
        let dim = pair.dim();
        if decomp.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: decomp.dim(),
            });
        }
        let dtau = decomp.delta_tau();
        let mut matrix = ComplexMatrix::zeros(dim);
        for j in 1..dim {
            let proj = pair.v_eigenvector(j)?.projector();
            matrix = &matrix + &proj.scale(C64::new(dtau * j as f64, 0.0));
        }
        Ok(TimeIntervalOperator {
            matrix,
            eigenvalues: (0..dim).map(|l| dtau * l as f64).collect(),
            decomp: decomp.clone(),
        })
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn delta_tau(&self) -> f64 {
        self.decomp.delta_tau()
    }

    /// Energy-basis representation.
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// `t_l = dtau * l`, paired with `|v_l>`.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn decomposition(&self) -> &SpectrumDecomposition {
        &self.decomp
    }

    /// `exp(-i T x)`.
    pub fn exp(&self, x: f64) -> Result<ComplexMatrix> {
        exp_hermitian(&self.matrix, x)
    }

    /// Phase-space grid of `T`, obtained through the general mapping.
    pub fn phase_space(&self, basis: &OperatorBasis) -> Result<WignerGrid> {
        basis.map_operator(&self.matrix)
    }

    /// `max_m |exp(-i T (E_{m+s} - E_m)) - V^{-k s}|` over non-wrapping `m`.
    ///
    /// Energy indices are a plain list; `m + s` never wraps past `N - 1`.
    pub fn verify_energy_shift(&self, spec: &Spectrum, s: usize) -> Result<f64> {
        let n = self.dim();
        if spec.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: spec.dim(),
            });
        }
        if s >= n {
            return Err(Error::IndexOutOfRange { index: s, dim: n });
        }
        let target = shift_power(n, -((self.decomp.k() * s) as i64));
        let mut worst = 0.0f64;
        for m in 0..n - s {
            let gap = (&spec.energies()[m + s] - &spec.energies()[m]).to_f64();
            worst = worst.max(self.exp(gap)?.max_abs_diff(&target));
        }
        Ok(worst)
    }

    /// The scalar `c` with `G(n dtau) W = c W G(n dtau)`, where
    /// `G(t) = exp(-i H t)` and `W = exp(-i T (E_j - E_0))`.
    pub fn verify_weyl_pair(&self, n: u64, j: usize) -> Result<C64> {
        self.verify_weyl_pair_from(n, 0, j)
    }

    /// As [`verify_weyl_pair`](Self::verify_weyl_pair) with the energy gap
    /// `E_{base + j} - E_base`.
    pub fn verify_weyl_pair_from(&self, n: u64, base: usize, j: usize) -> Result<C64> {
        let dim = self.dim();
        if base + j >= dim {
            return Err(Error::IndexOutOfRange {
                index: base + j,
                dim,
            });
        }
        let energies = self.decomp.spectrum();
        let h = energies.hamiltonian();
        let evolution = exp_hermitian(&h, n as f64 * self.delta_tau())?;
        let gap = (&energies.energies()[base + j] - &energies.energies()[base]).to_f64();
        let w = self.exp(gap)?;
        scalar_ratio(&(&evolution * &w), &(&w * &evolution), PAIR_TOL)
    }

    /// `exp(sign * 2 pi i n j k^2 / N)`, the closed form of the Weyl-pair phase.
    pub fn predicted_weyl_phase(&self, n: u64, j: usize, sign: i8) -> C64 {
        let dim = self.dim() as u128;
        let k = self.decomp.k() as u128;
        let e = (n as u128 % dim) * (j as u128 % dim) % dim * (k * k % dim) % dim;
        C64::from_polar(1.0, sign as f64 * 2.0 * PI * e as f64 / dim as f64)
    }

    /// Sign `s` with measured phase `exp(s * 2 pi i k^2 / N)` at `n = j = 1`.
    pub fn measure_weyl_sign(&self) -> Result<i8> {
        let c = self.verify_weyl_pair(1, 1)?;
        let plus = (c - self.predicted_weyl_phase(1, 1, 1)).norm();
        let minus = (c - self.predicted_weyl_phase(1, 1, -1)).norm();
        if plus.min(minus) > PAIR_TOL {
            return Err(Error::NotScalarMultiple {
                residual: plus.min(minus),
            });
        }
        Ok(if plus <= minus { 1 } else { -1 })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Rational;
    use crate::spectrum::{decompose_spectrum, Verdict};

    fn decompose(energies: &[i64]) -> SpectrumDecomposition {
        match decompose_spectrum(&Spectrum::from_integers(energies).unwrap()).unwrap() {
            Verdict::Compatible(d) => d,
            Verdict::Incompatible(c) => panic!("{c:?}"),
        }
    }

    fn operator(energies: &[i64]) -> (SchwingerPair, TimeIntervalOperator) {
        let pair = SchwingerPair::new(energies.len()).unwrap();
        let t = TimeIntervalOperator::new(&pair, &decompose(energies)).unwrap();
        (pair, t)
    }

    #[test]
    fn eigenvalues_are_clock_multiples() {
        let (pair, t) = operator(&[0, 1, 2, 3, 4]);
        let expected: Vec<f64> = (0..5).map(|l| 2.0 * PI * l as f64 / 5.0).collect();
        for (a, b) in t.eigenvalues().iter().zip(&expected) {
            assert!((a - b).abs() < 1e-15);
        }
        for l in 0..5 {
            let v = pair.v_eigenvector(l).unwrap();
            let tv = t.matrix().apply(&v);
            assert!(tv.max_abs_diff(&v.scale(C64::new(expected[l], 0.0))) < 1e-10);
        }
    }

    #[test]
    fn trace_at_three() {
        let (_, t) = operator(&[0, 1, 2]);
        assert!((t.matrix().trace() - C64::new(2.0 * PI, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn hermitian_at_seven() {
        let (_, t) = operator(&[0, 1, 2, 3, 4, 5, 6]);
        assert!(t.matrix().hermiticity_defect() < 1e-12);
    }

    #[test]
    fn phase_space_grid_is_linear_in_n() {
        let pair = SchwingerPair::new(3).unwrap();
        let basis = OperatorBasis::new(&pair);
        let t = TimeIntervalOperator::new(&pair, &decompose(&[0, 1, 2])).unwrap();
        let grid = t.phase_space(&basis).unwrap();
        let expected = WignerGrid::from_real_fn(3, |_, n| 2.0 * PI * n as f64 / 3.0);
        assert!(grid.max_abs_diff(&expected) < 1e-10);
        assert!(grid.max_imag() < 1e-10);
    }

    #[test]
    fn energy_shift_examples() {
        let (_, t) = operator(&[0, 7, 24, 51, 88]);
        let spec = Spectrum::from_integers(&[0, 7, 24, 51, 88]).unwrap();
        assert!(t.verify_energy_shift(&spec, 0).unwrap() < 1e-12);
        let direct = t.exp(7.0).unwrap();
        assert!(direct.max_abs_diff(&shift_power(5, -2)) < 1e-10);
        for s in 0..5 {
            assert!(t.verify_energy_shift(&spec, s).unwrap() < 1e-10);
        }

        let (_, nearest) = operator(&[0, 1, 2, 3, 4]);
        let squares = Spectrum::from_integers(&[0, 1, 4, 9, 16]).unwrap();
        assert!(nearest.verify_energy_shift(&squares, 1).unwrap() > 0.1);
    }

    #[test]
    fn weyl_pair_phase() {
        let (_, t) = operator(&[0, 7, 24, 51, 88]);
        assert!((t.verify_weyl_pair(0, 3).unwrap() - C64::new(1.0, 0.0)).norm() < 1e-10);
        // Direct oracle: G(dtau) = U^{-2}, W = V^{-2}; U^a V^b = w^{-ab} V^b U^a.
        let c = t.verify_weyl_pair(1, 1).unwrap();
        let oracle = C64::from_polar(1.0, -2.0 * PI * 4.0 / 5.0);
        assert!((c - oracle).norm() < 1e-10);
        assert_eq!(t.measure_weyl_sign().unwrap(), -1);
        for j in 0..5 {
            let a = t.verify_weyl_pair(1, j).unwrap();
            let b = t.verify_weyl_pair(2, j).unwrap();
            let ab = t.verify_weyl_pair(3, j).unwrap();
            assert!((a * b - ab).norm() < 1e-10);
        }
    }

    #[test]
    fn weyl_phase_independent_of_base() {
        let (_, t) = operator(&[0, 7, 24, 51, 88]);
        for j in 1..5 {
            let reference = t.verify_weyl_pair(1, j).unwrap();
            for base in 0..5 - j {
                let c = t.verify_weyl_pair_from(1, base, j).unwrap();
                assert!((c - reference).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn dimension_mismatch() {
        let pair = SchwingerPair::new(3).unwrap();
        let d = decompose(&[0, 1, 2, 3, 4]);
        assert!(matches!(
            TimeIntervalOperator::new(&pair, &d),
            Err(Error::DimensionMismatch { .. })
        ));
        let (_, t) = operator(&[0, 1, 2]);
        let spec = Spectrum::new(vec![Rational::zero(); 5]).unwrap();
        assert!(t.verify_energy_shift(&spec, 1).is_err());
    }
}
