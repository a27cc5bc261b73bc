//! Discrete phase-space operator basis and the Wigner-type mapping.
//!
//! The basis element at lattice site `(m, n)` is
//!
//! ```text
//! G(m,n) = (1/N) sum_{j,l=-h..h} U^j V^l exp(i pi j l / N) exp(-2 pi i (m j + n l) / N)
//! ```
//!
//! with `h = (N-1)/2`. Operators map to grids through `o(m,n) = Tr[G(m,n)^dagger O]`
//! and back through `O = (1/N) sum_{m,n} o(m,n) G(m,n)`.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use crate::error::{DensityCheck, Error, Result};
use crate::numerics::{hermitian_eig, ComplexMatrix};
use crate::schwinger::{root_of_unity, SchwingerPair};

/// Tolerance used when validating density operators.
pub const DENSITY_TOL: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct OperatorBasis {
    dim: usize,
    elements: Vec<ComplexMatrix>,
}

/// Values of an operator on the `N x N` lattice, indexed `(m, n)`.
///
/// `m` labels the energy sector and `n` the conjugate (shift eigenbasis) sector.
#[derive(Debug, Clone, PartialEq)]
pub struct WignerGrid {
    dim: usize,
    values: Vec<C64>,
}

impl WignerGrid {
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut values = Vec::with_capacity(dim * dim);
        for m in 0..dim {
            for n in 0..dim {
                values.push(f(m, n));
            }
        }
        WignerGrid { dim, values }
    }

    pub fn from_real_fn(dim: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        Self::from_fn(dim, |m, n| C64::new(f(m, n), 0.0))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, m: usize, n: usize) -> C64 {
        self.values[m * self.dim + n]
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn max_imag(&self) -> f64 {
        self.values.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    /// Real parts as rows `m = 0..N`.
    pub fn real_rows(&self) -> Vec<Vec<f64>> {
        (0..self.dim)
            .map(|m| (0..self.dim).map(|n| self.get(m, n).re).collect())
            .collect()
    }

    pub fn max_abs_diff(&self, other: &WignerGrid) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `(1/N) sum_{m,n} grid(m,n)`; equals the trace of the mapped operator.
    pub fn normalization(&self) -> C64 {
        self.values.iter().sum::<C64>() / self.dim as f64
    }

    /// `sum_n grid(m, n)`.
    pub fn energy_marginal(&self, m: usize) -> C64 {
        (0..self.dim).map(|n| self.get(m, n)).sum()
    }

    /// `sum_m grid(m, n)`.
    pub fn shift_marginal(&self, n: usize) -> C64 {
        (0..self.dim).map(|m| self.get(m, n)).sum()
    }
}

fn symmetric_range(dim: usize) -> std::ops::RangeInclusive<i64> {
    let h = (dim as i64 - 1) / 2;
    -h..=h
}

impl OperatorBasis {
    pub fn new(pair: &SchwingerPair) -> Self {
        let dim = pair.dim();
        let nn = dim as i64;
        let mut elements = Vec::with_capacity(dim * dim);
        for m in 0..nn {
            for n in 0..nn {
                let mut g = ComplexMatrix::zeros(dim);
                for j in symmetric_range(dim) {
                    for l in symmetric_range(dim) {
                        let weight = C64::from_polar(1.0, PI * (j * l) as f64 / dim as f64)
                            * root_of_unity(-(m * j + n * l), dim)
                            / dim as f64;
                        // U^j V^l has entry exp(2 pi i j r / N) at (r, r + l).
                        for r in 0..dim {
                            let c = (r as i64 + l).rem_euclid(nn) as usize;
                            g[(r, c)] += weight * root_of_unity(j * r as i64, dim);
                        }
                    }
                }
                elements.push(g);
            }
        }
        OperatorBasis { dim, elements }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn element(&self, m: usize, n: usize) -> &ComplexMatrix {
        &self.elements[m * self.dim + n]
    }

    fn check_dim(&self, found: usize) -> Result<()> {
        if found != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found,
            });
        }
        Ok(())
    }

    /// `o(m,n) = Tr[G(m,n)^dagger O]`.
    pub fn map_operator(&self, op: &ComplexMatrix) -> Result<WignerGrid> {
        self.check_dim(op.dim())?;
        Ok(WignerGrid::from_fn(self.dim, |m, n| self.element(m, n).hs_inner(op)))
    }

    /// `(1/N) sum_{m,n} o(m,n) G(m,n)`.
    pub fn unmap_grid(&self, grid: &WignerGrid) -> Result<ComplexMatrix> {
        self.check_dim(grid.dim())?;
        let mut out = ComplexMatrix::zeros(self.dim);
        let inv = 1.0 / self.dim as f64;
        for m in 0..self.dim {
            for n in 0..self.dim {
                let w = grid.get(m, n) * inv;
                out = &out + &self.element(m, n).scale(w);
            }
        }
        Ok(out)
    }

    /// Discrete Wigner function of a density operator.
    pub fn wigner_of_density(&self, rho: &ComplexMatrix) -> Result<WignerGrid> {
        self.check_dim(rho.dim())?;
        check_density(rho)?;
        self.map_operator(rho)
    }
}

/// Hermitian, unit trace and positive semidefinite, each within [`DENSITY_TOL`].
pub fn check_density(rho: &ComplexMatrix) -> Result<()> {
    if rho.hermiticity_defect() > DENSITY_TOL {
        return Err(Error::NotADensityMatrix(DensityCheck::Hermiticity));
    }
    if (rho.trace() - C64::new(1.0, 0.0)).norm() > DENSITY_TOL {
        return Err(Error::NotADensityMatrix(DensityCheck::UnitTrace));
    }
    let sym = (rho + &rho.adjoint()).scale(C64::new(0.5, 0.0));
    let eig = hermitian_eig(&sym)?;
    if eig.values.first().copied().unwrap_or(0.0) < -DENSITY_TOL {
        return Err(Error::NotADensityMatrix(DensityCheck::PositiveSemidefinite));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::ComplexVector;

    fn basis(n: usize) -> (SchwingerPair, OperatorBasis) {
        let pair = SchwingerPair::new(n).unwrap();
        let basis = OperatorBasis::new(&pair);
        (pair, basis)
    }

    /// Literal sum of matrix products, independent of the monomial shortcut.
    fn element_by_products(pair: &SchwingerPair, m: i64, n: i64) -> ComplexMatrix {
        let dim = pair.dim();
        let mut g = ComplexMatrix::zeros(dim);
        for j in symmetric_range(dim) {
            for l in symmetric_range(dim) {
                let w = C64::from_polar(1.0, PI * (j * l) as f64 / dim as f64)
                    * root_of_unity(-(m * j + n * l), dim)
                    / dim as f64;
                g = &g + &(&pair.u_pow(j) * &pair.v_pow(l)).scale(w);
            }
        }
        g
    }

    #[test]
    fn elements_match_matrix_products() {
        let (pair, b) = basis(5);
        for m in 0..5 {
            for n in 0..5 {
                let direct = element_by_products(&pair, m as i64, n as i64);
                assert!(b.element(m, n).max_abs_diff(&direct) < 1e-13);
            }
        }
    }

    #[test]
    fn unit_trace_and_hermitian_at_three() {
        let (_, b) = basis(3);
        for m in 0..3 {
            for n in 0..3 {
                let g = b.element(m, n);
                assert!((g.trace() - C64::new(1.0, 0.0)).norm() < 1e-12);
                assert!(g.max_abs_diff(&g.adjoint()) < 1e-12);
            }
        }
    }

    #[test]
    fn orthogonal_pair_at_five() {
        let (_, b) = basis(5);
        assert!(b.element(0, 0).hs_inner(b.element(1, 2)).norm() < 1e-10);
        assert!((b.element(1, 2).hs_inner(b.element(1, 2)) - C64::new(5.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn elements_sum_to_scaled_identity() {
        let (_, b) = basis(7);
        let mut total = ComplexMatrix::zeros(7);
        for m in 0..7 {
            for n in 0..7 {
                total = &total + b.element(m, n);
            }
        }
        let expected = ComplexMatrix::identity(7).scale(C64::new(7.0, 0.0));
        assert!(total.max_abs_diff(&expected) < 1e-10);
    }

    #[test]
    fn identity_maps_to_ones_and_back() {
        let (_, b) = basis(5);
        let grid = b.map_operator(&ComplexMatrix::identity(5)).unwrap();
        assert!(grid.max_abs_diff(&WignerGrid::from_real_fn(5, |_, _| 1.0)) < 1e-12);
        let back = b.unmap_grid(&WignerGrid::from_real_fn(5, |_, _| 1.0)).unwrap();
        assert!(back.max_abs_diff(&ComplexMatrix::identity(5)) < 1e-12);
    }

    #[test]
    fn clock_powers_map_to_energy_phases() {
        let (pair, b) = basis(5);
        for k in 0..5i64 {
            let grid = b.map_operator(&pair.u_pow(-k)).unwrap();
            let expected = WignerGrid::from_fn(5, |m, _| root_of_unity(-k * m as i64, 5));
            assert!(grid.max_abs_diff(&expected) < 1e-12);
            let back = b.unmap_grid(&expected).unwrap();
            assert!(back.max_abs_diff(&pair.u_pow(-k)) < 1e-12);
        }
    }

    #[test]
    fn propagator_maps_to_pointwise_phase() {
        let (_, b) = basis(5);
        let energies = [0.0, 7.0, 24.0, 51.0, 88.0];
        let dt = 0.37;
        let diag: Vec<C64> = energies.iter().map(|e| C64::from_polar(1.0, -e * dt)).collect();
        let grid = b.map_operator(&ComplexMatrix::from_diagonal(&diag)).unwrap();
        let expected = WignerGrid::from_fn(5, |m, _| diag[m]);
        assert!(grid.max_abs_diff(&expected) < 1e-12);
    }

    #[test]
    fn wigner_of_basis_states() {
        let (pair, b) = basis(5);
        for i in 0..5 {
            let v = pair.v_eigenvector(i).unwrap();
            let grid = b.wigner_of_density(&v.projector()).unwrap();
            let expected = WignerGrid::from_real_fn(5, |_, n| if n == i { 1.0 } else { 0.0 });
            assert!(grid.max_abs_diff(&expected) < 1e-12);

            let u = ComplexVector::basis(5, i);
            let grid = b.wigner_of_density(&u.projector()).unwrap();
            let expected = WignerGrid::from_real_fn(5, |m, _| if m == i { 1.0 } else { 0.0 });
            assert!(grid.max_abs_diff(&expected) < 1e-12);
        }
        let mixed = ComplexMatrix::identity(5).scale(C64::new(0.2, 0.0));
        let grid = b.wigner_of_density(&mixed).unwrap();
        assert!(grid.max_abs_diff(&WignerGrid::from_real_fn(5, |_, _| 0.2)) < 1e-12);
    }

    #[test]
    fn density_validation_names_the_failed_check() {
        let (_, b) = basis(3);
        let not_herm = ComplexMatrix::from_fn(3, |r, c| {
            if r == 0 && c == 1 {
                C64::new(0.5, 0.0)
            } else if r == c {
                C64::new(1.0 / 3.0, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        assert!(matches!(
            b.wigner_of_density(&not_herm),
            Err(Error::NotADensityMatrix(DensityCheck::Hermiticity))
        ));
        assert!(matches!(
            b.wigner_of_density(&ComplexMatrix::identity(3)),
            Err(Error::NotADensityMatrix(DensityCheck::UnitTrace))
        ));
        let negative = ComplexMatrix::from_real_diagonal(&[1.5, -0.5, 0.0]);
        assert!(matches!(
            b.wigner_of_density(&negative),
            Err(Error::NotADensityMatrix(DensityCheck::PositiveSemidefinite))
        ));
        assert!(matches!(
            b.map_operator(&ComplexMatrix::identity(5)),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}

#[cfg(test)]
mod properties {
    use super::*;
    use crate::numerics::random::{random_density, random_matrix};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn basis(n: usize) -> OperatorBasis {
        OperatorBasis::new(&SchwingerPair::new(n).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn map_is_linear(seed in any::<u64>(), n in prop::sample::select(vec![3usize, 5, 7]), re in -2.0f64..2.0, im in -2.0f64..2.0) {
            let b = basis(n);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = random_matrix(n, &mut rng);
            let y = random_matrix(n, &mut rng);
            let c = C64::new(re, im);
            let combined = b.map_operator(&(&x.scale(c) + &y)).unwrap();
            let gx = b.map_operator(&x).unwrap();
            let gy = b.map_operator(&y).unwrap();
            let separate = WignerGrid::from_fn(n, |m, k| c * gx.get(m, k) + gy.get(m, k));
            prop_assert!(combined.max_abs_diff(&separate) < 1e-12);
        }

        #[test]
        fn unmap_inverts_map(seed in any::<u64>(), n in prop::sample::select(vec![3usize, 5, 7])) {
            let b = basis(n);
            let op = random_matrix(n, &mut ChaCha8Rng::seed_from_u64(seed));
            let back = b.unmap_grid(&b.map_operator(&op).unwrap()).unwrap();
            prop_assert!(back.max_abs_diff(&op) < 1e-10);
        }

        #[test]
        fn densities_map_to_real_normalized_grids(seed in any::<u64>(), n in prop::sample::select(vec![3usize, 5, 7])) {
            let b = basis(n);
            let rho = random_density(n, &mut ChaCha8Rng::seed_from_u64(seed));
            let grid = b.wigner_of_density(&rho).unwrap();
            prop_assert!(grid.max_imag() < 1e-10);
            prop_assert!((grid.normalization() - C64::new(1.0, 0.0)).norm() < 1e-10);
        }
    }
}
