//! Unitary evolution of density operators and the stroboscopic clock.
//!
//! The clock always evolves with the true propagator; the lattice-shift rule
//! is only used as a cross-check against it.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::numerics::{exp_hermitian, ComplexMatrix, ComplexVector};
use crate::phase_space::{check_density, OperatorBasis, WignerGrid};
use crate::schwinger::SchwingerPair;
use crate::spectrum::{Spectrum, SpectrumDecomposition};

#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix(ComplexMatrix);

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        check_density(&matrix)?;
        Ok(DensityMatrix(matrix))
    }

    pub fn pure(state: &ComplexVector) -> Result<Self> {
        Self::new(state.projector())
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        DensityMatrix(ComplexMatrix::identity(dim).scale(C64::new(1.0 / dim as f64, 0.0)))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn purity(&self) -> f64 {
        (&self.0 * &self.0).trace().re
    }
}

/// `rho(t) = G(t) rho G(t)^dagger` with `G(t) = exp(-i H t)`.
pub fn evolve_density(rho: &DensityMatrix, h: &ComplexMatrix, t: f64) -> Result<DensityMatrix> {
    if h.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: h.dim(),
        });
    }
    let g = exp_hermitian(h, t)?;
    DensityMatrix::new(&(&g * rho.matrix()) * &g.adjoint())
}

/// Rigid column shift: `out(m, n) = grid(m, n - sign * k)`.
pub fn stroboscopic_step(grid: &WignerGrid, k: usize, sign: i8) -> WignerGrid {
    let n = grid.dim() as i64;
    let offset = sign as i64 * k as i64;
    WignerGrid::from_fn(grid.dim(), |m, col| {
        grid.get(m, (col as i64 - offset).rem_euclid(n) as usize)
    })
}

/// Occupation of the shift-eigenbasis sites read off a Wigner grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Occupancy {
    pub index: usize,
    pub probability: f64,
    pub max_offsite: f64,
}

/// Argmax of the marginal `sum_m grid(m, n) / N` (ties to the smallest `n`) and
/// the largest `|grid(m, n)|` outside that column.
pub fn occupancy(grid: &WignerGrid) -> Occupancy {
    let dim = grid.dim();
    let mut index = 0;
    let mut probability = f64::NEG_INFINITY;
    for n in 0..dim {
        let p = grid.shift_marginal(n).re / dim as f64;
        if p > probability {
            probability = p;
            index = n;
        }
    }
    let mut max_offsite = 0.0f64;
    for m in 0..dim {
        for n in (0..dim).filter(|&n| n != index) {
            max_offsite = max_offsite.max(grid.get(m, n).norm());
        }
    }
    Occupancy {
        index,
        probability,
        max_offsite,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClockStep {
    pub j: usize,
    pub time: f64,
    pub occupied_index: usize,
    pub occupied_probability: f64,
    pub max_offsite: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClockTrace {
    pub initial_index: usize,
    pub k: usize,
    pub delta_tau: f64,
    /// Measured: `occupied_index(j) = (i + direction_sign * j * k) mod N`.
    pub direction_sign: i8,
    /// Records for `j = 0..=steps`.
    pub steps: Vec<ClockStep>,
}

fn require_match(decomp: &SpectrumDecomposition, spec: &Spectrum) -> Result<()> {
    if !decomp.reconstructs(spec) {
        return Err(Error::IncompatibleSpectrum);
    }
    Ok(())
}

/// Runs the clock from `|v_initial>` for `steps` periods of `dtau`.
pub fn clock_run(
    pair: &SchwingerPair,
    basis: &OperatorBasis,
    decomp: &SpectrumDecomposition,
    spec: &Spectrum,
    initial: usize,
    steps: usize,
) -> Result<ClockTrace> {
    require_match(decomp, spec)?;
    if steps == 0 {
        return Err(Error::InvalidArgument("clock needs at least one step".into()));
    }
    let dim = pair.dim();
    let h = spec.hamiltonian();
    let dtau = decomp.delta_tau();
    let k = decomp.k();
    let mut rho = DensityMatrix::pure(&pair.v_eigenvector(initial)?)?;
    let mut records = Vec::with_capacity(steps + 1);
    let mut direction_sign = 0i8;
    for j in 0..=steps {
        if j > 0 {
            rho = evolve_density(&rho, &h, dtau)?;
        }
        let occ = occupancy(&basis.wigner_of_density(rho.matrix())?);
        if j == 1 {
            direction_sign = if occ.index == (initial + k) % dim {
                1
            } else if occ.index == (initial + dim - k) % dim {
                -1
            } else {
                return Err(Error::ClockDirectionInconsistent { step: 1 });
            };
        }
        if j > 1 {
            let expected = (initial as i64 + direction_sign as i64 * (j * k) as i64)
                .rem_euclid(dim as i64) as usize;
            if occ.index != expected {
                return Err(Error::ClockDirectionInconsistent { step: j });
            }
        }
        records.push(ClockStep {
            j,
            time: j as f64 * dtau,
            occupied_index: occ.index,
            occupied_probability: occ.probability,
            max_offsite: occ.max_offsite,
        });
    }
    Ok(ClockTrace {
        initial_index: initial,
        k,
        delta_tau: dtau,
        direction_sign,
        steps: records,
    })
}

/// Direction in which one clock period moves `|v_0>`, measured by direct evolution.
pub fn measure_shift_direction(
    pair: &SchwingerPair,
    basis: &OperatorBasis,
    decomp: &SpectrumDecomposition,
    spec: &Spectrum,
) -> Result<i8> {
    Ok(clock_run(pair, basis, decomp, spec, 0, 1)?.direction_sign)
}

/// Largest grid difference between direct evolution and repeated lattice
/// shifts over steps `1..=n_steps`.
pub fn shift_vs_evolution_residual(
    pair: &SchwingerPair,
    basis: &OperatorBasis,
    decomp: &SpectrumDecomposition,
    spec: &Spectrum,
    rho: &DensityMatrix,
    n_steps: usize,
) -> Result<f64> {
    require_match(decomp, spec)?;
    let sign = measure_shift_direction(pair, basis, decomp, spec)?;
    let h = spec.hamiltonian();
    let mut state = rho.clone();
    let mut shifted = basis.wigner_of_density(rho.matrix())?;
    let mut worst = 0.0f64;
    for _ in 0..n_steps {
        state = evolve_density(&state, &h, decomp.delta_tau())?;
        shifted = stroboscopic_step(&shifted, decomp.k(), sign);
        let direct = basis.wigner_of_density(state.matrix())?;
        worst = worst.max(direct.max_abs_diff(&shifted));
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::{decompose_spectrum, Verdict};
    use std::f64::consts::PI;

    fn setup(energies: &[i64]) -> (SchwingerPair, OperatorBasis, SpectrumDecomposition, Spectrum) {
        let spec = Spectrum::from_integers(energies).unwrap();
        let decomp = match decompose_spectrum(&spec).unwrap() {
            Verdict::Compatible(d) => d,
            Verdict::Incompatible(c) => panic!("{c:?}"),
        };
        let pair = SchwingerPair::new(energies.len()).unwrap();
        let basis = OperatorBasis::new(&pair);
        (pair, basis, decomp, spec)
    }

    #[test]
    fn zero_time_is_identity() {
        let (pair, _, _, spec) = setup(&[0, 1, 2, 3, 4]);
        let rho = DensityMatrix::pure(&pair.v_eigenvector(3).unwrap()).unwrap();
        let out = evolve_density(&rho, &spec.hamiltonian(), 0.0).unwrap();
        assert!(out.matrix().max_abs_diff(rho.matrix()) < 1e-15);
    }

    #[test]
    fn one_period_moves_v0_to_v4() {
        let (pair, _, _, spec) = setup(&[0, 1, 2, 3, 4]);
        let rho = DensityMatrix::pure(&pair.v_eigenvector(0).unwrap()).unwrap();
        let out = evolve_density(&rho, &spec.hamiltonian(), 2.0 * PI / 5.0).unwrap();
        let target = pair.v_eigenvector(4).unwrap().projector();
        assert!(out.matrix().max_abs_diff(&target) < 1e-10);
        assert!((out.purity() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn energy_eigenstates_are_stationary() {
        let (_, _, _, spec) = setup(&[0, 1, 2, 3, 4]);
        let rho = DensityMatrix::pure(&ComplexVector::basis(5, 2)).unwrap();
        for t in [0.3, 1.7, 11.0] {
            let out = evolve_density(&rho, &spec.hamiltonian(), t).unwrap();
            assert!(out.matrix().max_abs_diff(rho.matrix()) < 1e-12);
        }
    }

    #[test]
    fn shift_rule_on_grids() {
        let constant = WignerGrid::from_real_fn(5, |_, _| 0.2);
        assert_eq!(stroboscopic_step(&constant, 2, -1), constant);
        let delta = WignerGrid::from_real_fn(5, |_, n| if n == 1 { 1.0 } else { 0.0 });
        let moved = stroboscopic_step(&delta, 2, -1);
        assert_eq!(occupancy(&moved).index, 4);
        let mut g = delta.clone();
        for _ in 0..5 {
            g = stroboscopic_step(&g, 3, 1);
        }
        assert_eq!(g, delta);
    }

    #[test]
    fn harmonic_clock_sequence() {
        let (pair, basis, decomp, spec) = setup(&[0, 1, 2, 3, 4]);
        let trace = clock_run(&pair, &basis, &decomp, &spec, 0, 5).unwrap();
        let seq: Vec<usize> = trace.steps.iter().map(|s| s.occupied_index).collect();
        assert_eq!(seq, vec![0, 4, 3, 2, 1, 0]);
        assert_eq!(trace.direction_sign, -1);
        for s in &trace.steps {
            assert!(s.occupied_probability >= 1.0 - 1e-9);
            assert!(s.max_offsite <= 1e-9);
        }
    }

    #[test]
    fn skewed_clock_sequence() {
        let (pair, basis, decomp, spec) = setup(&[0, 7, 24, 51, 88]);
        let trace = clock_run(&pair, &basis, &decomp, &spec, 0, 5).unwrap();
        let seq: Vec<usize> = trace.steps.iter().map(|s| s.occupied_index).collect();
        assert_eq!(seq, vec![0, 3, 1, 4, 2, 0]);
    }

    #[test]
    fn clock_rejects_mismatched_spectrum() {
        let (pair, basis, decomp, _) = setup(&[0, 1, 2, 3, 4]);
        let other = Spectrum::from_integers(&[0, 1, 4, 9, 16]).unwrap();
        assert!(matches!(
            clock_run(&pair, &basis, &decomp, &other, 0, 3),
            Err(Error::IncompatibleSpectrum)
        ));
    }

    #[test]
    fn shift_rule_matches_evolution() {
        let (pair, basis, decomp, spec) = setup(&[0, 1, 2, 3, 4]);
        let rho = DensityMatrix::pure(&pair.v_eigenvector(2).unwrap()).unwrap();
        let r = shift_vs_evolution_residual(&pair, &basis, &decomp, &spec, &rho, 3).unwrap();
        assert!(r < 1e-9);
        let mixed = DensityMatrix::maximally_mixed(5);
        let r = shift_vs_evolution_residual(&pair, &basis, &decomp, &spec, &mixed, 5).unwrap();
        assert!(r < 1e-12);
    }

    #[test]
    fn half_period_is_not_a_clock_tick() {
        let (pair, basis, decomp, spec) = setup(&[0, 1, 2, 3, 4]);
        let rho = DensityMatrix::pure(&pair.v_eigenvector(0).unwrap()).unwrap();
        let out = evolve_density(&rho, &spec.hamiltonian(), decomp.delta_tau() / 2.0).unwrap();
        let occ = occupancy(&basis.wigner_of_density(out.matrix()).unwrap());
        assert!(occ.max_offsite > 0.01);
    }

    #[test]
    fn quadratic_spectrum_never_ticks() {
        let pair = SchwingerPair::new(5).unwrap();
        let basis = OperatorBasis::new(&pair);
        let h = Spectrum::from_integers(&[0, 1, 4, 9, 16]).unwrap().hamiltonian();
        let rho = DensityMatrix::pure(&pair.v_eigenvector(0).unwrap()).unwrap();
        for j in 1..16 {
            let out = evolve_density(&rho, &h, 2.0 * PI * j as f64 / 16.0).unwrap();
            let occ = occupancy(&basis.wigner_of_density(out.matrix()).unwrap());
            assert!(occ.max_offsite > 0.01, "dt = 2 pi {j}/16");
        }
    }
}

#[cfg(test)]
mod properties {
    use super::*;
    use crate::numerics::random::random_density;
    use crate::spectrum::{decompose_spectrum, random_compatible_spectrum};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn n_strobe_steps_are_the_identity(
            seed in any::<u64>(),
            n in prop::sample::select(vec![3usize, 5, 7, 11]),
            k in 0usize..20,
            sign in prop::sample::select(vec![-1i8, 1]),
        ) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let grid = WignerGrid::from_fn(n, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            let mut g = grid.clone();
            for _ in 0..n {
                g = stroboscopic_step(&g, k, sign);
            }
            prop_assert_eq!(g, grid);
        }

        #[test]
        fn shift_rule_tracks_evolution(seed in any::<u64>(), n in prop::sample::select(vec![3usize, 5, 7])) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let pair = SchwingerPair::new(n).unwrap();
            let basis = OperatorBasis::new(&pair);
            let spec = random_compatible_spectrum(n, &mut rng).unwrap();
            let decomp = decompose_spectrum(&spec).unwrap().decomposition().unwrap().clone();
            let rho = DensityMatrix::new(random_density(n, &mut rng)).unwrap();
            let residual = shift_vs_evolution_residual(&pair, &basis, &decomp, &spec, &rho, n).unwrap();
            prop_assert!(residual < 1e-9);
        }
    }
}
