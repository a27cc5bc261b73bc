//! Self-check suite: every algebraic identity of the construction evaluated
//! numerically at one dimension, plus measurement of the sign conventions.

use num_complex::Complex64 as C64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dynamics::{
    clock_run, evolve_density, measure_shift_direction, occupancy, shift_vs_evolution_residual,
    DensityMatrix,
};
use crate::error::{Error, Result};
use crate::numerics::random::{random_density, random_hermitian, random_matrix};
use crate::numerics::{exp_hermitian, hermitian_eig, is_odd_prime, ComplexMatrix, ComplexVector};
use crate::phase_space::{OperatorBasis, WignerGrid};
use crate::schwinger::{root_of_unity, SchwingerPair};
use crate::spectrum::{
    decompose_spectrum, random_compatible_spectrum, Spectrum, SpectrumDecomposition, Verdict,
};
use crate::time_interval::TimeIntervalOperator;

/// Largest dimension the suite accepts.
pub const MAX_SUITE_DIM: usize = 31;

/// Signs fixed by direct computation rather than assumed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConventionNotes {
    /// `s` in `U^j V^l = exp(s 2 pi i j l / N) V^l U^j`.
    pub commutation_sign: i8,
    /// `s` in `occupied(j) = i + s j k (mod N)` for the clock.
    pub shift_direction_sign: i8,
    /// `s` in `G(n dtau) W = exp(s 2 pi i n j k^2 / N) W G(n dtau)`.
    pub weyl_pair_sign: i8,
}

pub fn measure_commutation_sign(pair: &SchwingerPair) -> Result<i8> {
    let c = pair.commutation_phase(1, 1)?;
    let n = pair.dim();
    let plus = (c - root_of_unity(1, n)).norm();
    let minus = (c - root_of_unity(-1, n)).norm();
    Ok(if plus < minus { 1 } else { -1 })
}

pub fn measure_conventions(
    pair: &SchwingerPair,
    basis: &OperatorBasis,
    decomp: &SpectrumDecomposition,
    spec: &Spectrum,
) -> Result<ConventionNotes> {
    let t = TimeIntervalOperator::new(pair, decomp)?;
    Ok(ConventionNotes {
        commutation_sign: measure_commutation_sign(pair)?,
        shift_direction_sign: measure_shift_direction(pair, basis, decomp, spec)?,
        weyl_pair_sign: t.measure_weyl_sign()?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    /// Passes when `value <= threshold`.
    AtMost,
    /// Passes when `value > threshold`.
    Above,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub value: f64,
    pub threshold: f64,
    pub bound: Bound,
    pub passed: bool,
}

impl CheckResult {
    fn new(name: &str, value: f64, threshold: f64, bound: Bound) -> Self {
        let passed = match bound {
            Bound::AtMost => value <= threshold,
            Bound::Above => value > threshold,
        };
        CheckResult {
            name: name.to_string(),
            value,
            threshold,
            bound,
            passed,
        }
    }

    fn at_most(name: &str, value: f64, threshold: f64) -> Self {
        Self::new(name, value, threshold, Bound::AtMost)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub n: usize,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
    pub conventions: ConventionNotes,
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn compatible(spec: &Spectrum) -> Result<SpectrumDecomposition> {
    match decompose_spectrum(spec)? {
        Verdict::Compatible(d) => Ok(d),
        Verdict::Incompatible(_) => Err(Error::IncompatibleSpectrum),
    }
}

/// Runs every check at dimension `n`; `seed` drives the random operators and
/// the random compatible spectrum.
pub fn run_suite(n: usize, seed: u64) -> Result<SuiteReport> {
    if !is_odd_prime(n) {
        return Err(Error::DimensionNotOddPrime(n));
    }
    if n > MAX_SUITE_DIM {
        return Err(Error::InvalidArgument(format!(
            "suite dimension {n} exceeds {MAX_SUITE_DIM}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pair = SchwingerPair::new(n)?;
    let basis = OperatorBasis::new(&pair);
    let mut checks = Vec::new();

    numerics_checks(n, &mut rng, &mut checks)?;
    schwinger_checks(&pair, &mut checks)?;
    basis_checks(&basis, &mut rng, &mut checks)?;

    let harmonic_energies: Vec<i64> = (0..n as i64).collect();
    let harmonic = Spectrum::from_integers(&harmonic_energies)?;
    let random_spec = random_compatible_spectrum(n, &mut rng)?;
    let spectra = [harmonic.clone(), random_spec];
    let decomps = spectra
        .iter()
        .map(compatible)
        .collect::<Result<Vec<_>>>()?;

    spectrum_checks(&pair, &spectra, &decomps, &mut checks)?;
    time_interval_checks(&pair, &basis, &spectra, &decomps, &mut checks)?;
    dynamics_checks(&pair, &basis, &spectra, &decomps, &mut rng, &mut checks)?;

    let conventions = measure_conventions(&pair, &basis, &decomps[0], &harmonic)?;
    checks.sort_by(|a, b| a.name.cmp(&b.name));
    let notes = vec![
        format!(
            "with V|u_n> = |u_(n-1)> and U|u_k> = exp(2 pi i k / N)|u_k>, the measured \
             commutation relation is U^j V^l = exp({}2 pi i j l / N) V^l U^j",
            sign_prefix(conventions.commutation_sign)
        ),
        format!(
            "a clock started in |v_i> occupies |v_(i {} j k)> after j periods",
            if conventions.shift_direction_sign < 0 { "-" } else { "+" }
        ),
        format!(
            "the propagator and exp(-i T dE_j) commute up to exp({}2 pi i n j k^2 / N)",
            sign_prefix(conventions.weyl_pair_sign)
        ),
    ];
    Ok(SuiteReport {
        n,
        seed,
        checks,
        conventions,
        notes,
    })
}

fn sign_prefix(s: i8) -> &'static str {
    if s < 0 {
        "-"
    } else {
        "+"
    }
}

fn numerics_checks(n: usize, rng: &mut ChaCha8Rng, out: &mut Vec<CheckResult>) -> Result<()> {
    let a = random_hermitian(n, rng);
    let eig = hermitian_eig(&a)?;
    out.push(CheckResult::at_most(
        "numerics.eig_reconstruction",
        eig.reconstruction_residual(&a),
        1e-10,
    ));
    out.push(CheckResult::at_most(
        "numerics.eig_orthonormality",
        eig.orthonormality_defect(),
        1e-12,
    ));

    let x = random_matrix(n, rng);
    let y = random_matrix(n, rng);
    out.push(CheckResult::at_most(
        "numerics.trace_cyclic",
        ((&x * &y).trace() - (&y * &x).trace()).norm(),
        1e-12,
    ));

    let (s, t) = (0.37, 1.21);
    let lhs = &exp_hermitian(&a, s)? * &exp_hermitian(&a, t)?;
    out.push(CheckResult::at_most(
        "numerics.exp_group",
        lhs.max_abs_diff(&exp_hermitian(&a, s + t)?),
        1e-10,
    ));
    out.push(CheckResult::at_most(
        "numerics.exp_unitary",
        exp_hermitian(&a, t)?.unitarity_defect(),
        1e-10,
    ));
    Ok(())
}

fn schwinger_checks(pair: &SchwingerPair, out: &mut Vec<CheckResult>) -> Result<()> {
    let n = pair.dim();
    let id = ComplexMatrix::identity(n);
    let cyc = pair
        .u()
        .pow(n as u64)
        .max_abs_diff(&id)
        .max(pair.v().pow(n as u64).max_abs_diff(&id));
    out.push(CheckResult::at_most("schwinger.cyclicity", cyc, 1e-12));

    let mut comm = 0.0f64;
    for j in 0..n as i64 {
        for l in 0..n as i64 {
            let c = pair.commutation_phase(j, l)?;
            comm = comm.max((c - root_of_unity(-j * l, n)).norm());
        }
    }
    out.push(CheckResult::at_most("schwinger.commutation_phase", comm, 1e-12));
    out.push(CheckResult::at_most(
        "schwinger.fourier_unitary",
        pair.fourier().unitarity_defect(),
        1e-12,
    ));

    let mut shift = 0.0f64;
    let mut eigen = 0.0f64;
    for s in 0..n {
        for idx in 0..n {
            let moved = pair.v_pow(s as i64).apply(&ComplexVector::basis(n, idx));
            let target = ComplexVector::basis(n, (idx + n - s) % n);
            shift = shift.max(moved.max_abs_diff(&target));
        }
        let v = pair.v_eigenvector(s)?;
        eigen = eigen.max(pair.v().apply(&v).max_abs_diff(&v.scale(root_of_unity(s as i64, n))));
    }
    out.push(CheckResult::at_most("schwinger.shift_action", shift, 0.0));
    out.push(CheckResult::at_most("schwinger.v_eigenvectors", eigen, 1e-12));

    let mut inverse = 0.0f64;
    for k in 0..n as i64 {
        let prod = &pair.u_pow(n as i64 - k) * &pair.u().pow(k as u64);
        inverse = inverse.max(prod.max_abs_diff(&id));
    }
    out.push(CheckResult::at_most("schwinger.clock_inverse", inverse, 1e-12));
    Ok(())
}

fn basis_checks(
    basis: &OperatorBasis,
    rng: &mut ChaCha8Rng,
    out: &mut Vec<CheckResult>,
) -> Result<()> {
    let n = basis.dim();
    let mut herm = 0.0f64;
    let mut trace = 0.0f64;
    let mut ortho = 0.0f64;
    let mut total = ComplexMatrix::zeros(n);
    for m in 0..n {
        for p in 0..n {
            let g = basis.element(m, p);
            herm = herm.max(g.hermiticity_defect());
            trace = trace.max((g.trace() - C64::new(1.0, 0.0)).norm());
            total = &total + g;
            for r in 0..n {
                for s in 0..n {
                    let expected = if (m, p) == (r, s) { n as f64 } else { 0.0 };
                    let ip = g.hs_inner(basis.element(r, s));
                    ortho = ortho.max((ip - C64::new(expected, 0.0)).norm());
                }
            }
        }
    }
    out.push(CheckResult::at_most("phase_space.basis_hermitian", herm, 1e-10));
    out.push(CheckResult::at_most("phase_space.basis_trace", trace, 1e-12));
    out.push(CheckResult::at_most("phase_space.basis_orthogonality", ortho, 1e-10));
    let scaled_id = ComplexMatrix::identity(n).scale(C64::new(n as f64, 0.0));
    out.push(CheckResult::at_most(
        "phase_space.basis_completeness",
        total.max_abs_diff(&scaled_id),
        1e-10,
    ));

    let mut round_trip = 0.0f64;
    for _ in 0..50 {
        let op = random_matrix(n, rng);
        let back = basis.unmap_grid(&basis.map_operator(&op)?)?;
        round_trip = round_trip.max(back.max_abs_diff(&op));
    }
    out.push(CheckResult::at_most("phase_space.round_trip", round_trip, 1e-10));

    let a = random_matrix(n, rng);
    let b = random_matrix(n, rng);
    let (ca, cb) = (C64::new(0.7, -1.3), C64::new(-0.4, 2.1));
    let combined = basis.map_operator(&(&a.scale(ca) + &b.scale(cb)))?;
    let ga = basis.map_operator(&a)?;
    let gb = basis.map_operator(&b)?;
    let separate = WignerGrid::from_fn(n, |m, p| ca * ga.get(m, p) + cb * gb.get(m, p));
    out.push(CheckResult::at_most(
        "phase_space.linearity",
        combined.max_abs_diff(&separate),
        1e-12,
    ));

    let rho = random_density(n, rng);
    let grid = basis.wigner_of_density(&rho)?;
    let vbasis: Vec<ComplexVector> = (0..n)
        .map(|k| ComplexVector::new((0..n).map(|j| root_of_unity((k * j) as i64, n) / (n as f64).sqrt()).collect()))
        .collect();
    let mut marg = 0.0f64;
    for idx in 0..n {
        let pu = rho[(idx, idx)] * n as f64;
        let vk = &vbasis[idx];
        let pv = vk.inner(&rho.apply(vk)) * n as f64;
        marg = marg
            .max((grid.energy_marginal(idx) - pu).norm())
            .max((grid.shift_marginal(idx) - pv).norm());
    }
    out.push(CheckResult::at_most("phase_space.marginals", marg, 1e-10));
    let reality = grid
        .max_imag()
        .max((grid.normalization() - C64::new(1.0, 0.0)).norm());
    out.push(CheckResult::at_most("phase_space.density_real_normalized", reality, 1e-10));
    Ok(())
}

fn spectrum_checks(
    pair: &SchwingerPair,
    spectra: &[Spectrum],
    decomps: &[SpectrumDecomposition],
    out: &mut Vec<CheckResult>,
) -> Result<()> {
    let n = pair.dim();
    let mut hyp = 0.0f64;
    let mut exact = 0.0f64;
    for (spec, d) in spectra.iter().zip(decomps) {
        if !d.reconstructs(spec) {
            exact = 1.0;
        }
        let h = spec.hamiltonian();
        for step in 1..=2 * n as u64 {
            let g = exp_hermitian(&h, step as f64 * d.delta_tau())?;
            let kp = crate::spectrum::power_at_step(d, step);
            hyp = hyp.max(g.max_abs_diff(&pair.u_pow(-(kp as i64))));
        }
    }
    out.push(CheckResult::at_most("spectrum.exact_identity", exact, 0.0));
    out.push(CheckResult::at_most("spectrum.hypothesis", hyp, 1e-10));
    Ok(())
}

fn time_interval_checks(
    pair: &SchwingerPair,
    basis: &OperatorBasis,
    spectra: &[Spectrum],
    decomps: &[SpectrumDecomposition],
    out: &mut Vec<CheckResult>,
) -> Result<()> {
    let n = pair.dim();
    let mut eigen = 0.0f64;
    let mut grid_res = 0.0f64;
    let mut herm = 0.0f64;
    let mut shift = 0.0f64;
    let mut weyl = 0.0f64;
    for (spec, d) in spectra.iter().zip(decomps) {
        let t = TimeIntervalOperator::new(pair, d)?;
        herm = herm.max(t.matrix().hermiticity_defect());
        for l in 0..n {
            let v = pair.v_eigenvector(l)?;
            let tv = t.matrix().apply(&v);
            eigen = eigen.max(tv.max_abs_diff(&v.scale(C64::new(t.eigenvalues()[l], 0.0))));
        }
        let grid = t.phase_space(basis)?;
        let expected = WignerGrid::from_real_fn(n, |_, col| d.delta_tau() * col as f64);
        grid_res = grid_res.max(grid.max_abs_diff(&expected));
        for s in 0..n {
            shift = shift.max(t.verify_energy_shift(spec, s)?);
        }
        let sign = t.measure_weyl_sign()?;
        for step in 0..n as u64 {
            for j in 0..n {
                let c = t.verify_weyl_pair(step, j)?;
                weyl = weyl.max((c - t.predicted_weyl_phase(step, j, sign)).norm());
            }
        }
    }
    let mub = pair
        .fourier()
        .entries()
        .iter()
        .map(|z| (z.norm_sqr() - 1.0 / n as f64).abs())
        .fold(0.0, f64::max);
    out.push(CheckResult::at_most("time_interval.hermitian", herm, 1e-12));
    out.push(CheckResult::at_most("time_interval.eigensystem", eigen, 1e-10));
    out.push(CheckResult::at_most("time_interval.phase_space", grid_res, 1e-10));
    out.push(CheckResult::at_most("time_interval.energy_shift", shift, 1e-10));
    out.push(CheckResult::at_most("time_interval.weyl_pair", weyl, 1e-10));
    out.push(CheckResult::at_most("time_interval.mutually_unbiased", mub, 1e-12));
    Ok(())
}

fn dynamics_checks(
    pair: &SchwingerPair,
    basis: &OperatorBasis,
    spectra: &[Spectrum],
    decomps: &[SpectrumDecomposition],
    rng: &mut ChaCha8Rng,
    out: &mut Vec<CheckResult>,
) -> Result<()> {
    let n = pair.dim();
    let mut clock = 0.0f64;
    let mut periodic = 0.0f64;
    let mut shift_rule = 0.0f64;
    for (spec, d) in spectra.iter().zip(decomps) {
        for i in 0..n {
            let trace = clock_run(pair, basis, d, spec, i, n)?;
            let mut seen = vec![false; n];
            for s in &trace.steps[..n] {
                seen[s.occupied_index] = true;
            }
            let covers = seen.iter().all(|&b| b);
            let returns = trace.steps[n].occupied_index == i;
            for s in &trace.steps {
                clock = clock
                    .max(1.0 - s.occupied_probability)
                    .max(s.max_offsite);
            }
            if !covers || !returns {
                clock = f64::INFINITY;
            }
        }
        let start = DensityMatrix::pure(&pair.v_eigenvector(0)?)?;
        let after = evolve_density(&start, &spec.hamiltonian(), n as f64 * d.delta_tau())?;
        periodic = periodic.max(after.matrix().max_abs_diff(start.matrix()));

        let rho = DensityMatrix::new(random_density(n, rng))?;
        shift_rule = shift_rule.max(shift_vs_evolution_residual(pair, basis, d, spec, &rho, n)?);
    }
    out.push(CheckResult::at_most("dynamics.clock_single_site", clock, 1e-9));
    out.push(CheckResult::at_most("dynamics.clock_periodicity", periodic, 1e-10));
    out.push(CheckResult::at_most("dynamics.shift_rule", shift_rule, 1e-9));

    let start = DensityMatrix::pure(&pair.v_eigenvector(0)?)?;
    let half = evolve_density(&start, &spectra[0].hamiltonian(), decomps[0].delta_tau() / 2.0)?;
    let offsite = occupancy(&basis.wigner_of_density(half.matrix())?).max_offsite;
    out.push(CheckResult::new(
        "dynamics.half_period_spread",
        offsite,
        0.01,
        Bound::Above,
    ));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes_at_small_primes() {
        for (n, seed) in [(3, 42), (5, 42), (7, 7)] {
            let report = run_suite(n, seed).unwrap();
            let failed: Vec<_> = report.checks.iter().filter(|c| !c.passed).collect();
            assert!(failed.is_empty(), "n={n}: {failed:?}");
            assert_eq!(report.conventions.commutation_sign, -1);
            assert_eq!(report.conventions.shift_direction_sign, -1);
            assert_eq!(report.conventions.weyl_pair_sign, -1);
        }
    }

    #[test]
    fn checks_are_sorted_by_name() {
        let report = run_suite(3, 1).unwrap();
        let names: Vec<&str> = report.checks.iter().map(|c| c.name.as_str()).collect();
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(names, sorted);
    }

    #[test]
    fn rejects_bad_dimensions() {
        assert!(matches!(run_suite(9, 1), Err(Error::DimensionNotOddPrime(9))));
        assert!(matches!(run_suite(37, 1), Err(Error::InvalidArgument(_))));
    }
}
