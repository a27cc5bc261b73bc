//! Deciding whether a spectrum admits a stroboscopic clock.
//!
//! A spectrum `E_m` (hbar = 1) is compatible when it can be written exactly as
//! `E_m = omega * (k m + N f(m))` with `k` in `1..N` and integer `f`. Then
//! `exp(-i H dtau) = U^{-k}` with `dtau = 2 pi / (N omega)`.
//!
//! The analysis takes `lambda = omega` as the rational gcd of the energies. Any
//! other admissible quantum is `lambda / t` for an integer `t`, which multiplies
//! every residue `E_m / lambda mod N` by `t`; that preserves the form `k m mod N`
//! exactly when it already held (for `t` coprime to `N`) and collapses it to
//! `k = 0` otherwise. Testing the maximal `lambda` is therefore complete.
//! Since `N` is prime, `m = 1` is invertible and `k` must equal the residue at
//! `m = 1`; every other index then only needs validating.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64 as C64;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numerics::{is_odd_prime, rational_gcd, rationalize, ComplexMatrix, Rational};
use crate::schwinger::root_of_unity;

/// Energies indexed by the energy-basis label `m = 0..N`, in units with hbar = 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    energies: Vec<Rational>,
}

impl Spectrum {
    pub fn new(energies: Vec<Rational>) -> Result<Self> {
        if !is_odd_prime(energies.len()) {
            return Err(Error::DimensionNotOddPrime(energies.len()));
        }
        Ok(Spectrum { energies })
    }

    pub fn from_integers(energies: &[i64]) -> Result<Self> {
        Self::new(energies.iter().map(|&e| Rational::from_integer(e)).collect())
    }

    pub fn dim(&self) -> usize {
        self.energies.len()
    }

    pub fn energies(&self) -> &[Rational] {
        &self.energies
    }

    pub fn energies_f64(&self) -> Vec<f64> {
        self.energies.iter().map(Rational::to_f64).collect()
    }

    /// `H = diag(E_0, ..., E_{N-1})` in the energy basis.
    pub fn hamiltonian(&self) -> ComplexMatrix {
        ComplexMatrix::from_real_diagonal(&self.energies_f64())
    }

    /// `E_m - E_0`.
    pub fn shifted_to_ground(&self) -> Spectrum {
        let e0 = self.energies[0].clone();
        Spectrum {
            energies: self.energies.iter().map(|e| e - &e0).collect(),
        }
    }
}

/// An exact solution of `E_m = omega (k m + N f(m))`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumDecomposition {
    dim: usize,
    omega: Rational,
    k: usize,
    f: Vec<BigInt>,
    delta_tau: f64,
}

impl SpectrumDecomposition {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The energy quantum; equal to `omega` since hbar = 1.
    pub fn lambda(&self) -> &Rational {
        &self.omega
    }

    pub fn omega(&self) -> &Rational {
        &self.omega
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn f(&self) -> &[BigInt] {
        &self.f
    }

    /// The clock period `2 pi / (N omega)`.
    pub fn delta_tau(&self) -> f64 {
        self.delta_tau
    }

    pub fn energy(&self, m: usize) -> Rational {
        let quanta = BigInt::from(self.k * m) + BigInt::from(self.dim) * &self.f[m];
        &self.omega * &Rational::from_integer(quanta)
    }

    /// The spectrum this decomposition describes.
    pub fn spectrum(&self) -> Spectrum {
        Spectrum {
            energies: (0..self.dim).map(|m| self.energy(m)).collect(),
        }
    }

    /// Whether the identity holds exactly for every energy of `spec`.
    pub fn reconstructs(&self, spec: &Spectrum) -> bool {
        spec.dim() == self.dim && (0..self.dim).all(|m| self.energy(m) == spec.energies[m])
    }
}

/// Builds `E_m = omega (k m + N f(m))` directly from its parameters.
pub fn compose_spectrum(omega: &Rational, k: usize, f: &[i64]) -> Result<Spectrum> {
    let n = f.len() as i64;
    Spectrum::new(
        f.iter()
            .enumerate()
            .map(|(m, fm)| omega * &Rational::from_integer(k as i64 * m as i64 + n * fm))
            .collect(),
    )
}

/// Random instance of the compatible form: `k` in `1..N`, `f(m)` in `[-20, 20]`,
/// `omega = p/q` with `p, q` in `1..=9`.
pub fn random_compatible_spectrum<R: rand::Rng + ?Sized>(dim: usize, rng: &mut R) -> Result<Spectrum> {
    let k = rng.gen_range(1..dim);
    let f: Vec<i64> = (0..dim).map(|_| rng.gen_range(-20..=20)).collect();
    let omega = Rational::new(rng.gen_range(1..=9i64), rng.gen_range(1..=9i64))?;
    compose_spectrum(&omega, k, &f)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IncompatibilityReason {
    NotCommensurable,
    ResiduesNotLinear,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncompatibilityCertificate {
    pub reason: IncompatibilityReason,
    /// `E_m / lambda mod N`; empty when the energies are not commensurable.
    pub residues: Vec<usize>,
    /// For residues, the first `m` no single `k` fits; for commensurability,
    /// the first energy that could not be rationalized.
    pub first_failing_index: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    Compatible(SpectrumDecomposition),
    Incompatible(IncompatibilityCertificate),
}

impl Verdict {
    pub fn decomposition(&self) -> Option<&SpectrumDecomposition> {
        match self {
            Verdict::Compatible(d) => Some(d),
            Verdict::Incompatible(_) => None,
        }
    }

    pub fn is_compatible(&self) -> bool {
        matches!(self, Verdict::Compatible(_))
    }
}

pub fn decompose_spectrum(spec: &Spectrum) -> Result<Verdict> {
    let n = spec.dim();
    if spec.energies.iter().all(|e| *e == spec.energies[0]) {
        return Err(Error::DegenerateSpectrum);
    }
    let lambda = rational_gcd(&spec.energies)?;
    let big_n = BigInt::from(n);
    let quanta: Vec<BigInt> = spec
        .energies
        .iter()
        .map(|e| (e / &lambda).to_integer().expect("gcd divides every energy"))
        .collect();
    let residues: Vec<usize> = quanta
        .iter()
        .map(|q| q.mod_floor(&big_n).to_usize().expect("residue below N"))
        .collect();

    let k = residues[1];
    let first_bad = if residues[0] != 0 {
        Some(0)
    } else if k == 0 {
        Some(1)
    } else {
        (2..n).find(|&m| residues[m] != (k * m) % n)
    };
    if let Some(index) = first_bad {
        return Ok(Verdict::Incompatible(IncompatibilityCertificate {
            reason: IncompatibilityReason::ResiduesNotLinear,
            residues,
            first_failing_index: Some(index),
        }));
    }

    let f: Vec<BigInt> = quanta
        .iter()
        .enumerate()
        .map(|(m, q)| {
            let (quot, rem) = (q - BigInt::from(k * m)).div_rem(&big_n);
            debug_assert!(rem.is_zero());
            quot
        })
        .collect();
    let delta_tau = 2.0 * PI / (n as f64 * lambda.to_f64());
    Ok(Verdict::Compatible(SpectrumDecomposition {
        dim: n,
        omega: lambda,
        k,
        f,
        delta_tau,
    }))
}

/// An energy as supplied by a caller: exact, or a float to be rationalized.
#[derive(Debug, Clone, PartialEq)]
pub enum EnergyInput {
    Exact(Rational),
    Float(f64),
}

impl EnergyInput {
    pub fn approx(&self) -> f64 {
        match self {
            EnergyInput::Exact(r) => r.to_f64(),
            EnergyInput::Float(x) => *x,
        }
    }
}

/// How one float energy was turned into a rational.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalizedEnergy {
    pub index: usize,
    pub input: f64,
    pub value: Option<Rational>,
    /// `|input - value|`, when a value was found.
    pub residual: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FloatAnalysis {
    pub verdict: Verdict,
    /// One entry per float input, in index order.
    pub rationalized: Vec<RationalizedEnergy>,
    /// The exact spectrum, when every energy was rationalized.
    pub spectrum: Option<Spectrum>,
}

/// Rationalizes each energy independently and then decides compatibility.
pub fn analyze_float_spectrum(
    energies: &[f64],
    tolerance: f64,
    max_denominator: u64,
) -> Result<FloatAnalysis> {
    let inputs: Vec<EnergyInput> = energies.iter().map(|&x| EnergyInput::Float(x)).collect();
    analyze_energies(&inputs, tolerance, max_denominator)
}

/// As [`analyze_float_spectrum`], passing exact entries through unchanged.
pub fn analyze_energies(
    energies: &[EnergyInput],
    tolerance: f64,
    max_denominator: u64,
) -> Result<FloatAnalysis> {
    if !is_odd_prime(energies.len()) {
        return Err(Error::DimensionNotOddPrime(energies.len()));
    }
    if !(tolerance > 0.0) {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    let mut exact = Vec::with_capacity(energies.len());
    let mut rationalized = Vec::new();
    let mut first_failure = None;
    for (index, entry) in energies.iter().enumerate() {
        let x = match entry {
            EnergyInput::Exact(r) => {
                exact.push(Some(r.clone()));
                continue;
            }
            EnergyInput::Float(x) => *x,
        };
        match rationalize(x, tolerance, max_denominator) {
            Ok(r) => {
                let residual = (&Rational::from_f64_exact(x).expect("finite") - &r)
                    .abs()
                    .to_f64();
                exact.push(Some(r.clone()));
                rationalized.push(RationalizedEnergy {
                    index,
                    input: x,
                    value: Some(r),
                    residual: Some(residual),
                });
            }
            Err(Error::NoRationalWithinTolerance { .. }) => {
                first_failure.get_or_insert(index);
                exact.push(None);
                rationalized.push(RationalizedEnergy {
                    index,
                    input: x,
                    value: None,
                    residual: None,
                });
            }
            Err(e) => return Err(e),
        }
    }
    if let Some(index) = first_failure {
        return Ok(FloatAnalysis {
            verdict: Verdict::Incompatible(IncompatibilityCertificate {
                reason: IncompatibilityReason::NotCommensurable,
                residues: Vec::new(),
                first_failing_index: Some(index),
            }),
            rationalized,
            spectrum: None,
        });
    }
    let spectrum = Spectrum::new(exact.into_iter().map(|r| r.expect("all rationalized")).collect())?;
    let verdict = decompose_spectrum(&spectrum)?;
    Ok(FloatAnalysis {
        verdict,
        rationalized,
        spectrum: Some(spectrum),
    })
}

/// The power `k' = n k mod N` with `exp(-i H n dtau) = U^{-k'}`.
pub fn power_at_step(decomp: &SpectrumDecomposition, n: u64) -> usize {
    let dim = decomp.dim as u64;
    ((n % dim) * decomp.k as u64 % dim) as usize
}

/// The unique `k` with `max_m |exp(-i E_m dt) - exp(-2 pi i k m / N)| < tolerance`.
pub fn check_hypothesis(spec: &Spectrum, delta_t: f64, tolerance: f64) -> Option<usize> {
    let n = spec.dim();
    let phases: Vec<C64> = spec
        .energies_f64()
        .iter()
        .map(|e| C64::from_polar(1.0, -e * delta_t))
        .collect();
    (0..n).find(|&k| {
        phases
            .iter()
            .enumerate()
            .map(|(m, p)| (p - root_of_unity(-((k * m) as i64), n)).norm())
            .fold(0.0, f64::max)
            < tolerance
    })
}


#[cfg(test)]
mod properties {
    use super::*;
    use proptest::prelude::*;

    fn dims() -> impl Strategy<Value = usize> {
        prop::sample::select(vec![3usize, 5, 7, 11, 13])
    }

    proptest! {
        #[test]
        fn constructed_spectra_decompose_exactly(
            n in dims(),
            k_seed in 1usize..1000,
            p in 1i64..=9,
            q in 1i64..=9,
            f in prop::collection::vec(-20i64..=20, 13),
        ) {
            let k = 1 + k_seed % (n - 1);
            let omega = Rational::new(p, q).unwrap();
            let spec = compose_spectrum(&omega, k, &f[..n]).unwrap();
            let d = decompose_spectrum(&spec).unwrap().decomposition().cloned();
            prop_assert!(d.is_some());
            let d = d.unwrap();
            prop_assert!(d.reconstructs(&spec));
        }

        #[test]
        fn verdict_is_scale_invariant(n in dims(), seed in any::<u64>(), num in 1i64..50, den in 1i64..50) {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let spec = random_compatible_spectrum(n, &mut rng).unwrap();
            let c = Rational::new(num, den).unwrap();
            let scaled = Spectrum::new(spec.energies().iter().map(|e| e * &c).collect()).unwrap();
            let a = decompose_spectrum(&spec).unwrap();
            let b = decompose_spectrum(&scaled).unwrap();
            prop_assert_eq!(a.decomposition().map(|d| d.k()), b.decomposition().map(|d| d.k()));
        }
    }
}
