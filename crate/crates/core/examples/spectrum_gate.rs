//! Deciding whether a spectrum admits a clock period, for exact and float input.

use quantum_clock::numerics::Rational;
use quantum_clock::spectrum::{analyze_float_spectrum, decompose_spectrum, Spectrum, Verdict};

fn describe(name: &str, verdict: &Verdict) {
    match verdict {
        Verdict::Compatible(d) => println!(
            "{name}: compatible, omega = {}, k = {}, dtau = {:.10}, f = {:?}",
            d.omega(),
            d.k(),
            d.delta_tau(),
            d.f().iter().map(|x| x.to_string()).collect::<Vec<_>>()
        ),
        Verdict::Incompatible(c) => println!(
            "{name}: incompatible ({:?}), residues {:?}, first failing index {:?}",
            c.reason, c.residues, c.first_failing_index
        ),
    }
}

fn main() -> quantum_clock::Result<()> {
    describe("harmonic", &decompose_spectrum(&Spectrum::from_integers(&[0, 1, 2, 3, 4])?)?);
    describe("skewed", &decompose_spectrum(&Spectrum::from_integers(&[0, 7, 24, 51, 88])?)?);
    describe("quadratic", &decompose_spectrum(&Spectrum::from_integers(&[0, 1, 4, 9, 16])?)?);

    let thirds: Vec<Rational> = (0..7).map(|m| Rational::new(m, 3)).collect::<Result<_, _>>()?;
    describe("thirds", &decompose_spectrum(&Spectrum::new(thirds)?)?);

    let floats = [0.0, 0.25, 0.5, 0.75, 1.0];
    let analysis = analyze_float_spectrum(&floats, 1e-9, 1_000_000)?;
    describe("quarters (float)", &analysis.verdict);

    let irrational = [0.0, 1.0, std::f64::consts::PI];
    let analysis = analyze_float_spectrum(&irrational, 1e-12, 1000)?;
    describe("with pi (float)", &analysis.verdict);
    Ok(())
}
