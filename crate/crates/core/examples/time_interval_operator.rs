//! The time-interval operator for a k = 2 spectrum: it generates shifts in
//! energy, and forms a Weyl pair with the propagator.

use quantum_clock::phase_space::OperatorBasis;
use quantum_clock::schwinger::SchwingerPair;
use quantum_clock::spectrum::{decompose_spectrum, Spectrum};
use quantum_clock::time_interval::TimeIntervalOperator;

fn main() -> quantum_clock::Result<()> {
    let spec = Spectrum::from_integers(&[0, 7, 24, 51, 88])?;
    let verdict = decompose_spectrum(&spec)?;
    let decomp = verdict.decomposition().expect("compatible spectrum");
    let pair = SchwingerPair::new(spec.dim())?;
    let t = TimeIntervalOperator::new(&pair, decomp)?;

    println!("dtau = {:.10}, k = {}", t.delta_tau(), decomp.k());
    println!("eigenvalues of T: {:?}", t.eigenvalues().iter().map(|x| format!("{x:.6}")).collect::<Vec<_>>());
    println!("Hermiticity defect {:.1e}", t.matrix().hermiticity_defect());

    for s in 1..spec.dim() {
        println!("exp(-i T dE) = V^(-{}s) for gap s = {s}: residual {:.1e}", decomp.k(), t.verify_energy_shift(&spec, s)?);
    }
    println!("Weyl pair sign {}", t.measure_weyl_sign()?);
    for (n, j) in [(1, 1), (2, 3), (3, 4)] {
        let c = t.verify_weyl_pair(n, j)?;
        println!("n = {n}, j = {j}: phase {:.6}, predicted {:.6}", c, t.predicted_weyl_phase(n, j, -1));
    }

    let basis = OperatorBasis::new(&pair);
    let grid = t.phase_space(&basis)?;
    println!("phase-space grid of T (rows m, columns n):");
    for row in grid.real_rows() {
        println!("  {}", row.iter().map(|x| format!("{x:8.4}")).collect::<Vec<_>>().join(" "));
    }
    Ok(())
}
