//! A stroboscopic clock: a shift eigenstate hops one lattice column per
//! period, and is smeared out between the ticks.

use quantum_clock::dynamics::{clock_run, evolve_density, occupancy, DensityMatrix};
use quantum_clock::phase_space::OperatorBasis;
use quantum_clock::schwinger::SchwingerPair;
use quantum_clock::spectrum::{decompose_spectrum, Spectrum};

fn main() -> quantum_clock::Result<()> {
    let spec = Spectrum::from_integers(&[0, 7, 24, 51, 88])?;
    let verdict = decompose_spectrum(&spec)?;
    let decomp = verdict.decomposition().expect("compatible spectrum");
    let pair = SchwingerPair::new(spec.dim())?;
    let basis = OperatorBasis::new(&pair);

    let trace = clock_run(&pair, &basis, decomp, &spec, 0, 2 * spec.dim())?;
    println!("k = {}, dtau = {:.6}, direction {}", trace.k, trace.delta_tau, trace.direction_sign);
    for s in &trace.steps {
        println!(
            "j = {:2}  t = {:8.4}  site {}  p = {:.12}  off-site {:.1e}",
            s.j, s.time, s.occupied_index, s.occupied_probability, s.max_offsite
        );
    }

    let rho = DensityMatrix::pure(&pair.v_eigenvector(0)?)?;
    let h = spec.hamiltonian();
    println!("between ticks:");
    for frac in [0.25, 0.5, 0.75] {
        let t = frac * decomp.delta_tau();
        let grid = basis.wigner_of_density(evolve_density(&rho, &h, t)?.matrix())?;
        let occ = occupancy(&grid);
        println!("  t = {frac} dtau: best site {} with p = {:.4}, off-site {:.4}", occ.index, occ.probability, occ.max_offsite);
    }
    Ok(())
}
