//! Discrete Wigner grids of a few states at N = 3, and the map/unmap round trip.

use quantum_clock::dynamics::DensityMatrix;
use quantum_clock::numerics::random::random_density;
use quantum_clock::numerics::ComplexVector;
use quantum_clock::phase_space::{OperatorBasis, WignerGrid};
use quantum_clock::schwinger::SchwingerPair;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn show(title: &str, grid: &WignerGrid) {
    println!("{title}");
    for row in grid.real_rows() {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:8.4}")).collect();
        println!("  {}", cells.join(" "));
    }
}

fn main() -> quantum_clock::Result<()> {
    let n = 3;
    let pair = SchwingerPair::new(n)?;
    let basis = OperatorBasis::new(&pair);

    let v1 = DensityMatrix::pure(&pair.v_eigenvector(1)?)?;
    show("|v_1><v_1| (one column of ones):", &basis.wigner_of_density(v1.matrix())?);

    let u2 = DensityMatrix::pure(&ComplexVector::basis(n, 2))?;
    show("|u_2><u_2| (one row of ones):", &basis.wigner_of_density(u2.matrix())?);

    let rho = random_density(n, &mut ChaCha8Rng::seed_from_u64(1));
    let grid = basis.wigner_of_density(&rho)?;
    show("random mixed state (can be negative):", &grid);
    println!("imaginary part {:.1e}, normalization {:.12}", grid.max_imag(), grid.normalization().re);
    let back = basis.unmap_grid(&grid)?;
    println!("unmap(map(rho)) - rho: {:.1e}", back.max_abs_diff(&rho));
    Ok(())
}
