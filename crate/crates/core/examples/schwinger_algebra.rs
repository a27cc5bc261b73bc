//! The clock/shift pair at N = 5: cyclicity, the commutation phase and the
//! Fourier matrix linking the two eigenbases.

use quantum_clock::numerics::ComplexMatrix;
use quantum_clock::schwinger::{root_of_unity, SchwingerPair};

fn main() -> quantum_clock::Result<()> {
    let n = 5;
    let pair = SchwingerPair::new(n)?;
    let id = ComplexMatrix::identity(n);

    println!("U^N = I: residual {:.1e}", pair.u_pow(n as i64).max_abs_diff(&id));
    println!("V^N = I: residual {:.1e}", pair.v_pow(n as i64).max_abs_diff(&id));

    for (j, l) in [(1, 1), (2, 3), (4, 4)] {
        let c = pair.commutation_phase(j, l)?;
        let expected = root_of_unity(-j * l, n);
        println!("U^{j} V^{l} = c V^{l} U^{j}: c = {:.6}, |c - w^(-jl)| = {:.1e}", c, (c - expected).norm());
    }

    let f = pair.fourier();
    println!("|<v_k|u_n>|^2 for k = 0:");
    for col in 0..n {
        print!(" {:.6}", f[(0, col)].norm_sqr());
    }
    println!();
    println!("Fourier unitarity defect {:.1e}", f.unitarity_defect());
    Ok(())
}
