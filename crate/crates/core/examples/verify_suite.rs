//! Runs the self-check suite at N = 3, 5 and 7 and prints a summary.

use quantum_clock::verify::run_suite;

fn main() -> quantum_clock::Result<()> {
    for n in [3, 5, 7] {
        let report = run_suite(n, 42)?;
        let failed: Vec<_> = report.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
        println!(
            "N = {n}: {}/{} checks passed, signs {:?}",
            report.checks.len() - failed.len(),
            report.checks.len(),
            report.conventions
        );
        for name in failed {
            println!("  failed: {name}");
        }
    }
    Ok(())
}
