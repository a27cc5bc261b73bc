//! Dense complex linear algebra, a Hermitian eigensolver and exact rationals.

mod eigen;
mod matrix;
pub mod random;
mod rational;

pub use eigen::{exp_hermitian, hermitian_eig, EigenSystem, HERMITIAN_TOL, SWEEP_BUDGET};
pub use matrix::{scalar_ratio, ComplexMatrix, ComplexVector};
pub use rational::{rational_gcd, rationalize, Rational};

/// Trial-division primality test.
pub fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn is_odd_prime(n: usize) -> bool {
    n % 2 == 1 && is_prime(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_primes() {
        let found: Vec<usize> = (0..30).filter(|&n| is_odd_prime(n)).collect();
        assert_eq!(found, vec![3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }
}
