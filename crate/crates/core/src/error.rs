use thiserror::Error;

/// Which sub-check a candidate density operator failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DensityCheck {
    Hermiticity,
    UnitTrace,
    PositiveSemidefinite,
}

impl std::fmt::Display for DensityCheck {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            DensityCheck::Hermiticity => "hermiticity",
            DensityCheck::UnitTrace => "unit trace",
            DensityCheck::PositiveSemidefinite => "positive semidefiniteness",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max |A - A^dagger| = {deviation:e})")]
    NotHermitian { deviation: f64 },
    #[error("Jacobi iteration did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("matrix entries must be finite")]
    NonFinite,
    #[error("expected {expected} entries, found {found}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("no rational p/q with q <= {max_denominator} lies within {tolerance:e} of {value}")]
    NoRationalWithinTolerance {
        value: f64,
        tolerance: f64,
        max_denominator: u64,
    },
    #[error("all inputs are zero")]
    AllZero,
    #[error("dimension {0} is not an odd prime")]
    DimensionNotOddPrime(usize),
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("matrices are not scalar multiples (residual {residual:e})")]
    NotScalarMultiple { residual: f64 },
    #[error("not a density matrix: {0} check failed")]
    NotADensityMatrix(DensityCheck),
    #[error("all energies are equal; no complete residue set exists")]
    DegenerateSpectrum,
    #[error("spectrum does not match the supplied decomposition")]
    IncompatibleSpectrum,
    #[error("clock direction changed at step {step}")]
    ClockDirectionInconsistent { step: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
