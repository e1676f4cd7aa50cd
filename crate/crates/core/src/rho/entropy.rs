use super::ExactDensityMatrix;
use crate::error::Result;
use crate::linalg::RealScalar;

/// Eigenvalues at or below this are treated as exact zeros.
pub const ENTROPY_CUTOFF: f64 = 1e-12;

const PSD_TOLERANCE: f64 = 1e-10;

/// `-Σ λ ln λ` over eigenvalues above `cutoff`, in nats.
pub fn entropy_of_spectrum<T: RealScalar>(eigenvalues: &[T], cutoff: T) -> T {
    eigenvalues
        .iter()
        .filter(|&&l| l > cutoff)
        .fold(T::zero(), |acc, &l| acc - l * l.ln())
}

/// Von Neumann entropy in nats. Rejects matrices with an eigenvalue below `-1e-10`.
pub fn von_neumann_entropy(rho: &ExactDensityMatrix) -> Result<f64> {
    rho.check_psd(PSD_TOLERANCE)?;
    Ok(entropy_of_spectrum(&rho.eigenvalues(), ENTROPY_CUTOFF))
}
