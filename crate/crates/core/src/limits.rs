//! Size bounds for dense constructions.

use crate::error::{Error, Result};

/// Default largest particle count for dense 2^n x 2^n matrices.
pub const DEFAULT_MAX_N: usize = 12;

/// Largest particle count accepted by the brute-force Slater-determinant oracle.
pub const SLATER_MAX_N: usize = 8;

/// Hard ceiling on any configured bound; basis states are packed into `u64` words
/// and dense matrices are indexed with `usize`.
pub const ABSOLUTE_MAX_N: usize = 24;

/// Bytes per dense entry: exact `i64` numerator plus its `f64` view.
const BYTES_PER_ENTRY: u64 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest n for dense density matrices.
    pub max_n: usize,
    /// Largest n for which dense eigensolves of 2^n x 2^n matrices are attempted.
    pub eigensolve_max_n: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_n: DEFAULT_MAX_N,
            eigensolve_max_n: DEFAULT_MAX_N,
        }
    }
}

impl Limits {
    pub fn with_max_n(max_n: usize) -> Result<Self> {
        if !(2..=ABSOLUTE_MAX_N).contains(&max_n) {
            return Err(Error::invalid(format!(
                "max n must lie in 2..={ABSOLUTE_MAX_N}, got {max_n}"
            )));
        }
        Ok(Limits {
            max_n,
            eigensolve_max_n: max_n,
        })
    }

    /// Checks that `n` is an even particle count no larger than `max_n`.
    pub fn check_dense(&self, n: usize) -> Result<()> {
        check_even(n)?;
        if n > self.max_n {
            let dim = 1u64 << n.min(63);
            return Err(Error::ResourceLimit {
                n,
                max_n: self.max_n,
                dim,
                bytes: dense_bytes(n),
            });
        }
        Ok(())
    }

    pub fn check_eigensolve(&self, n: usize, alternative: &'static str) -> Result<()> {
        if n > self.eigensolve_max_n {
            return Err(Error::EigensolveLimit {
                n,
                max_n: self.eigensolve_max_n,
                alternative,
            });
        }
        Ok(())
    }
}

/// Approximate memory needed by a dense exact density matrix on `n` spins.
pub fn dense_bytes(n: usize) -> u64 {
    if n >= 30 {
        return u64::MAX;
    }
    (1u64 << (2 * n)).saturating_mul(BYTES_PER_ENTRY)
}

/// Particle counts must be even and at least 2.
pub fn check_even(n: usize) -> Result<()> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::invalid(format!(
            "particle count must be even and >= 2, got {n}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_odd_and_too_large() {
        let limits = Limits::default();
        assert!(matches!(
            limits.check_dense(3),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            limits.check_dense(0),
            Err(Error::InvalidArgument(_))
        ));
        let err = limits.check_dense(14).unwrap_err();
        match &err {
            Error::ResourceLimit { bytes, max_n, .. } => {
                assert_eq!(*max_n, 12);
                assert_eq!(*bytes, (1u64 << 28) * 16);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(err.to_string().contains("12"));
        assert!(limits.check_dense(12).is_ok());
    }

    #[test]
    fn configurable_bound() {
        let limits = Limits::with_max_n(6).unwrap();
        assert!(limits.check_dense(8).is_err());
        assert!(Limits::with_max_n(40).is_err());
    }
}
