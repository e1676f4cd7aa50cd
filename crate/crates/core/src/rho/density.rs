use std::ops::Deref;

use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, Matrix};
use crate::spin::{twice_sz, ExactVector};
use crate::Rational;

/// Exact real symmetric density matrix on `n` spins with unit trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactDensityMatrix {
    n: usize,
    matrix: ExactMatrix,
}

impl ExactDensityMatrix {
    /// Checks dimension, symmetry and unit trace. Positivity is checked
    /// separately by [`ExactDensityMatrix::check_psd`].
    pub fn new(matrix: ExactMatrix) -> Result<Self> {
        let n = matrix
            .spin_count()
            .ok_or_else(|| Error::invalid(format!("dimension {} is not 2^n", matrix.dim())))?;
        if !matrix.is_symmetric() {
            return Err(Error::invalid("density matrix must be symmetric"));
        }
        if matrix.trace() != Rational::from_integer(1) {
            return Err(Error::invalid(format!(
                "density matrix trace is {}, expected 1",
                matrix.trace()
            )));
        }
        Ok(ExactDensityMatrix { n, matrix })
    }

    /// `|v><v| / <v|v>`.
    pub fn pure(v: &ExactVector) -> Result<Self> {
        let dim = 1usize << v.n();
        let mut numer = Matrix::zeros(dim, dim);
        let support: Vec<_> = v.support().collect();
        let mut norm: i64 = 0;
        for &(r, a) in &support {
            norm += a * a;
            for &(c, b) in &support {
                numer[(r as usize, c as usize)] = a * b;
            }
        }
        if norm == 0 {
            return Err(Error::invalid("zero vector has no pure state"));
        }
        Self::new(ExactMatrix::new(numer, norm)?)
    }

    /// `I / 2^n`.
    pub fn maximally_mixed(n: usize) -> Result<Self> {
        let dim = 1usize << n;
        Self::new(ExactMatrix::new(Matrix::identity(dim), dim as i64)?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ExactMatrix {
        self.matrix
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.matrix.eigenvalues().first().copied().unwrap_or(0.0)
    }

    /// Fails with a domain error when an eigenvalue is below `-tol`.
    pub fn check_psd(&self, tol: f64) -> Result<()> {
        let min = self.min_eigenvalue();
        if min < -tol {
            return Err(Error::Domain(format!(
                "matrix is not positive semidefinite: eigenvalue {min:e}"
            )));
        }
        Ok(())
    }

    /// True when every nonzero entry has both row and column in the S_z = 0 sector.
    pub fn supported_in_sz_zero(&self) -> bool {
        let dim = self.matrix.dim();
        (0..dim).all(|r| {
            (0..dim).all(|c| {
                self.matrix.numer_at(r, c) == 0
                    || (twice_sz(r as u64, self.n) == 0 && twice_sz(c as u64, self.n) == 0)
            })
        })
    }
}

impl Deref for ExactDensityMatrix {
    type Target = ExactMatrix;

    fn deref(&self) -> &ExactMatrix {
        &self.matrix
    }
}

impl AsRef<ExactMatrix> for ExactDensityMatrix {
    fn as_ref(&self) -> &ExactMatrix {
        &self.matrix
    }
}
