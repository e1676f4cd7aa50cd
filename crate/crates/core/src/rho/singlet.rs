use std::collections::HashMap;

use rayon::prelude::*;

use super::ExactDensityMatrix;
use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, Matrix};
use crate::spin::sz_zero_states;
use crate::{Limits, Rational};

/// Orthogonal projector onto the total-spin-zero subspace of `n` spins.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingletProjector {
    n: usize,
    projector: ExactMatrix,
    rank: usize,
}

impl SingletProjector {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn projector(&self) -> &ExactMatrix {
        &self.projector
    }

    /// Dimension of the singlet subspace.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `P0 / d0`.
    pub fn maximally_mixed(&self) -> Result<ExactDensityMatrix> {
        let numer = self.projector.numer().clone();
        let denom = self.projector.denom() * self.rank as i64;
        ExactDensityMatrix::new(ExactMatrix::new(numer, denom)?)
    }
}

/// `C(n, n/2) - C(n, n/2 + 1)`, the multiplicity of total spin zero.
pub fn singlet_dimension(n: usize) -> u64 {
    assert!(n.is_multiple_of(2));
    binomial(n as u64, n as u64 / 2) - binomial(n as u64, n as u64 / 2 + 1)
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

pub fn build_singlet_projector(n: usize) -> Result<SingletProjector> {
    build_singlet_projector_with(n, &Limits::default())
}

/// Builds `P0` exactly as a polynomial in the total spin.
///
/// On the S_z = 0 sector `4 S² = n(4 - n) I + 4 Σ_{i<j} P_ij` with `P_ij` the
/// swap of spins `i` and `j`, an integer matrix. Its eigenvalues are
/// `4 s (s + 1)` for `s = 0..=n/2`, so
/// `P0 = Π_{s=1}^{n/2} (4S² - 4s(s+1)) / (-4s(s+1))`, evaluated in integers.
pub fn build_singlet_projector_with(n: usize, limits: &Limits) -> Result<SingletProjector> {
    limits.check_dense(n)?;
    let sector = sz_zero_states(n);
    let d = sector.len();
    let position: HashMap<u64, usize> = sector.iter().enumerate().map(|(i, &b)| (b, i)).collect();

    // For each sector state, the sector indices reached by all n(n-1)/2 swaps.
    let swaps: Vec<Vec<usize>> = sector
        .iter()
        .map(|&b| {
            let mut out = Vec::with_capacity(n * (n - 1) / 2);
            for i in 0..n {
                for j in i + 1..n {
                    let differ = (b >> i ^ b >> j) & 1;
                    let swapped = b ^ (differ << i | differ << j);
                    out.push(position[&swapped]);
                }
            }
            out
        })
        .collect();

    let diag = (n as i128) * (4 - n as i128);
    let mut acc = Matrix::<i128>::identity(d);
    let mut denom: i128 = 1;
    for s in 1..=(n / 2) as i128 {
        let shift = 4 * s * (s + 1);
        let mut next = vec![0i128; d * d];
        next.par_chunks_mut(d).enumerate().for_each(|(r, row)| {
            let own = acc.row(r);
            for (c, x) in row.iter_mut().enumerate() {
                *x = (diag - shift) * own[c];
            }
            for &t in &swaps[r] {
                for (x, &y) in row.iter_mut().zip(acc.row(t)) {
                    *x += 4 * y;
                }
            }
        });
        acc = Matrix::from_vec(d, d, next);
        denom *= -shift;
    }

    let dim = 1usize << n;
    let mut numer = Matrix::<i64>::zeros(dim, dim);
    let overflow = || Error::Domain(format!("singlet projector entries overflow i64 at n = {n}"));
    for (r, &br) in sector.iter().enumerate() {
        for (c, &bc) in sector.iter().enumerate() {
            numer[(br as usize, bc as usize)] =
                i64::try_from(acc[(r, c)]).map_err(|_| overflow())?;
        }
    }
    let projector = ExactMatrix::new(numer, i64::try_from(denom).map_err(|_| overflow())?)?;
    let trace = projector.trace();
    if !trace.is_integer() || *trace.numer() < 1 {
        return Err(Error::Domain(format!(
            "singlet projector trace {trace} is not a positive integer"
        )));
    }
    debug_assert_eq!(trace, Rational::from_integer(singlet_dimension(n) as i64));
    Ok(SingletProjector {
        n,
        projector,
        rank: *trace.numer() as usize,
    })
}
