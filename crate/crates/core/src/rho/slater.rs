use std::collections::BTreeMap;

use super::ExactDensityMatrix;
use crate::error::{Error, Result};
use crate::limits::{check_even, SLATER_MAX_N};
use crate::linalg::{ExactMatrix, Matrix};

/// Orbital label and spin of every particle in one term of the expanded
/// determinant. Orbitals are an orthonormal set `0..n/2`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct OrbitalSpinConfiguration {
    orbitals: Vec<u8>,
    spins: u64,
}

impl OrbitalSpinConfiguration {
    pub fn new(orbitals: Vec<u8>, spins: u64) -> Self {
        OrbitalSpinConfiguration { orbitals, spins }
    }

    pub fn orbitals(&self) -> &[u8] {
        &self.orbitals
    }

    pub fn spins(&self) -> u64 {
        self.spins
    }

    /// No two particles share an (orbital, spin) pair.
    pub fn is_pauli_allowed(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.orbitals
            .iter()
            .enumerate()
            .all(|(p, &o)| seen.insert((o, self.spins >> p & 1)))
    }
}

/// Spin density matrix from a closed-shell Slater determinant.
///
/// Every orbital `0..n/2` is doubly occupied. The determinant is expanded over
/// all `n!` particle permutations, then orbital labels are traced out using
/// their orthonormality. Brute force by construction, limited to `n <= 8`.
pub fn build_rho_slater_oracle(n: usize) -> Result<ExactDensityMatrix> {
    check_even(n)?;
    if n > SLATER_MAX_N {
        return Err(Error::UnsupportedSize(format!(
            "Slater-determinant oracle supports n <= {SLATER_MAX_N}, got {n}"
        )));
    }

    // Spin-orbital s: orbital s/2, spin up for even s.
    let mut by_orbitals: BTreeMap<Vec<u8>, BTreeMap<u64, i64>> = BTreeMap::new();
    for_each_permutation(n, |perm, sign| {
        let orbitals: Vec<u8> = perm.iter().map(|&s| (s / 2) as u8).collect();
        let spins = perm
            .iter()
            .enumerate()
            .filter(|(_, &s)| s % 2 == 0)
            .fold(0u64, |acc, (p, _)| acc | 1 << p);
        let config = OrbitalSpinConfiguration::new(orbitals, spins);
        debug_assert!(config.is_pauli_allowed());
        *by_orbitals
            .entry(config.orbitals)
            .or_default()
            .entry(config.spins)
            .or_insert(0) += sign;
    });

    let dim = 1usize << n;
    let mut numer = Matrix::<i64>::zeros(dim, dim);
    let mut norm: i64 = 0;
    for spin_vector in by_orbitals.values() {
        for (&r, &a) in spin_vector {
            norm += a * a;
            for (&c, &b) in spin_vector {
                numer[(r as usize, c as usize)] += a * b;
            }
        }
    }
    ExactDensityMatrix::new(ExactMatrix::new(numer, norm)?)
}

// Heap's algorithm; each swap flips the permutation sign.
fn for_each_permutation(n: usize, mut visit: impl FnMut(&[usize], i64)) {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut counters = vec![0usize; n];
    let mut sign = 1i64;
    visit(&perm, sign);
    let mut i = 1;
    while i < n {
        if counters[i] < i {
            let j = if i % 2 == 0 { 0 } else { counters[i] };
            perm.swap(j, i);
            sign = -sign;
            visit(&perm, sign);
            counters[i] += 1;
            i = 1;
        } else {
            counters[i] = 0;
            i += 1;
        }
    }
}
