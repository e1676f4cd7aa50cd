use rayon::prelude::*;

use super::ExactDensityMatrix;
use crate::error::Result;
use crate::linalg::{ExactMatrix, Matrix};
use crate::spin::{enumerate_matchings_with, matching_count, pairing_state, ExactVector};
use crate::Limits;

/// `ρ^N = (1/M) Σ_m |m⟩⟨m|` over all `M` pairing states, exact.
pub fn build_rho_pairing(n: usize) -> Result<ExactDensityMatrix> {
    build_rho_pairing_with(n, &Limits::default())
}

pub fn build_rho_pairing_with(n: usize, limits: &Limits) -> Result<ExactDensityMatrix> {
    limits.check_dense(n)?;
    let matchings = enumerate_matchings_with(n, limits)?;
    let states: Vec<ExactVector> = matchings.par_iter().map(pairing_state).collect();
    let dim = 1usize << n;

    // Which pairing states touch each basis row, with their amplitude there.
    let mut touching: Vec<Vec<(usize, i64)>> = vec![Vec::new(); dim];
    for (idx, v) in states.iter().enumerate() {
        for (bits, a) in v.support() {
            touching[bits as usize].push((idx, a));
        }
    }

    let mut numer = vec![0i64; dim * dim];
    numer.par_chunks_mut(dim).enumerate().for_each(|(r, row)| {
        for &(idx, a) in &touching[r] {
            for (c, b) in states[idx].support() {
                row[c as usize] += a * b;
            }
        }
    });

    let denom = matching_count(n) as i64 * (1i64 << (n / 2));
    ExactDensityMatrix::new(ExactMatrix::new(Matrix::from_vec(dim, dim, numer), denom)?)
}
