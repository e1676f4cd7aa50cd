//! Spin-basis bookkeeping, Rumer pairings and exact pairing-state vectors.
//!
//! Basis index convention: for `n` spins the computational basis state with
//! index `b` has spin `k` up (α) when bit `k` of `b` is set and down (β)
//! otherwise. Spin 0 is the least significant bit.

mod basis;
mod matching;
mod pairing;
mod pauli;

pub use basis::{sz_zero_states, twice_sz, SpinBasisState};
pub use matching::{
    enumerate_matchings, enumerate_matchings_with, matching_count, PerfectMatching,
};
pub use pairing::{overlap, pairing_state, singlet_product, ExactVector};
pub use pauli::{pauli_expectation, Pauli};
