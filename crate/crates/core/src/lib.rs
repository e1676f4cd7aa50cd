//! Spin density matrices of `N` spin-1/2 fermions in a closed-shell singlet
//! ground state.
//!
//! The state is built exactly, as integer numerators over a common
//! denominator, by three independent routes: a uniform sum over pairing-state
//! projectors, a brute-force Slater determinant traced over orbitals, and the
//! maximally mixed state on the total-spin-zero subspace. On top of that the
//! crate provides partial traces to arbitrary spin subsets, the closed-form
//! two-spin reduced state, partial transposition with eigenvalue negativity
//! and a principal-minor witness, and the CHSH correlator for one spin against
//! the rest.
//!
//! Linear algebra is generic over the scalar: [`linalg::Matrix`] holds any
//! numeric type, partial traces and transposes accept integers, rationals or
//! floats, and the Jacobi eigensolver runs in `f32` or `f64`.

pub mod bell;
pub mod entanglement;
pub mod error;
pub mod limits;
pub mod linalg;
pub mod reduction;
pub mod rho;
pub mod serde_rational;
pub mod spin;

pub use error::{Error, Result};
pub use limits::Limits;

/// Exact rational scalar.
pub type Rational = num_rational::Ratio<i64>;

pub type RealMatrix = linalg::Matrix<f64>;
pub type RealMatrix32 = linalg::Matrix<f32>;
pub type IntMatrix = linalg::Matrix<i64>;
pub type RationalMatrix = linalg::Matrix<Rational>;

pub use bell::{chsh_classical_bound_check, chsh_value_full, chsh_value_reduced, ChshReport};
pub use entanglement::{
    negativity_measure, partial_transpose, ppt_separability_pair, sylvester_witness, Bipartition,
    NegativityReport, WitnessReport,
};
pub use linalg::ExactMatrix;
pub use reduction::{
    pair_correlation, partial_trace, two_spin_reduced_analytic, ParentSize, SubsystemMask,
    TwoSpinWeights,
};
pub use rho::{
    build_rho_pairing, build_rho_slater_oracle, build_singlet_projector, von_neumann_entropy,
    Builder, ExactDensityMatrix,
};
pub use spin::{enumerate_matchings, overlap, pairing_state, ExactVector, PerfectMatching};
