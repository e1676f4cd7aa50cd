//! Construction of the N-spin density matrix by three independent routes,
//! its symmetry checks, and the von Neumann entropy.

mod density;
mod entropy;
mod pairing;
mod singlet;
mod slater;
mod symmetry;

pub use density::ExactDensityMatrix;
pub use entropy::{entropy_of_spectrum, von_neumann_entropy, ENTROPY_CUTOFF};
pub use pairing::{build_rho_pairing, build_rho_pairing_with};
pub use singlet::{
    build_singlet_projector, build_singlet_projector_with, singlet_dimension, SingletProjector,
};
pub use slater::{build_rho_slater_oracle, OrbitalSpinConfiguration};
pub use symmetry::{permute_spins, permute_spins_exact, total_spin_commutator, Axis};

use serde::{Deserialize, Serialize};

/// Which construction produced a density matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Builder {
    /// Uniform sum of pairing-state projectors.
    Pairing,
    /// Brute-force Slater determinant traced over orbitals.
    Slater,
    /// Maximally mixed state on the total-spin-zero subspace.
    Singlet,
}

impl Builder {
    pub const ALL: [Builder; 3] = [Builder::Pairing, Builder::Slater, Builder::Singlet];

    pub fn name(self) -> &'static str {
        match self {
            Builder::Pairing => "pairing",
            Builder::Slater => "slater",
            Builder::Singlet => "singlet",
        }
    }

    pub fn build(self, n: usize, limits: &crate::Limits) -> crate::Result<ExactDensityMatrix> {
        match self {
            Builder::Pairing => build_rho_pairing_with(n, limits),
            Builder::Slater => {
                limits.check_dense(n)?;
                build_rho_slater_oracle(n)
            }
            Builder::Singlet => build_singlet_projector_with(n, limits)?.maximally_mixed(),
        }
    }
}

impl std::str::FromStr for Builder {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        Builder::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| crate::Error::InvalidArgument(format!("unknown builder '{s}'")))
    }
}
