//! Dense matrices generic over the scalar, a Jacobi eigensolver for real
//! symmetric matrices, and exact matrices with a common integer denominator.

mod eigen;
mod exact;
mod matrix;

pub use eigen::{
    blockwise_symmetric_eigenvalues, structural_blocks, symmetric_eigenvalues, RealScalar,
};
pub(crate) use exact::ratio_from_i128;
pub use exact::ExactMatrix;
pub use matrix::Matrix;
