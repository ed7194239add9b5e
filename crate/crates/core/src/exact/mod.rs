//! Exact rational arithmetic and sparse linear algebra.

pub mod dense;
pub mod elim;
pub mod poly;
pub mod scalar;
pub mod sparse;

pub use dense::{inverse, ldl_signature, rank_fraction_free, DENSE_LIMIT};
pub use elim::{echelon, kernel_basis, kernel_basis_with, proportionality, rank, rank_with, Echelon, Pivoting};
pub use poly::Poly;
pub use scalar::{ExactScalar, ParseScalarError, Scalar};
pub use sparse::{Accumulator, SparseMatrix, SparseVector};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("reference vector is zero")]
    ZeroReference,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not square")]
    NotSquare,
    #[error("{rows}x{cols} exceeds the dense limit")]
    TooLarge { rows: usize, cols: usize },
}
