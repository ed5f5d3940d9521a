//! Exact sparse linear algebra over the rationals.

mod eigen;
mod quotient;
mod scalar;
pub mod sparse;

pub use eigen::{charpoly, eigen_split, rational_roots};
pub use quotient::{quotient_basis, QuotientBasis};
pub use scalar::Scalar;
pub use sparse::{echelonize, image, inverse_rows, rank_kernel, vec_times_rows, SparseMatrix, SparseVec, SubspaceBasis};
