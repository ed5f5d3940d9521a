//! Graded Lie (super)algebras, shifted Lie bialgebras, Manin triples and
//! r-matrices.

mod algebra;
mod bialgebra;
mod catalog;
mod manin;
mod validate;

pub use algebra::{sgn, tensor_entries, tensor_from_entries, BasisElement, GradedLie, Tensor3};
pub use bialgebra::{Bialgebra, BilinearForm, ManinTriple, RMatrix, Side};
pub use catalog::{
    catalog, check_permutation, coadjoint_matrix, coboundary_cobracket, delta_r, end_from_alphas, end_graded,
    frobenius_loop, involutivity_check, standard_bialgebra, standard_for_dims, standard_manin_triple, standard_r,
    supertrace_form, theta_bialgebra, theta_data, EndGraded, FrobeniusAlgebra, Restriction, ThetaData,
};
pub use manin::{change_basis, double_of_bialgebra, dual_bialgebra, manin_to_bialgebra, restrict};
pub use validate::{
    check_antisymmetry, check_cocycle_constants, check_cocycle_tensor, check_degrees, check_jacobi, validate_lie,
    validate_manin, validate_structures, Check, ValidationReport,
};
