//! The Chevalley-Eilenberg algebra `C•(g)` with `d`, the shifted Poisson
//! bracket, the BV operator and block cohomology.

mod algebra;
mod bg;
mod block;
mod cohomology;
mod identities;
mod module;

pub use algebra::{CeAlgebra, Cochain, Monomial};
pub use bg::{bg_poisson_bracket, linear_function};
pub use block::{
    bv_operator, ce_differential, delta_on_generators, delta_operator, enumerate_block, operator_matrix, Block,
    BlockOperator, Selector,
};
pub use cohomology::{
    block_cohomology, bracket_well_defined, cohomology, cohomology_bracket, d_matrix, ker_delta_complex, selector_of,
    BlockCohomology, BracketEntry, Class, CohomologyTable, KerDeltaRow, KerDeltaTable, Truncation,
};
pub use identities::{
    block_checks, bracket_checks, cobracket_mutations, compatibility_check, delta_derivation_check, generation_check,
    identity_suite, leibniz_check, monomials_up_to, mutation_detection, IdentityWindow,
};
pub use module::{
    adjoint_square_module, ce_differential_module, check_module, d_module, phi_cochain, trivial_module, Module,
    ModuleBlockOperator, ModuleCochain,
};
