//! Exact shifted graded Lie bialgebras and their Chevalley-Eilenberg
//! complexes: differentials, shifted Poisson brackets, BV operators and
//! block cohomology, all over the rationals.

pub mod exact_linalg;
pub mod glie;
pub mod cochain;
pub mod cli;
pub mod scenarios;

use thiserror::Error as ThisError;

#[derive(Debug, Clone, PartialEq, Eq, ThisError)]
pub enum Error {
    #[error("containment: {0}")]
    Containment(String),
    #[error("not semisimple: {0}")]
    NotSemisimple(String),
    #[error("degenerate pairing: {0}")]
    PairingDegenerate(String),
    #[error("not closed: {0}")]
    NotClosed(String),
    #[error("co-Jacobi fails: {0}")]
    CoJacobi(String),
    #[error("not a module: {0}")]
    NotAModule(String),
    #[error("weights do not span a pointed cone: {0}")]
    NonPointedCone(String),
    #[error("infeasible block: {0}")]
    InfeasibleBlock(String),
    #[error("truncation: {0}")]
    Truncation(String),
    #[error("not a cocycle: {0}")]
    NotACocycle(String),
    #[error("degenerate form: {0}")]
    DegenerateForm(String),
    #[error("Frobenius algebra: {0}")]
    Frobenius(String),
    #[error("shift parity: {0}")]
    ShiftParity(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}
