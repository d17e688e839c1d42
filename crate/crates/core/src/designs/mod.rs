//! Finite fields, Latin squares, group divisible designs and their combinators.

mod construct;
mod embedding;
mod field;
mod gdd;
mod latin;

pub use construct::{
    affine_plane, complete_pairs, fill_holes, projective_plane, steiner_triple_system, td_from_mols,
    transversal_design, wilson_product,
};
pub use embedding::{EmbeddingOperatorSet, EmbeddingViolation};
pub use field::{is_prime, prime_power, FiniteField};
pub use gdd::{GddParams, GddViolation, GroupDivisibleDesign};
pub use latin::LatinSquareSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DesignError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("{0}")]
    Parameter(String),
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Infeasible(String),
    #[error("need {need} Latin squares, have {have}")]
    TooFewSquares { need: usize, have: usize },
    #[error("design verification failed: {0}")]
    Violation(GddViolation),
}
