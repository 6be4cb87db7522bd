//! Rational self-maps of the plane, the Jacobian test for preserving
//! `dx/x ∧ dy/y`, generators and seeded corpora, and generic fiber counts.

mod corpus;
mod fibers;
mod generators;
mod map;

use thiserror::Error;

use crate::arith::ArithError;
use crate::geom::GeomError;
use crate::ktheory::KtError;

pub use corpus::{gen_corpus, CorpusEntry};
pub use fibers::{fiber_count, fiber_count_with_redraws, FiberCount};
pub use generators::{gen_elementary, gen_monomial, gen_torus, Axis};
pub use map::{
    check_map, compose, is_symplectic_form, log_jacobian_ratio, theorem1_crosscheck, CrossCheck,
    FormKind, FormVerdict, RationalMap,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymplecticError {
    #[error("the map is not dominant (its Jacobian determinant vanishes)")]
    NotDominant,
    #[error("degenerate generator: {0}")]
    Degenerate(String),
    #[error("fiber is not zero-dimensional")]
    NotZeroDimensional,
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Kt(#[from] KtError),
}
