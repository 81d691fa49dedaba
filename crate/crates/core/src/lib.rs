//! Exact computation with Coxeter systems.
//!
//! The crate covers the Tits representation over real cyclotomic fields, the
//! word problem, finite and affine classification, balls of the Davis complex
//! and their walls, wall-orbit trees for congruence subgroups, right-angled
//! Artin groups with their Coxeter embeddings, and 2-orbifold bookkeeping.

pub mod cli;
pub mod coxeter;
pub mod davis;
pub mod elements;
pub mod exact;
pub mod orbifold;
pub mod presentation;
pub mod raag;
pub mod verify;
pub mod wall_trees;

pub use coxeter::{CoxeterSystem, Kind, Order, TypeVerdict};
pub use elements::{Ball, GroupElement};
pub use exact::{ExactReal, FieldContext, Matrix};

/// Errors surfaced by the top-level run.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Coxeter(#[from] coxeter::CoxeterError),
    #[error(transparent)]
    Parse(#[from] coxeter::ParseError),
    #[error(transparent)]
    Elements(#[from] elements::ElementsError),
    #[error(transparent)]
    Graph(#[from] raag::GraphError),
    #[error(transparent)]
    Orbifold(#[from] orbifold::OrbifoldError),
    #[error(transparent)]
    Congruence(#[from] wall_trees::CongruenceError),
    #[error("{0}")]
    Io(String),
}
