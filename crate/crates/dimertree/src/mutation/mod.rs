//! Mutation of quivers with potential, the local moves that reduce a dimer tree quiver, and the
//! reduction driver that ends at a single cycle.

mod moves;
mod qp;
mod reduce;

use thiserror::Error;

pub use moves::{apply_move, one_point_coextension, Equivalence, Move, MoveKind, MoveRecord};
pub use qp::{canonical_ids, collect, qp_mutate, renormalise, word_string, MutationLog, Qp, QpDoc, Word};
pub use reduce::{reduce_to_cycle, ReductionTrace};

#[derive(Debug, Error, Clone)]
pub enum MutationError {
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("unknown arrow {0}")]
    UnknownArrow(String),
    #[error("potential term {0} is not a cycle")]
    NotACycle(String),
    #[error("irreducible 2-cycle: {0}")]
    Irreducible(String),
    #[error("not a dimer tree QP: {0}")]
    NotDimerTree(String),
    #[error("{kind} at {site}: pattern not found: {detail}")]
    Pattern { kind: MoveKind, site: String, detail: String },
    #[error("{kind} at {site}: precondition fails: {detail}")]
    Precondition { kind: MoveKind, site: String, detail: String },
    #[error("{kind} at {site}: total weight changed from {before} to {after}")]
    WeightChanged { kind: MoveKind, site: String, before: usize, after: usize },
    #[error("reduction stuck: {0}")]
    Stuck(String),
    #[error("reduction aborted after {} moves: {error}", trace.moves.len())]
    Aborted { error: Box<MutationError>, trace: Box<ReductionTrace> },
}
