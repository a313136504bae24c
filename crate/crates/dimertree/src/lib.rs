//! Dimer tree quivers and the combinatorial models of their syzygy categories.

pub mod checkerboard;
pub mod cli;
pub mod diag;
pub mod generate;
pub mod io;
pub mod mutation;
pub mod oracle;
pub mod quiver;
pub mod syzygy;
pub mod weights;

pub use quiver::{validate_dimer_tree, Quiver, VertexId};
pub use weights::{build_potential, cycle_path, weight_report, Direction};
