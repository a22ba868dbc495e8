//! The "Way Through the Purgatory" jump puzzle.
//!
//! A puzzle is a list of `n` positive numbers. Play starts on the first cell;
//! from position `j` holding value `i` a jump lands on `j - i` or `j + i`,
//! provided the landing is in `1..=n+1`. Landing on `n + 1` (just past the
//! list) solves the puzzle.
//!
//! The crate provides:
//!
//! - [`puzzle`]: exact move semantics and the win condition,
//! - [`solver`]: a shortest-path solver, path and certificate verifiers,
//!   a brute-force oracle and a seeded random-walk simulator,
//! - [`graph`]: directed graphs, PATH instances and a reachability oracle,
//! - [`reduction`]: the PATH to purgatory reduction (degree reduction,
//!   relabelling, list encoding) and solution decoding,
//! - [`gen`]: reproducible puzzle generators and the spiral layout,
//! - [`format`]: the puzzle and graph text formats,
//! - [`equiv`]: the round-trip harness that checks the reduction against the
//!   reachability oracle.
//!
//! Positions are 1-indexed everywhere in the public API.

pub mod equiv;
pub mod format;
pub mod gen;
pub mod graph;
pub mod puzzle;
pub mod reduction;
pub mod solver;

pub use graph::{DirectedGraph, GraphError, PathInstance};
pub use puzzle::{Certificate, Direction, Move, Position, Puzzle, PuzzleError};
pub use reduction::{ReducedInstance, ReductionError, ReductionTrace, SublistConstants};
pub use solver::{PathRejection, SolveResult};
