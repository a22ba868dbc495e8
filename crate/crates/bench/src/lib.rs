//! Shared fixtures for the criterion benches.

use purgatory_core::gen::gen_puzzle;
use purgatory_core::graph::random_graph;
use purgatory_core::{PathInstance, Puzzle};

pub const SEED: u64 = 2010;

pub fn planted(n: usize) -> Puzzle {
    gen_puzzle(n, true, SEED).expect("planted generation cannot fail for n >= 1")
}

/// Every cell holds 1, so a search has to visit all positions.
pub fn all_ones(n: usize) -> Puzzle {
    Puzzle::new(vec![1; n]).expect("n >= 1")
}

pub fn random_instance(n: usize, m: usize) -> PathInstance {
    let g = random_graph(n, m, SEED).expect("m <= n * n");
    PathInstance::new(g, 1, n).expect("labels in range")
}
