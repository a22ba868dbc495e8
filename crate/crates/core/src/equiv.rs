//! Round-trip harness: graph reachability against solvability of the reduced
//! puzzle, plus structural and decoding checks on every reduced instance.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{is_walk, random_graph, reachable, DirectedGraph, PathInstance};
use crate::reduction::{check_structure, decode_solution, reduce_with, SublistConstants};
use crate::solver::solve;

/// Counterexamples kept in a report; the counts are always exact.
pub const KEPT_COUNTEREXAMPLES: usize = 20;

#[derive(Debug, Clone, Default)]
pub struct EquivReport {
    pub checked: usize,
    pub mismatches: usize,
    pub structure_violations: usize,
    pub decode_failures: usize,
    /// First few failing instances with a one-line description.
    pub counterexamples: Vec<(PathInstance, String)>,
}

impl EquivReport {
    pub fn is_clean(&self) -> bool {
        self.mismatches == 0 && self.structure_violations == 0 && self.decode_failures == 0
    }

    fn keep(&mut self, inst: &PathInstance, why: String) {
        if self.counterexamples.len() < KEPT_COUNTEREXAMPLES {
            self.counterexamples.push((inst.clone(), why));
        }
    }

    /// Checks one instance and folds the outcome into the report.
    pub fn check(&mut self, inst: &PathInstance, constants: SublistConstants) {
        self.checked += 1;
        let red = reduce_with(inst, constants);
        let violations = check_structure(&red);
        if !violations.is_empty() {
            self.structure_violations += 1;
            self.keep(inst, format!("structure: {}", violations[0]));
        }
        let expected = reachable(inst);
        let result = solve(&red.puzzle);
        if result.solvable != expected {
            self.mismatches += 1;
            self.keep(inst, format!("reachable = {expected} but solvable = {}", result.solvable));
        }
        if let Some(path) = result.path {
            match decode_solution(&red, &path) {
                Ok(walk) if is_walk(inst, &walk) => {}
                Ok(walk) => {
                    self.decode_failures += 1;
                    self.keep(inst, format!("decoded walk {walk:?} is not an s-t walk"));
                }
                Err(e) => {
                    self.decode_failures += 1;
                    self.keep(inst, format!("decode failed: {e}"));
                }
            }
        }
    }
}

impl fmt::Display for EquivReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} instances checked, {} mismatches", self.checked, self.mismatches)
    }
}

pub fn check_all<I>(instances: I, constants: SublistConstants) -> EquivReport
where
    I: IntoIterator<Item = PathInstance>,
{
    let mut report = EquivReport::default();
    for inst in instances {
        report.check(&inst, constants);
    }
    report
}

/// Every loop-free digraph on vertices `1..=k`, in edge-bitmask order.
///
/// # Panics
///
/// Panics if `k * (k - 1)` does not fit in a 64-bit mask.
pub fn loop_free_digraphs(k: usize) -> impl Iterator<Item = DirectedGraph> {
    let pairs: Vec<(usize, usize)> = (1..=k)
        .flat_map(|u| (1..=k).filter(move |&v| v != u).map(move |v| (u, v)))
        .collect();
    assert!(pairs.len() < 64, "too many vertices to enumerate");
    (0..1u64 << pairs.len()).map(move |mask| {
        let edges = pairs.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &e)| e);
        DirectedGraph::from_edges(k, edges).expect("labels in range")
    })
}

/// All loop-free digraphs on exactly `k` vertices, each with every `(s, t)`
/// pair. Smaller graphs appear as their padding with isolated vertices.
pub fn exhaustive_instances(k: usize) -> impl Iterator<Item = PathInstance> {
    loop_free_digraphs(k).flat_map(move |g| {
        (1..=k).flat_map(move |s| {
            let g = g.clone();
            (1..=k).map(move |t| PathInstance { graph: g.clone(), s, t })
        })
    })
}

/// Random instances with `n <= max_n` vertices and `m <= max_m` edges,
/// reproducible per `seed`.
pub fn random_instances(count: usize, max_n: usize, max_m: usize, seed: u64) -> impl Iterator<Item = PathInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(move |_| {
        let n = rng.gen_range(1..=max_n);
        let m = rng.gen_range(0..=max_m.min(n * n));
        let graph = random_graph(n, m, rng.gen()).expect("m <= n * n");
        let s = rng.gen_range(1..=n);
        let t = rng.gen_range(1..=n);
        PathInstance { graph, s, t }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_counts() {
        assert_eq!(loop_free_digraphs(1).count(), 1);
        assert_eq!(loop_free_digraphs(3).count(), 64);
        assert_eq!(exhaustive_instances(2).count(), 16);
        assert!(loop_free_digraphs(3).all(|g| g.edges().all(|(u, v)| u != v)));
    }

    #[test]
    fn exhaustive_three_is_clean() {
        let report = check_all(exhaustive_instances(3), SublistConstants::Corrected);
        assert_eq!(report.checked, 64 * 9);
        assert!(report.is_clean(), "{:?}", report.counterexamples);
        assert_eq!(report.to_string(), "576 instances checked, 0 mismatches");
    }

    #[test]
    fn published_constants_produce_mismatches() {
        let report = check_all(exhaustive_instances(2), SublistConstants::Paper);
        assert!(report.mismatches > 0);
        let single_edge = PathInstance {
            graph: DirectedGraph::from_edges(2, [(1, 2)]).unwrap(),
            s: 1,
            t: 2,
        };
        assert!(report.counterexamples.iter().any(|(i, _)| *i == single_edge));
    }

    #[test]
    fn random_instances_are_reproducible() {
        let a: Vec<_> = random_instances(30, 10, 40, 5).collect();
        let b: Vec<_> = random_instances(30, 10, 40, 5).collect();
        assert_eq!(a, b);
        assert!(a.iter().all(|i| i.graph.n() <= 10 && i.graph.edge_count() <= 40));
    }
}
