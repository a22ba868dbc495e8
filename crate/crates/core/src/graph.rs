//! Directed graphs, PATH instances and the reachability oracle.

use std::collections::VecDeque;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    NoVertices,
    #[error("vertex {vertex} is outside 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("{m} edges requested but a {n}-vertex graph has at most {max}")]
    TooManyEdges { n: usize, m: usize, max: usize },
}

/// Vertices are labelled `1..=n`. Each out-list keeps first-insertion order
/// and holds no duplicates; self-loops are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DirectedGraph {
    out: Vec<Vec<usize>>,
}

impl DirectedGraph {
    pub fn new(n: usize) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::NoVertices);
        }
        Ok(DirectedGraph { out: vec![Vec::new(); n] })
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = DirectedGraph::new(n)?;
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Returns `false` if the edge was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool, GraphError> {
        self.check(u)?;
        self.check(v)?;
        let list = &mut self.out[u - 1];
        if list.contains(&v) {
            return Ok(false);
        }
        list.push(v);
        Ok(true)
    }

    /// Appends a fresh isolated vertex and returns its label.
    pub(crate) fn push_vertex(&mut self) -> usize {
        self.out.push(Vec::new());
        self.out.len()
    }

    pub(crate) fn set_out(&mut self, u: usize, targets: Vec<usize>) {
        self.out[u - 1] = targets;
    }

    fn check(&self, v: usize) -> Result<(), GraphError> {
        if (1..=self.n()).contains(&v) {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    pub fn out_neighbors(&self, u: usize) -> &[usize] {
        &self.out[u - 1]
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.out[u - 1].len()
    }

    pub fn max_out_degree(&self) -> usize {
        self.out.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.out.get(u.wrapping_sub(1)).is_some_and(|l| l.contains(&v))
    }

    /// Edges in vertex order, then out-list order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out.iter().enumerate().flat_map(|(u, l)| l.iter().map(move |&v| (u + 1, v)))
    }
}

/// A PATH question: is `t` reachable from `s` in `graph`?
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PathInstance {
    pub graph: DirectedGraph,
    pub s: usize,
    pub t: usize,
}

impl PathInstance {
    pub fn new(graph: DirectedGraph, s: usize, t: usize) -> Result<Self, GraphError> {
        graph.check(s)?;
        graph.check(t)?;
        Ok(PathInstance { graph, s, t })
    }

    pub fn reachable(&self) -> bool {
        reachable(self)
    }
}

fn bfs_parents(g: &DirectedGraph, s: usize, t: usize) -> Option<Vec<usize>> {
    let mut parent = vec![0usize; g.n() + 1];
    parent[s] = s;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        if u == t {
            return Some(parent);
        }
        for &v in g.out_neighbors(u) {
            if parent[v] == 0 {
                parent[v] = u;
                queue.push_back(v);
            }
        }
    }
    None
}

/// `s == t` counts as reachable through the empty path.
pub fn reachable(inst: &PathInstance) -> bool {
    bfs_parents(&inst.graph, inst.s, inst.t).is_some()
}

/// A shortest `s`-`t` walk, or `None` if `t` is unreachable.
pub fn witness_path(inst: &PathInstance) -> Option<Vec<usize>> {
    let parent = bfs_parents(&inst.graph, inst.s, inst.t)?;
    let mut path = vec![inst.t];
    let mut v = inst.t;
    while v != inst.s {
        v = parent[v];
        path.push(v);
    }
    path.reverse();
    Some(path)
}

/// True iff `walk` starts at `s`, ends at `t` and follows edges of the graph.
pub fn is_walk(inst: &PathInstance, walk: &[usize]) -> bool {
    walk.first() == Some(&inst.s)
        && walk.last() == Some(&inst.t)
        && walk.windows(2).all(|w| inst.graph.has_edge(w[0], w[1]))
}

/// `m` distinct edges drawn uniformly without replacement from all `n * n`
/// ordered pairs (self-loops included). Reproducible per `(n, m, seed)`.
pub fn random_graph(n: usize, m: usize, seed: u64) -> Result<DirectedGraph, GraphError> {
    let mut g = DirectedGraph::new(n)?;
    let max = n.saturating_mul(n);
    if m > max {
        return Err(GraphError::TooManyEdges { n, m, max });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for idx in rand::seq::index::sample(&mut rng, max, m) {
        g.add_edge(idx / n + 1, idx % n + 1)?;
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn inst(n: usize, edges: &[(usize, usize)], s: usize, t: usize) -> PathInstance {
        PathInstance::new(DirectedGraph::from_edges(n, edges.iter().copied()).unwrap(), s, t).unwrap()
    }

    #[test]
    fn construction_dedups_and_checks_labels() {
        let g = DirectedGraph::from_edges(3, [(1, 2), (1, 3), (1, 2), (2, 2)]).unwrap();
        assert_eq!(g.out_neighbors(1), &[2, 3]);
        assert_eq!(g.out_neighbors(2), &[2]);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(DirectedGraph::from_edges(2, [(1, 3)]), Err(GraphError::VertexOutOfRange { vertex: 3, n: 2 }));
        assert_eq!(DirectedGraph::new(0), Err(GraphError::NoVertices));
        assert!(PathInstance::new(g, 1, 4).is_err());
    }

    #[test]
    fn reachability() {
        assert!(reachable(&inst(1, &[], 1, 1)));
        assert!(reachable(&inst(2, &[(1, 2)], 1, 2)));
        assert!(!reachable(&inst(2, &[(2, 1)], 1, 2)));
    }

    #[test]
    fn witnesses() {
        assert_eq!(witness_path(&inst(3, &[(1, 2), (2, 3)], 1, 3)), Some(vec![1, 2, 3]));
        assert_eq!(witness_path(&inst(3, &[], 2, 2)), Some(vec![2]));
        assert_eq!(witness_path(&inst(3, &[(2, 1)], 1, 3)), None);
    }

    #[test]
    fn random_graph_edge_cases() {
        assert_eq!(random_graph(1, 0, 9).unwrap().edge_count(), 0);
        let g = random_graph(1, 1, 9).unwrap();
        assert_eq!(g.out_neighbors(1), &[1]);
        assert_eq!(random_graph(4, 20, 0), Err(GraphError::TooManyEdges { n: 4, m: 20, max: 16 }));
        assert_eq!(random_graph(4, 16, 3).unwrap().edge_count(), 16);
    }

    fn arb_instance() -> impl Strategy<Value = (usize, Vec<(usize, usize)>, usize, usize)> {
        (1usize..=12).prop_flat_map(|n| {
            (
                Just(n),
                prop::collection::vec((1..=n, 1..=n), 0..=(2 * n)),
                1..=n,
                1..=n,
            )
        })
    }

    proptest! {
        #[test]
        fn witness_agrees_with_reachable((n, edges, s, t) in arb_instance()) {
            let i = inst(n, &edges, s, t);
            let w = witness_path(&i);
            prop_assert_eq!(w.is_some(), reachable(&i));
            if let Some(w) = w {
                prop_assert!(is_walk(&i, &w));
            }
        }

        #[test]
        fn adding_edges_is_monotone((n, edges, s, t) in arb_instance(), extra in prop::collection::vec((0usize..64, 0usize..64), 1..8)) {
            let mut i = inst(n, &edges, s, t);
            let mut before = reachable(&i);
            for (u, v) in extra {
                i.graph.add_edge(u % n + 1, v % n + 1).unwrap();
                let after = reachable(&i);
                prop_assert!(!before || after);
                before = after;
            }
        }

        #[test]
        fn random_graph_is_reproducible(n in 1usize..20, seed in any::<u64>(), frac in 0.0f64..=1.0) {
            let m = ((n * n) as f64 * frac) as usize;
            let a = random_graph(n, m, seed).unwrap();
            prop_assert_eq!(a.edge_count(), m);
            prop_assert_eq!(a, random_graph(n, m, seed).unwrap());
        }
    }
}
