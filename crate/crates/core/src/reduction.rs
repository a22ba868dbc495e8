//! Reduction from PATH (directed st-connectivity) to the purgatory puzzle.
//!
//! The pipeline has three stages:
//!
//! 1. [`degree_reduce`] splits every vertex of outdegree `d > 2` into a chain
//!    of `d - 1` vertices of outdegree at most two.
//! 2. [`relabel`] renames vertices so that the source is `1` and the target is
//!    `n`.
//! 3. [`encode`] writes the list of `7n - 2` numbers:
//!
//! ```text
//! positions 1..=n          4n + 2i - 1    jump to the centre of sublist i
//! positions n+1..=4n       7n             dead moat
//! positions 4n+3i-2..=4n+3i  sublist i for i < n, centre value 1
//! position 7n - 2          7n
//! ```
//!
//! The first and third cell of a sublist jump back onto the first-list cell
//! of an out-neighbour. Vertex `n` has no sublist: position `n` holds
//! `6n - 1` and jumps straight to the goal `7n - 1`.
//!
//! [`reduce`] runs the whole pipeline and keeps a [`ReductionTrace`] so that
//! [`decode_solution`] can turn a puzzle solution back into a walk in the
//! original graph.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{DirectedGraph, PathInstance};
use crate::puzzle::{Direction, Move, Position, Puzzle};
use crate::solver::{check_path, PathRejection};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("encoder precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("not a solution of the reduced puzzle: {0}")]
    NotASolution(PathRejection),
}

/// Which constants to use for the outer cells of each sublist.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SublistConstants {
    /// `4n + 3i - j - 2` and `4n + 3i - k`: land exactly on cells `j` and `k`.
    #[default]
    Corrected,
    /// The historically published `3i + 4n - j - 3` and `3i + 4n - k - 1`,
    /// which land one cell too far right. Kept for comparison only.
    Paper,
}

impl SublistConstants {
    fn first(self, n: u64, i: u64, j: u64) -> u64 {
        match self {
            SublistConstants::Corrected => 4 * n + 3 * i - j - 2,
            SublistConstants::Paper => 3 * i + 4 * n - j - 3,
        }
    }

    fn third(self, n: u64, i: u64, k: u64) -> u64 {
        match self {
            SublistConstants::Corrected => 4 * n + 3 * i - k,
            SublistConstants::Paper => 3 * i + 4 * n - k - 1,
        }
    }
}

/// Correspondence between vertices and puzzle positions. Vectors are indexed
/// by `label - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    /// Vertex count of the encoded (degree-reduced, relabelled) graph.
    pub n: usize,
    /// First-list cell of each encoded vertex; always the identity.
    pub vertex_cell: Vec<usize>,
    /// Centre cell of the sublist of encoded vertex `i`, for `i < n`.
    pub sublist_center: Vec<usize>,
    /// Original vertex each encoded vertex stands for. Gadget vertices map to
    /// the vertex they were split from.
    pub origin: Vec<usize>,
    /// Encoded label of each original vertex, if it survived relabelling.
    pub relabel: Vec<Option<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedInstance {
    pub puzzle: Puzzle,
    pub trace: ReductionTrace,
    /// The graph that was encoded: outdegree at most two, `s = 1`, `t = n`.
    pub encoded: PathInstance,
}

/// Degree reduction plus the origin of every vertex of the result.
fn split_high_degree(inst: &PathInstance) -> (PathInstance, Vec<usize>) {
    let mut graph = inst.graph.clone();
    let mut origin: Vec<usize> = (1..=graph.n()).collect();
    for u in 1..=inst.graph.n() {
        let targets = inst.graph.out_neighbors(u);
        let d = targets.len();
        if d <= 2 {
            continue;
        }
        let chain: Vec<usize> = (0..d - 2).map(|_| graph.push_vertex()).collect();
        origin.extend(std::iter::repeat_n(u, d - 2));
        graph.set_out(u, vec![targets[0], chain[0]]);
        for t in 0..d - 2 {
            let next = if t + 1 < d - 2 { chain[t + 1] } else { targets[d - 1] };
            graph.set_out(chain[t], vec![targets[t + 1], next]);
        }
    }
    (PathInstance { graph, s: inst.s, t: inst.t }, origin)
}

/// Rewrites every vertex of outdegree `d > 2` into a chain through `d - 2`
/// new vertices (labelled after the existing ones, in vertex order).
/// Original labels, `s` and `t` are unchanged.
pub fn degree_reduce(inst: &PathInstance) -> PathInstance {
    split_high_degree(inst).0
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relabeled {
    pub instance: PathInstance,
    /// New label of each old vertex (`None` only when `s == t` collapsed the graph).
    pub map: Vec<Option<usize>>,
}

/// Renames vertices so that `s` becomes 1 and `t` becomes `n`; everything else
/// keeps its relative order. When `s == t` the answer is trivially yes and the
/// result is the one-vertex graph with no edges.
pub fn relabel(inst: &PathInstance) -> Result<Relabeled, ReductionError> {
    let g = &inst.graph;
    if g.max_out_degree() > 2 {
        return Err(ReductionError::PreconditionViolated(format!(
            "relabel needs outdegree <= 2, found {}",
            g.max_out_degree()
        )));
    }
    let n = g.n();
    let mut map = vec![None; n];
    if inst.s == inst.t {
        map[inst.s - 1] = Some(1);
        return Ok(Relabeled {
            instance: PathInstance { graph: DirectedGraph::new(1).expect("one vertex"), s: 1, t: 1 },
            map,
        });
    }
    map[inst.s - 1] = Some(1);
    map[inst.t - 1] = Some(n);
    let mut next = 2;
    for v in 1..=n {
        if v != inst.s && v != inst.t {
            map[v - 1] = Some(next);
            next += 1;
        }
    }
    let mut graph = DirectedGraph::new(n).expect("n >= 1");
    for u in 1..=n {
        let nu = map[u - 1].expect("total");
        graph.set_out(nu, g.out_neighbors(u).iter().map(|&v| map[v - 1].expect("total")).collect());
    }
    Ok(Relabeled { instance: PathInstance { graph, s: 1, t: n }, map })
}

pub fn encode(inst: &PathInstance) -> Result<ReducedInstance, ReductionError> {
    encode_with(inst, SublistConstants::Corrected)
}

/// Writes the purgatory list for a graph with `s = 1`, `t = n` and outdegree
/// at most two.
pub fn encode_with(inst: &PathInstance, constants: SublistConstants) -> Result<ReducedInstance, ReductionError> {
    let g = &inst.graph;
    let n = g.n();
    if inst.s != 1 || inst.t != n {
        return Err(ReductionError::PreconditionViolated(format!(
            "encode needs s = 1 and t = n = {n}, got s = {}, t = {}",
            inst.s, inst.t
        )));
    }
    if let Some(u) = (1..=n).find(|&u| g.out_degree(u) > 2) {
        return Err(ReductionError::PreconditionViolated(format!(
            "vertex {u} has outdegree {} > 2",
            g.out_degree(u)
        )));
    }

    let nn = n as u64;
    let moat = 7 * nn;
    let mut values = Vec::with_capacity(7 * n - 2);
    values.extend((1..=nn).map(|i| 4 * nn + 2 * i - 1));
    values.extend(std::iter::repeat_n(moat, 3 * n));
    for i in 1..n {
        let ii = i as u64;
        let sublist = match *g.out_neighbors(i) {
            [] => [moat, moat, moat],
            [j] => [constants.first(nn, ii, j as u64), 1, moat],
            [j, k] => [constants.first(nn, ii, j as u64), 1, constants.third(nn, ii, k as u64)],
            _ => unreachable!("outdegree checked above"),
        };
        values.extend(sublist);
    }
    values.push(moat);
    debug_assert_eq!(values.len(), 7 * n - 2);

    let trace = ReductionTrace {
        n,
        vertex_cell: (1..=n).collect(),
        sublist_center: (1..n).map(|i| 4 * n + 3 * i - 1).collect(),
        origin: (1..=n).collect(),
        relabel: (1..=n).map(Some).collect(),
    };
    Ok(ReducedInstance {
        puzzle: Puzzle::new(values).expect("encoded values are positive"),
        trace,
        encoded: inst.clone(),
    })
}

pub fn reduce(inst: &PathInstance) -> ReducedInstance {
    reduce_with(inst, SublistConstants::Corrected)
}

/// `encode(relabel(degree_reduce(inst)))` with the trace mapped back to the
/// labels of `inst`.
pub fn reduce_with(inst: &PathInstance, constants: SublistConstants) -> ReducedInstance {
    let (split, split_origin) = split_high_degree(inst);
    let relabeled = relabel(&split).expect("degree reduction bounds outdegree by 2");
    let mut red = encode_with(&relabeled.instance, constants).expect("relabel output satisfies encode");

    let mut origin = vec![0; red.trace.n];
    for (old, new) in relabeled.map.iter().enumerate() {
        if let Some(new) = new {
            origin[new - 1] = split_origin[old];
        }
    }
    red.trace.origin = origin;
    // original vertices keep their label through degree reduction
    red.trace.relabel = relabeled.map[..inst.graph.n()].to_vec();
    red
}

/// Maps a solution of the reduced puzzle to a walk from `s` to `t` in the
/// original graph: keep the first-list cells visited, translate them through
/// the trace and merge repeats produced by gadget chains.
pub fn decode_solution(red: &ReducedInstance, path: &[Position]) -> Result<Vec<usize>, ReductionError> {
    check_path(&red.puzzle, path).map_err(ReductionError::NotASolution)?;
    let n = red.trace.n;
    let mut walk: Vec<usize> = Vec::new();
    for p in path.iter().map(|p| p.get()).filter(|&p| p <= n) {
        let v = red.trace.origin[red.trace.vertex_cell[p - 1] - 1];
        if walk.last() != Some(&v) {
            walk.push(v);
        }
    }
    Ok(walk)
}

/// One failed structural property of an encoded list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StructureViolation {
    Length { expected: usize, found: usize },
    VertexCell { position: usize, expected: u64, found: u64 },
    Moat { position: usize, found: u64 },
    FinalCell { found: u64 },
    LiveMoatCell { position: usize },
    GoalPredecessor { position: usize },
    MissingWinningJump,
    SublistShape { vertex: usize, found: [u64; 3] },
    SublistLanding { vertex: usize, position: usize, expected: Vec<Move>, found: Vec<Move> },
    ValueFloor { position: usize, value: u64 },
}

impl fmt::Display for StructureViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use StructureViolation::*;
        match self {
            Length { expected, found } => write!(f, "length {found}, expected {expected}"),
            VertexCell { position, expected, found } => {
                write!(f, "vertex cell {position} holds {found}, expected {expected}")
            }
            Moat { position, found } => write!(f, "moat cell {position} holds {found}"),
            FinalCell { found } => write!(f, "final cell holds {found}"),
            LiveMoatCell { position } => write!(f, "moat-valued cell {position} has a legal move"),
            GoalPredecessor { position } => write!(f, "cell {position} jumps to the goal"),
            MissingWinningJump => write!(f, "cell n does not jump to the goal"),
            SublistShape { vertex, found } => write!(f, "sublist {vertex} has shape {found:?}"),
            SublistLanding { vertex, position, expected, found } => write!(
                f,
                "sublist {vertex} cell {position}: moves {found:?}, expected {expected:?}"
            ),
            ValueFloor { position, value } => write!(f, "cell {position} value {value} is below 3n + 1"),
        }
    }
}

/// Scans an encoded list for every structural property the reduction relies
/// on. An empty result means the list is well formed for `red.encoded`.
pub fn check_structure(red: &ReducedInstance) -> Vec<StructureViolation> {
    use StructureViolation::*;
    let n = red.encoded.graph.n();
    let p = &red.puzzle;
    let v = p.values();
    let moat = 7 * n as u64;
    let mut bad = Vec::new();

    if p.n() != 7 * n - 2 {
        bad.push(Length { expected: 7 * n - 2, found: p.n() });
        return bad;
    }
    for i in 1..=n {
        let expected = (4 * n + 2 * i - 1) as u64;
        if v[i - 1] != expected {
            bad.push(VertexCell { position: i, expected, found: v[i - 1] });
        }
    }
    for pos in n + 1..=4 * n {
        if v[pos - 1] != moat {
            bad.push(Moat { position: pos, found: v[pos - 1] });
        }
    }
    if v[7 * n - 3] != moat {
        bad.push(FinalCell { found: v[7 * n - 3] });
    }

    let moves_at = |pos: usize| p.legal_moves(Position::new(pos)).expect("cell").to_vec();
    let goal = p.goal();
    for pos in 1..=p.n() {
        let moves = moves_at(pos);
        if v[pos - 1] == moat && !moves.is_empty() {
            bad.push(LiveMoatCell { position: pos });
        }
        let wins = moves.iter().any(|m| m.to == goal);
        if wins && pos != n {
            bad.push(GoalPredecessor { position: pos });
        } else if !wins && pos == n {
            bad.push(MissingWinningJump);
        }
    }

    let floor = 3 * n as u64 + 1;
    for i in 1..n {
        let base = 4 * n + 3 * i - 2;
        let cells = [v[base - 1], v[base], v[base + 1]];
        let targets = red.encoded.graph.out_neighbors(i);
        let shape_ok = match targets.len() {
            0 => cells == [moat; 3],
            1 => cells[1] == 1 && cells[2] == moat,
            _ => cells[1] == 1 && cells[0] != moat && cells[2] != moat,
        };
        if !shape_ok {
            bad.push(SublistShape { vertex: i, found: cells });
            continue;
        }
        for (offset, target) in [(0, targets.first()), (2, targets.get(1))] {
            let pos = base + offset;
            if let Some(&t) = target {
                if cells[offset] < floor {
                    bad.push(ValueFloor { position: pos, value: cells[offset] });
                }
                let expected = vec![Move { direction: Direction::Backward, to: Position::new(t) }];
                let found = moves_at(pos);
                if found != expected {
                    bad.push(SublistLanding { vertex: i, position: pos, expected, found });
                }
            }
        }
    }
    bad
}
