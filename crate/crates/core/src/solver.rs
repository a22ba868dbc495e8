//! Deciding solvability, producing witnesses and checking them.
//!
//! [`solve`] is a breadth-first search over the `n + 1` positions and always
//! returns a shortest solution. Of the verifiers, [`check_path`] works on a
//! materialised puzzle while [`verify_certificate`] only ever sees one cell at
//! a time through an accessor and keeps a single position counter as state.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::puzzle::{jump_target, Certificate, Direction, Position, Puzzle};

/// Largest puzzle accepted by [`brute_force_solvable`].
pub const ORACLE_MAX_N: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub solvable: bool,
    /// Starts at 1 and ends at `n + 1` when present.
    pub path: Option<Vec<Position>>,
    pub certificate: Option<Certificate>,
    /// Number of positions dequeued by the search.
    pub explored: usize,
}

const UNSEEN: usize = usize::MAX;

pub fn solve(p: &Puzzle) -> SolveResult {
    let n = p.n();
    let goal = n + 1;
    // parent[j] for j in 1..=n+1; index 0 unused
    let mut parent = vec![UNSEEN; n + 2];
    let mut queue = VecDeque::with_capacity(n.min(1 << 16));
    parent[1] = 1;
    queue.push_back(1usize);
    let mut explored = 0;

    while let Some(j) = queue.pop_front() {
        explored += 1;
        if j == goal {
            break;
        }
        let value = p.values()[j - 1];
        for direction in Direction::ALL {
            if let Some(t) = jump_target(value, j, n, direction) {
                if parent[t] == UNSEEN {
                    parent[t] = j;
                    queue.push_back(t);
                }
            }
        }
    }

    if parent[goal] == UNSEEN {
        return SolveResult { solvable: false, path: None, certificate: None, explored };
    }

    let mut path = vec![goal];
    let mut j = goal;
    while j != 1 {
        j = parent[j];
        path.push(j);
    }
    path.reverse();
    let certificate = path
        .windows(2)
        .map(|w| if w[1] > w[0] { Direction::Forward } else { Direction::Backward })
        .collect();
    SolveResult {
        solvable: true,
        path: Some(path.into_iter().map(Position::new).collect()),
        certificate: Some(certificate),
        explored,
    }
}

/// Why a proposed path is not a solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error, Serialize)]
pub enum PathRejection {
    #[error("path does not start at position 1")]
    BadStart,
    /// The `k`-th jump (1-indexed) is not a legal move.
    #[error("jump {0} is not a legal move")]
    IllegalStep(usize),
    #[error("path does not end at the goal")]
    NotAtGoal,
}

impl PathRejection {
    /// Short reason code, e.g. `IllegalStep(3)`.
    pub fn code(&self) -> String {
        match self {
            PathRejection::BadStart => "BadStart".into(),
            PathRejection::IllegalStep(k) => format!("IllegalStep({k})"),
            PathRejection::NotAtGoal => "NotAtGoal".into(),
        }
    }
}

impl fmt::Display for SolveResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.path {
            Some(path) => {
                let mut first = true;
                for p in path {
                    if !first {
                        f.write_str(" ")?;
                    }
                    first = false;
                    write!(f, "{p}")?;
                }
                Ok(())
            }
            None => f.write_str("unsolvable"),
        }
    }
}

pub fn check_path(p: &Puzzle, path: &[Position]) -> Result<(), PathRejection> {
    match path.first() {
        Some(first) if *first == Position::START => {}
        _ => return Err(PathRejection::BadStart),
    }
    for (k, w) in path.windows(2).enumerate() {
        let legal = p
            .legal_moves(w[0])
            .map(|moves| moves.iter().any(|m| m.to == w[1]))
            .unwrap_or(false);
        if !legal {
            return Err(PathRejection::IllegalStep(k + 1));
        }
    }
    if path.last() == Some(&p.goal()) {
        Ok(())
    } else {
        Err(PathRejection::NotAtGoal)
    }
}

pub fn verify_path(p: &Puzzle, path: &[Position]) -> bool {
    check_path(p, path).is_ok()
}

/// Streams a certificate against a puzzle that is only reachable through
/// `value_at` (1-indexed, called for positions in `1..=n`).
///
/// Live state is the current position plus the one value just fetched.
/// A fetched value larger than `n` rejects immediately, since such a cell has
/// no legal jump.
pub fn verify_certificate<F, I>(mut value_at: F, n: usize, cert: I) -> bool
where
    F: FnMut(usize) -> u64,
    I: IntoIterator<Item = Direction>,
{
    let goal = n + 1;
    let mut position = 1usize;
    for direction in cert {
        if position == goal {
            return false;
        }
        let value = value_at(position);
        if value > n as u64 {
            return false;
        }
        match jump_target(value, position, n, direction) {
            Some(t) => position = t,
            None => return false,
        }
    }
    position == goal
}

/// Plays a certificate from position 1. An illegal move (including any move
/// after the goal) ends the replay and is recorded as position `n + 2`, so
/// the result is a path exactly when the certificate is a solution.
pub fn replay(p: &Puzzle, cert: &Certificate) -> Vec<Position> {
    let mut path = vec![Position::START];
    let mut at = Position::START;
    for &d in cert.steps() {
        match p.apply(at, d) {
            Ok(next) => {
                at = next;
                path.push(at);
            }
            Err(_) => {
                path.push(Position::new(p.n() + 2));
                break;
            }
        }
    }
    path
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("oracle limited to n <= {ORACLE_MAX_N}, got {0}")]
pub struct OracleScaleExceeded(pub usize);

/// Exhaustive depth-first search with an explicit visited set. Deliberately
/// shares nothing with [`solve`] except the puzzle's move rule.
pub fn brute_force_solvable(p: &Puzzle) -> Result<bool, OracleScaleExceeded> {
    if p.n() > ORACLE_MAX_N {
        return Err(OracleScaleExceeded(p.n()));
    }
    let mut visited = HashSet::new();
    let mut stack = vec![Position::START];
    while let Some(at) = stack.pop() {
        if p.is_win(at) {
            return Ok(true);
        }
        if !visited.insert(at) {
            continue;
        }
        for m in p.legal_moves(at).expect("non-goal positions have a move list") {
            if !visited.contains(&m.to) {
                stack.push(m.to);
            }
        }
    }
    Ok(false)
}

/// Seeded random walk: picks uniformly among the legal moves at every step and
/// returns the choices made if the goal is reached within `max_steps` jumps.
pub fn simulate_nondeterministic(p: &Puzzle, seed: u64, max_steps: usize) -> Option<Certificate> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut at = Position::START;
    let mut steps = Vec::new();
    for _ in 0..max_steps {
        let moves = p.legal_moves(at).ok()?;
        let m = moves.choose(&mut rng)?;
        steps.push(m.direction);
        at = m.to;
        if p.is_win(at) {
            return Some(Certificate(steps));
        }
    }
    None
}
