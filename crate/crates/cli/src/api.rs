//! JSON bodies shared by the HTTP service and `solve --json`.

use serde::{Deserialize, Serialize};

use purgatory_core::reduction::ReductionTrace;
use purgatory_core::solver::SolveResult;
use purgatory_core::Move;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveResponse {
    pub solvable: bool,
    pub path: Option<Vec<usize>>,
    pub certificate: Option<String>,
}

impl From<&SolveResult> for SolveResponse {
    fn from(r: &SolveResult) -> Self {
        SolveResponse {
            solvable: r.solvable,
            path: r.path.as_ref().map(|p| p.iter().map(|p| p.get()).collect()),
            certificate: r.certificate.as_ref().map(ToString::to_string),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct ValuesRequest {
    pub values: Vec<i64>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct MovesRequest {
    pub values: Vec<i64>,
    pub position: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveBody {
    pub dir: String,
    pub to: usize,
}

impl From<&Move> for MoveBody {
    fn from(m: &Move) -> Self {
        MoveBody { dir: m.direction.as_char().to_string(), to: m.to.get() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MovesResponse {
    pub moves: Vec<MoveBody>,
    /// Whether one of the moves lands on the goal.
    pub win: bool,
}

/// Exactly one of `path` and `certificate` must be given.
#[derive(Debug, Clone, Deserialize)]
pub struct VerifyRequest {
    pub values: Vec<i64>,
    pub path: Option<Vec<usize>>,
    pub certificate: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyResponse {
    pub valid: bool,
    pub reason: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct ReduceRequest {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    pub s: usize,
    pub t: usize,
    #[serde(default)]
    pub paper_constants: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReduceResponse {
    pub values: Vec<u64>,
    pub trace: ReductionTrace,
}

#[derive(Debug, Clone, Deserialize)]
pub struct PuzzleQuery {
    pub n: usize,
    #[serde(default = "default_true")]
    pub solvable: bool,
    #[serde(default)]
    pub seed: u64,
}

fn default_true() -> bool {
    true
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PuzzleResponse {
    pub values: Vec<u64>,
    pub n: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ErrorBody {
    pub error: String,
}
