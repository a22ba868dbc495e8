//! Cells, positions and legal jumps.

use std::fmt;
use std::str::FromStr;

use arrayvec::ArrayVec;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PuzzleError {
    #[error("puzzle must contain at least one value")]
    EmptyList,
    /// 1-indexed position of the offending value.
    #[error("value at position {0} is not positive")]
    NonPositiveValue(usize),
    #[error("position {position} is outside 1..={goal}")]
    PositionOutOfRange { position: usize, goal: usize },
    #[error("no move is possible from the goal position")]
    AtGoal,
    #[error("illegal move {direction:?} from position {from}")]
    IllegalMove { from: usize, direction: Direction },
}

/// A 1-indexed position. `n + 1` is the goal of an `n`-cell puzzle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct Position(usize);

impl Position {
    pub const START: Position = Position(1);

    /// # Panics
    ///
    /// Panics if `index` is zero.
    pub const fn new(index: usize) -> Self {
        assert!(index >= 1, "positions are 1-indexed");
        Position(index)
    }

    pub const fn get(self) -> usize {
        self.0
    }
}

impl TryFrom<usize> for Position {
    type Error = &'static str;

    fn try_from(index: usize) -> Result<Self, Self::Error> {
        if index == 0 {
            Err("positions are 1-indexed")
        } else {
            Ok(Position(index))
        }
    }
}

impl From<Position> for usize {
    fn from(p: Position) -> usize {
        p.0
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    #[serde(rename = "B")]
    Backward,
    #[serde(rename = "F")]
    Forward,
}

impl Direction {
    pub const ALL: [Direction; 2] = [Direction::Backward, Direction::Forward];

    pub fn as_char(self) -> char {
        match self {
            Direction::Backward => 'B',
            Direction::Forward => 'F',
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Landing square for a jump of length `value` from `from` in an `n`-cell
/// puzzle, or `None` when it leaves `1..=n+1`.
///
/// This is the whole move rule; everything else is built on it.
#[inline]
pub fn jump_target(value: u64, from: usize, n: usize, direction: Direction) -> Option<usize> {
    let value = usize::try_from(value).ok()?;
    match direction {
        Direction::Backward => from.checked_sub(value).filter(|&t| t >= 1),
        Direction::Forward => from.checked_add(value).filter(|&t| t <= n + 1),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Move {
    pub direction: Direction,
    pub to: Position,
}

/// Legal moves from one cell, Backward first.
pub type Moves = ArrayVec<Move, 2>;

/// An immutable list of positive cell values.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Puzzle {
    values: Vec<u64>,
}

impl Puzzle {
    pub fn new(values: Vec<u64>) -> Result<Self, PuzzleError> {
        if values.is_empty() {
            return Err(PuzzleError::EmptyList);
        }
        if let Some(i) = values.iter().position(|&v| v == 0) {
            return Err(PuzzleError::NonPositiveValue(i + 1));
        }
        Ok(Puzzle { values })
    }

    /// Builds a puzzle from signed input, rejecting zero and negative cells.
    pub fn from_signed(values: &[i64]) -> Result<Self, PuzzleError> {
        if values.is_empty() {
            return Err(PuzzleError::EmptyList);
        }
        let values = values
            .iter()
            .enumerate()
            .map(|(i, &v)| u64::try_from(v).ok().filter(|&v| v > 0).ok_or(PuzzleError::NonPositiveValue(i + 1)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Puzzle { values })
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<u64> {
        self.values
    }

    pub fn goal(&self) -> Position {
        Position(self.n() + 1)
    }

    /// Checked conversion of a raw 1-indexed position.
    pub fn position(&self, index: usize) -> Result<Position, PuzzleError> {
        if (1..=self.n() + 1).contains(&index) {
            Ok(Position(index))
        } else {
            Err(PuzzleError::PositionOutOfRange { position: index, goal: self.n() + 1 })
        }
    }

    /// Value stored at a cell; `None` for the goal or beyond.
    pub fn value_at(&self, pos: Position) -> Option<u64> {
        self.values.get(pos.0 - 1).copied()
    }

    pub fn is_win(&self, pos: Position) -> bool {
        pos.0 == self.n() + 1
    }

    fn cell(&self, pos: Position) -> Result<u64, PuzzleError> {
        let goal = self.n() + 1;
        match pos.0 {
            p if p == goal => Err(PuzzleError::AtGoal),
            p if p > goal => Err(PuzzleError::PositionOutOfRange { position: p, goal }),
            p => Ok(self.values[p - 1]),
        }
    }

    pub fn legal_moves(&self, pos: Position) -> Result<Moves, PuzzleError> {
        let value = self.cell(pos)?;
        let mut moves = Moves::new();
        for direction in Direction::ALL {
            if let Some(to) = jump_target(value, pos.0, self.n(), direction) {
                moves.push(Move { direction, to: Position(to) });
            }
        }
        Ok(moves)
    }

    pub fn apply(&self, pos: Position, direction: Direction) -> Result<Position, PuzzleError> {
        let value = self.cell(pos)?;
        jump_target(value, pos.0, self.n(), direction)
            .map(Position)
            .ok_or(PuzzleError::IllegalMove { from: pos.0, direction })
    }
}

/// The sequence of Forward/Backward choices that witnesses a solution.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Certificate(pub Vec<Direction>);

impl Certificate {
    pub fn steps(&self) -> &[Direction] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromIterator<Direction> for Certificate {
    fn from_iter<I: IntoIterator<Item = Direction>>(iter: I) -> Self {
        Certificate(iter.into_iter().collect())
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|d| write!(f, "{d}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid certificate character {found:?} at offset {offset}; expected F or B")]
pub struct ParseCertificateError {
    pub offset: usize,
    pub found: char,
}

impl FromStr for Certificate {
    type Err = ParseCertificateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.trim()
            .char_indices()
            .map(|(offset, c)| match c {
                'F' | 'f' => Ok(Direction::Forward),
                'B' | 'b' => Ok(Direction::Backward),
                found => Err(ParseCertificateError { offset, found }),
            })
            .collect()
    }
}

impl Serialize for Certificate {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Certificate {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
