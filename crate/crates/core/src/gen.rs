//! Reproducible puzzle generators and the square-spiral layout.

use std::collections::HashSet;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::puzzle::Puzzle;
use crate::solver::solve;

/// Fills tried by the unsolvable generator before giving up.
pub const UNSOLVABLE_RETRIES: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("puzzle size must be at least 1")]
    EmptyPuzzle,
    #[error("no unsolvable {n}-cell puzzle found in {tries} tries")]
    GenerationFailed { n: usize, tries: usize },
}

/// Deterministic per `(n, solvable, seed)`.
///
/// Solvable puzzles carry a planted forward chain `1 = p0 < p1 < ... < pk`
/// ending with a jump to `n + 1`; the remaining cells are uniform in `1..=n`.
/// Unsolvable puzzles are uniform fills rejected by the solver until one has
/// no solution.
pub fn gen_puzzle(n: usize, solvable: bool, seed: u64) -> Result<Puzzle, GenError> {
    if n == 0 {
        return Err(GenError::EmptyPuzzle);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if solvable {
        return Ok(planted(n, &mut rng));
    }
    for _ in 0..UNSOLVABLE_RETRIES {
        let p = uniform_fill(n, &mut rng);
        if !solve(&p).solvable {
            return Ok(p);
        }
    }
    Err(GenError::GenerationFailed { n, tries: UNSOLVABLE_RETRIES })
}

fn uniform_fill(n: usize, rng: &mut ChaCha8Rng) -> Puzzle {
    Puzzle::new((0..n).map(|_| rng.gen_range(1..=n as u64)).collect()).expect("values in 1..=n")
}

fn planted(n: usize, rng: &mut ChaCha8Rng) -> Puzzle {
    let mut values: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=n as u64)).collect();
    // about 2 sqrt(n) intermediate stops keeps jumps long on big boards
    let max_stops = (n - 1).min(2 * isqrt(n) + 1);
    let stops = rng.gen_range(0..=max_stops);
    let mut chain: Vec<usize> = index::sample(rng, n - 1, stops).into_iter().map(|i| i + 2).collect();
    chain.sort_unstable();
    let mut at = 1;
    for next in chain.into_iter().chain(std::iter::once(n + 1)) {
        values[at - 1] = (next - at) as u64;
        at = next;
    }
    Puzzle::new(values).expect("values are positive")
}

fn isqrt(n: usize) -> usize {
    let mut r = (n as f64).sqrt() as usize;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Grid coordinates for positions `1..=n`, walked as a square spiral.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpiralLayout {
    pub coords: Vec<(i64, i64)>,
}

impl SpiralLayout {
    /// Smallest and largest `x` and `y`, as `((min_x, min_y), (max_x, max_y))`.
    pub fn bounds(&self) -> ((i64, i64), (i64, i64)) {
        let xs = self.coords.iter().map(|c| c.0);
        let ys = self.coords.iter().map(|c| c.1);
        (
            (xs.clone().min().unwrap_or(0), ys.clone().min().unwrap_or(0)),
            (xs.max().unwrap_or(0), ys.max().unwrap_or(0)),
        )
    }
}

/// Centre-out, counterclockwise spiral: start at the origin, step `+x`, and
/// from then on turn left whenever the cell to the left is free.
pub fn spiral_layout(n: usize) -> SpiralLayout {
    let mut coords = Vec::with_capacity(n);
    let mut taken = HashSet::with_capacity(n);
    let (mut x, mut y) = (0i64, 0i64);
    let (mut dx, mut dy) = (1i64, 0i64);
    for k in 0..n {
        coords.push((x, y));
        taken.insert((x, y));
        if k == 0 {
            x += dx;
            continue;
        }
        let (lx, ly) = (-dy, dx);
        if !taken.contains(&(x + lx, y + ly)) {
            (dx, dy) = (lx, ly);
        }
        x += dx;
        y += dy;
    }
    SpiralLayout { coords }
}
