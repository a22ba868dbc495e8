//! Text formats.
//!
//! Puzzle file: any number of `#` comment lines; every other token is a
//! decimal cell value `>= 1`, in position order.
//!
//! Graph file: comment lines as above, a header line `n m s t`, then exactly
//! `m` lines `u v`, each a directed edge `u -> v` with labels in `1..=n`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{DirectedGraph, GraphError, PathInstance};
use crate::puzzle::{Puzzle, PuzzleError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: expected a positive integer, found {token:?}")]
    BadToken { line: usize, token: String },
    #[error("line {line}: value {token} is not positive")]
    NonPositive { line: usize, token: String },
    #[error("line {line}: value {token} exceeds the 64-bit cell limit")]
    TooLarge { line: usize, token: String },
    #[error("puzzle file contains no values")]
    Empty,
    #[error("missing graph header `n m s t`")]
    MissingHeader,
    #[error("line {line}: header must be `n m s t`")]
    BadHeader { line: usize },
    #[error("line {line}: edge line must be `u v`")]
    BadEdge { line: usize },
    #[error("header announces {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Puzzle(#[from] PuzzleError),
}

/// Non-comment lines with their 1-indexed line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_value(line: usize, token: &str) -> Result<u64, FormatError> {
    match token.parse::<u64>() {
        Ok(0) => Err(FormatError::NonPositive { line, token: token.into() }),
        Ok(v) => Ok(v),
        Err(_) => {
            let digits = token.strip_prefix(['-', '+']).unwrap_or(token);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                Err(FormatError::BadToken { line, token: token.into() })
            } else if token.starts_with('-') {
                Err(FormatError::NonPositive { line, token: token.into() })
            } else {
                Err(FormatError::TooLarge { line, token: token.into() })
            }
        }
    }
}

fn parse_label(line: usize, token: &str) -> Result<usize, FormatError> {
    token.parse().map_err(|_| FormatError::BadToken { line, token: token.into() })
}

pub fn parse_puzzle(text: &str) -> Result<Puzzle, FormatError> {
    let mut values = Vec::new();
    for (line, content) in content_lines(text) {
        for token in content.split_whitespace() {
            values.push(parse_value(line, token)?);
        }
    }
    if values.is_empty() {
        return Err(FormatError::Empty);
    }
    Ok(Puzzle::new(values)?)
}

/// Values on one line, space separated, with a trailing newline.
pub fn write_puzzle(p: &Puzzle) -> String {
    let mut out = String::with_capacity(p.n() * 4);
    for (i, v) in p.values().iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        write!(out, "{v}").expect("writing to a String");
    }
    out.push('\n');
    out
}

pub fn parse_graph(text: &str) -> Result<PathInstance, FormatError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or(FormatError::MissingHeader)?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let [n, m, s, t] = fields[..] else {
        return Err(FormatError::BadHeader { line: hline });
    };
    let n = parse_label(hline, n)?;
    let m = parse_label(hline, m)?;
    let s = parse_label(hline, s)?;
    let t = parse_label(hline, t)?;

    let mut graph = DirectedGraph::new(n)?;
    let mut found = 0;
    for (line, content) in lines {
        let fields: Vec<&str> = content.split_whitespace().collect();
        let [u, v] = fields[..] else {
            return Err(FormatError::BadEdge { line });
        };
        graph.add_edge(parse_label(line, u)?, parse_label(line, v)?)?;
        found += 1;
    }
    if found != m {
        return Err(FormatError::EdgeCount { expected: m, found });
    }
    Ok(PathInstance::new(graph, s, t)?)
}

pub fn write_graph(inst: &PathInstance) -> String {
    let g = &inst.graph;
    let mut out = String::new();
    writeln!(out, "{} {} {} {}", g.n(), g.edge_count(), inst.s, inst.t).expect("writing to a String");
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").expect("writing to a String");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn puzzle_file_with_comments() {
        let p = parse_puzzle("# worked example\n3 2 2 1\n  4 2\t1 2 3\n# end\n").unwrap();
        assert_eq!(p.values(), &[3, 2, 2, 1, 4, 2, 1, 2, 3]);
        assert_eq!(write_puzzle(&p), "3 2 2 1 4 2 1 2 3\n");
    }

    #[test]
    fn puzzle_file_errors() {
        assert_eq!(parse_puzzle("# nothing\n\n"), Err(FormatError::Empty));
        assert_eq!(parse_puzzle("3 0 2"), Err(FormatError::NonPositive { line: 1, token: "0".into() }));
        assert_eq!(parse_puzzle("1\n-4"), Err(FormatError::NonPositive { line: 2, token: "-4".into() }));
        assert_eq!(parse_puzzle("1 x"), Err(FormatError::BadToken { line: 1, token: "x".into() }));
        assert_eq!(
            parse_puzzle("18446744073709551616"),
            Err(FormatError::TooLarge { line: 1, token: "18446744073709551616".into() })
        );
        assert_eq!(parse_puzzle("18446744073709551615").unwrap().values(), &[u64::MAX]);
    }

    #[test]
    fn graph_file() {
        let g = parse_graph("# tiny\n3 3 1 3\n1 2\n# mid\n2 3\n1 2\n").unwrap();
        assert_eq!(g.graph.edge_count(), 2);
        assert_eq!((g.s, g.t), (1, 3));
        assert_eq!(write_graph(&g), "3 2 1 3\n1 2\n2 3\n");
    }

    #[test]
    fn graph_file_errors() {
        assert_eq!(parse_graph(""), Err(FormatError::MissingHeader));
        assert_eq!(parse_graph("3 1 1"), Err(FormatError::BadHeader { line: 1 }));
        assert_eq!(parse_graph("3 2 1 3\n1 2\n"), Err(FormatError::EdgeCount { expected: 2, found: 1 }));
        assert_eq!(parse_graph("3 1 1 3\n1 2 3\n"), Err(FormatError::BadEdge { line: 2 }));
        assert!(matches!(parse_graph("3 1 1 3\n1 4\n"), Err(FormatError::Graph(_))));
        assert!(matches!(parse_graph("3 0 1 5\n"), Err(FormatError::Graph(_))));
        assert!(matches!(parse_graph("0 0 1 1\n"), Err(FormatError::Graph(GraphError::NoVertices))));
    }

    proptest! {
        #[test]
        fn puzzle_round_trip(values in prop::collection::vec(1u64..=u64::MAX, 1..50)) {
            let p = Puzzle::new(values).unwrap();
            prop_assert_eq!(parse_puzzle(&write_puzzle(&p)).unwrap(), p);
        }

        #[test]
        fn graph_round_trip(
            n in 1usize..10,
            edges in prop::collection::vec((0usize..10, 0usize..10), 0..30),
            st in (0usize..10, 0usize..10),
        ) {
            let g = DirectedGraph::from_edges(n, edges.into_iter().map(|(u, v)| (u % n + 1, v % n + 1))).unwrap();
            let inst = PathInstance::new(g, st.0 % n + 1, st.1 % n + 1).unwrap();
            prop_assert_eq!(parse_graph(&write_graph(&inst)).unwrap(), inst);
        }
    }
}
