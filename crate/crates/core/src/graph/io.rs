//! Plain-text edge-list format.
//!
//! ```text
//! # comment lines start with '#'
//! n m
//! u v w      (m lines, 0-indexed vertices, decimal weight)
//! ```

use std::fmt::Write as _;

use thiserror::Error;

use super::digraph::{Edge, GraphError, VertexId, WeightedDigraph};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Invalid {
        line: usize,
        #[source]
        source: GraphError,
    },
    #[error("header declares {declared} edges but {found} were given")]
    EdgeCount { declared: usize, found: usize },
    #[error("missing \"n m\" header")]
    MissingHeader,
}

fn malformed(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Malformed {
        line,
        msg: msg.into(),
    }
}

/// Lines that carry content, with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub fn parse_edge_list(text: &str) -> Result<(usize, Vec<(usize, Edge)>), ParseError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    let mut it = header.split_whitespace();
    let (Some(n), Some(m), None) = (it.next(), it.next(), it.next()) else {
        return Err(malformed(hline, "expected \"n m\""));
    };
    let n: usize = n
        .parse()
        .map_err(|_| malformed(hline, format!("bad vertex count {n:?}")))?;
    let m: usize = m
        .parse()
        .map_err(|_| malformed(hline, format!("bad edge count {m:?}")))?;

    let mut edges = Vec::with_capacity(m);
    for (line, body) in lines {
        let mut it = body.split_whitespace();
        let (Some(u), Some(v), Some(w), None) = (it.next(), it.next(), it.next(), it.next()) else {
            return Err(malformed(line, "expected \"u v w\""));
        };
        let u: VertexId = u
            .parse()
            .map_err(|_| malformed(line, format!("bad vertex id {u:?}")))?;
        let v: VertexId = v
            .parse()
            .map_err(|_| malformed(line, format!("bad vertex id {v:?}")))?;
        let w: f64 = w
            .parse()
            .map_err(|_| malformed(line, format!("bad weight {w:?}")))?;
        // Validate eagerly so the error carries this line number.
        WeightedDigraph::from_edges(n, [(u, v, w)])
            .map_err(|source| ParseError::Invalid { line, source })?;
        edges.push((line, Edge { src: u, dst: v, weight: w }));
    }
    if edges.len() != m {
        return Err(ParseError::EdgeCount {
            declared: m,
            found: edges.len(),
        });
    }
    Ok((n, edges))
}

/// Parse the edge-list format. Duplicate `(u, v)` edges keep the minimum weight.
pub fn parse_graph(text: &str) -> Result<WeightedDigraph, ParseError> {
    let (n, edges) = parse_edge_list(text)?;
    WeightedDigraph::from_edges(n, edges.into_iter().map(|(_, e)| (e.src, e.dst, e.weight)))
        .map_err(|source| ParseError::Invalid { line: 0, source })
}

pub fn format_edge_list<'a>(n: usize, edges: impl ExactSizeIterator<Item = &'a Edge>) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", n, edges.len()).unwrap();
    for e in edges {
        writeln!(out, "{} {} {}", e.src, e.dst, e.weight).unwrap();
    }
    out
}

pub fn format_graph(g: &WeightedDigraph) -> String {
    format_edge_list(g.n(), g.edges().iter())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_instance() {
        let g = parse_graph("2 1\n0 1 3.5").unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.edges(), &[Edge { src: 0, dst: 1, weight: 3.5 }]);
    }

    #[test]
    fn singleton() {
        let g = parse_graph("1 0").unwrap();
        assert_eq!((g.n(), g.m()), (1, 0));
    }

    #[test]
    fn dedup_keeps_min_weight() {
        let g = parse_graph("2 2\n0 1 5\n0 1 2").unwrap();
        assert_eq!(g.edges(), &[Edge { src: 0, dst: 1, weight: 2.0 }]);
    }

    #[test]
    fn comments_and_blank_lines() {
        let g = parse_graph("# header\n3 2\n\n0 1 1\n# mid\n1 2 2\n").unwrap();
        assert_eq!(g.m(), 2);
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(
            parse_graph("2 1\n0 1"),
            Err(malformed(2, "expected \"u v w\""))
        );
        assert!(matches!(
            parse_graph("2 1\n0 x 1"),
            Err(ParseError::Malformed { line: 2, .. })
        ));
        assert_eq!(
            parse_graph("2 1\n# c\n0 5 1"),
            Err(ParseError::Invalid {
                line: 3,
                source: GraphError::VertexOutOfRange { vertex: 5, n: 2 }
            })
        );
        assert_eq!(
            parse_graph("2 1\n0 1 -2"),
            Err(ParseError::Invalid {
                line: 2,
                source: GraphError::NegativeWeight(-2.0)
            })
        );
        assert_eq!(
            parse_graph("2 1\n1 1 2"),
            Err(ParseError::Invalid {
                line: 2,
                source: GraphError::SelfLoop(1)
            })
        );
        assert_eq!(
            parse_graph("3 2\n0 1 1"),
            Err(ParseError::EdgeCount { declared: 2, found: 1 })
        );
        assert_eq!(parse_graph("# only\n"), Err(ParseError::MissingHeader));
    }

    #[test]
    fn format_round_trips() {
        let g = parse_graph("3 3\n0 1 0.1\n1 2 7\n2 0 1e-3").unwrap();
        assert_eq!(parse_graph(&format_graph(&g)).unwrap(), g);
    }
}
