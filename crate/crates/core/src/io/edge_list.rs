use std::io::{BufRead, Write};

use super::{parse_weight, LabelMap, ParseError, ParseOptions, ParsedGraph, MAX_DECLARED_VERTICES};
use crate::graph::{Edge, Graph};

/// Parses `u v` / `u v w` lines.
///
/// Tokens are separated by whitespace or commas. Lines starting with `%` or
/// `#` are comments, except that a `vertices: N` comment (as written by
/// [`write_edge_list`]) pre-registers labels `0..N` so that isolated
/// vertices and id order survive a round trip.
pub fn parse_edge_list<R: BufRead>(reader: R, options: &ParseOptions) -> Result<ParsedGraph, ParseError> {
    let mut labels = LabelMap::new();
    let mut edges = Vec::new();
    let mut skipped_self_loops = 0;

    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix(['%', '#']) {
            if let Some(n) = vertex_directive(comment) {
                if !labels.is_empty() || !edges.is_empty() {
                    return Err(ParseError::syntax(
                        lineno,
                        "vertex count directive must precede all edges",
                    ));
                }
                let n = n.map_err(|m| ParseError::syntax(lineno, m))?;
                if n > MAX_DECLARED_VERTICES {
                    return Err(ParseError::TooManyVertices { line: lineno, count: n });
                }
                labels = LabelMap::identity(n);
            }
            continue;
        }

        let tokens: Vec<&str> = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .collect();
        let (u, v, w) = match tokens[..] {
            [u, v] => (u, v, options.default_capacity),
            [u, v, w] => (u, v, parse_weight(w, lineno)?),
            _ => {
                return Err(ParseError::syntax(
                    lineno,
                    format!("expected 2 or 3 fields, found {}", tokens.len()),
                ))
            }
        };
        if u == v {
            skipped_self_loops += 1;
            continue;
        }
        let (u, v) = (labels.intern(u), labels.intern(v));
        edges.push(Edge::new(u, v, w));
        if !options.directed {
            edges.push(Edge::new(v, u, w));
        }
    }

    if labels.is_empty() {
        return Err(ParseError::NoVertices);
    }
    Ok(ParsedGraph {
        graph: Graph::from_checked_edges(labels.len(), edges),
        labels,
        skipped_self_loops,
    })
}

/// `Some(Ok(n))` for a `vertices: N` / `vertices N` comment body.
fn vertex_directive(comment: &str) -> Option<Result<usize, String>> {
    let rest = comment.trim().strip_prefix("vertices")?;
    let rest = rest.strip_prefix(':').unwrap_or(rest).trim();
    Some(match rest.parse::<usize>() {
        Ok(0) => Err("vertex count must be positive".to_string()),
        Ok(n) => Ok(n),
        Err(_) => Err(format!("invalid vertex count '{rest}'")),
    })
}

/// Writes `g` as a canonical directed edge list with dense 0-based labels.
///
/// Capacities are printed in shortest round-trip form, so parsing the output
/// reproduces `g` exactly.
pub fn write_edge_list<W: Write>(g: &Graph, mut out: W) -> std::io::Result<()> {
    writeln!(out, "% directed edge list: src dst capacity")?;
    writeln!(out, "% vertices: {}", g.vertex_count())?;
    for e in g.edges() {
        writeln!(out, "{} {} {}", e.src, e.dst, e.capacity)?;
    }
    out.flush()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maxflow::edmonds_karp;

    fn parse(text: &str, options: ParseOptions) -> Result<ParsedGraph, ParseError> {
        parse_edge_list(text.as_bytes(), &options)
    }

    #[test]
    fn plain_directed_list() {
        let p = parse("1 2\n2 3\n", ParseOptions::default()).unwrap();
        assert_eq!(p.graph.vertex_count(), 3);
        assert_eq!(p.graph.edge_count(), 2);
        assert!(p.graph.edges().iter().all(|e| e.capacity == 1.0));
        assert_eq!(p.labels.id("3"), Some(2));
    }

    #[test]
    fn comments_and_weights() {
        let p = parse("% comment\n1 2 3.5\n", ParseOptions::default()).unwrap();
        assert_eq!(p.graph.edges(), &[Edge::new(0, 1, 3.5)]);
    }

    #[test]
    fn duplicates_become_parallel_edges() {
        let p = parse("1 2\n1 2\n", ParseOptions::default()).unwrap();
        assert_eq!(p.graph.edge_count(), 2);
        let merged = Graph::new(2, [(0, 1, 2.0)]).unwrap();
        let (s, t) = (p.labels.id("1").unwrap(), p.labels.id("2").unwrap());
        assert_eq!(
            edmonds_karp(&p.graph, s, t).unwrap().value,
            edmonds_karp(&merged, 0, 1).unwrap().value
        );
        assert_eq!(edmonds_karp(&p.graph, s, t).unwrap().value, 2.0);
    }

    #[test]
    fn undirected_emits_both_arcs() {
        let p = parse("a b 2\n", ParseOptions::undirected()).unwrap();
        assert_eq!(p.graph.edges(), &[Edge::new(0, 1, 2.0), Edge::new(1, 0, 2.0)]);
    }

    #[test]
    fn self_loops_are_skipped_and_counted() {
        let p = parse("1 1\n1 2\n2 2 5\n", ParseOptions::default()).unwrap();
        assert_eq!(p.skipped_self_loops, 2);
        assert_eq!(p.graph.edge_count(), 1);
    }

    #[test]
    fn zero_weights_are_kept() {
        let p = parse("1 2 0\n", ParseOptions::default()).unwrap();
        assert_eq!(p.graph.edges(), &[Edge::new(0, 1, 0.0)]);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse("1 2\n% c\n2 3 abc\n", ParseOptions::default()).unwrap_err();
        assert_eq!(e.line(), Some(3));
        let e = parse("1 2 -4\n", ParseOptions::default()).unwrap_err();
        assert!(matches!(e, ParseError::NegativeWeight { line: 1, .. }));
        let e = parse("1\n", ParseOptions::default()).unwrap_err();
        assert_eq!(e.line(), Some(1));
        let e = parse("1 2 3 4\n", ParseOptions::default()).unwrap_err();
        assert_eq!(e.line(), Some(1));
        assert!(matches!(
            parse("% nothing\n\n", ParseOptions::default()),
            Err(ParseError::NoVertices)
        ));
    }

    #[test]
    fn whitespace_and_line_endings_do_not_matter() {
        let a = parse("1 2 1.5\n2 3\n", ParseOptions::default()).unwrap();
        let b = parse("# hi\r\n1\t2   1.5  \r\n\r\n% mid\r\n2,3\r\n", ParseOptions::default()).unwrap();
        assert_eq!(a.graph, b.graph);
        assert_eq!(a.labels, b.labels);
    }

    #[test]
    fn vertex_directive_preserves_isolated_vertices() {
        let p = parse("% vertices: 4\n2 0 1\n", ParseOptions::default()).unwrap();
        assert_eq!(p.graph.vertex_count(), 4);
        assert_eq!(p.graph.edges(), &[Edge::new(2, 0, 1.0)]);
        assert!(parse("1 2\n% vertices: 4\n", ParseOptions::default()).is_err());
        assert!(parse("% vertices: zero\n", ParseOptions::default()).is_err());
        assert!(matches!(
            parse("% vertices: 99999999999\n", ParseOptions::default()),
            Err(ParseError::TooManyVertices { line: 1, .. })
        ));
    }

    #[test]
    fn canonical_writer_round_trips() {
        let g = Graph::new(5, [(3, 1, 0.1), (0, 4, 2.0), (3, 1, 1e-300), (1, 0, 7.25)]).unwrap();
        let mut buf = Vec::new();
        write_edge_list(&g, &mut buf).unwrap();
        let p = parse_edge_list(buf.as_slice(), &ParseOptions::default()).unwrap();
        assert_eq!(p.graph, g);
    }
}
