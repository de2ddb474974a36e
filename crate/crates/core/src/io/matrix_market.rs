use std::io::BufRead;

use super::{parse_weight, LabelMap, ParseError, ParseOptions, ParsedGraph, MAX_DECLARED_VERTICES};
use crate::graph::{Edge, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Field {
    Real,
    Integer,
    Pattern,
}

/// Parses a MatrixMarket `coordinate` file as an adjacency matrix.
///
/// Vertex `i` of the file (1-based) becomes id `i - 1` with label `"i"`.
/// `symmetric` files, and any file parsed with `directed = false`, yield
/// both arcs per entry. Diagonal entries are skipped and counted.
pub fn parse_matrix_market<R: BufRead>(reader: R, options: &ParseOptions) -> Result<ParsedGraph, ParseError> {
    let mut lines = reader.lines().enumerate().map(|(i, l)| (i + 1, l));

    let (_, header) = lines
        .next()
        .ok_or_else(|| ParseError::syntax(1, "missing MatrixMarket header"))?;
    let header = header?;
    let (field, symmetric) = parse_header(&header)?;
    let both_ways = symmetric || !options.directed;

    let mut dims = None;
    let mut last_line = 1;
    for (lineno, line) in lines.by_ref() {
        last_line = lineno;
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        dims = Some(parse_dimensions(line, lineno)?);
        break;
    }
    let (n, nnz) = dims.ok_or_else(|| ParseError::syntax(last_line + 1, "missing dimension line"))?;

    let mut edges = Vec::with_capacity(nnz.min(1 << 20) * if both_ways { 2 } else { 1 });
    let mut seen = 0usize;
    let mut skipped_self_loops = 0;
    for (lineno, line) in lines {
        last_line = lineno;
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        seen += 1;
        if seen > nnz {
            return Err(ParseError::syntax(
                lineno,
                format!("entry count mismatch: more than the declared {nnz} entries"),
            ));
        }

        let tokens: Vec<&str> = line.split_whitespace().collect();
        let (i, j, w) = match (field, &tokens[..]) {
            (Field::Pattern, [i, j]) => (*i, *j, options.default_capacity),
            (Field::Real, [i, j, w]) => (*i, *j, parse_weight(w, lineno)?),
            (Field::Integer, [i, j, w]) => {
                let w: i64 = w
                    .parse()
                    .map_err(|_| ParseError::syntax(lineno, format!("non-integer weight '{w}'")))?;
                (*i, *j, parse_weight(&w.to_string(), lineno)?)
            }
            _ => {
                let want = if field == Field::Pattern { 2 } else { 3 };
                return Err(ParseError::syntax(
                    lineno,
                    format!("expected {want} fields, found {}", tokens.len()),
                ));
            }
        };
        let u = parse_index(i, n, lineno)?;
        let v = parse_index(j, n, lineno)?;
        if u == v {
            skipped_self_loops += 1;
            continue;
        }
        edges.push(Edge::new(u, v, w));
        if both_ways {
            edges.push(Edge::new(v, u, w));
        }
    }
    if seen != nnz {
        return Err(ParseError::syntax(
            last_line + 1,
            format!("entry count mismatch: declared {nnz}, found {seen}"),
        ));
    }

    Ok(ParsedGraph {
        graph: Graph::from_checked_edges(n, edges),
        labels: LabelMap::dense(n, 1),
        skipped_self_loops,
    })
}

fn parse_header(line: &str) -> Result<(Field, bool), ParseError> {
    let bad = |msg: &str| ParseError::syntax(1, format!("malformed header: {msg}"));
    let tokens: Vec<String> = line.split_whitespace().map(str::to_ascii_lowercase).collect();
    let [banner, object, format, field, symmetry] = &tokens[..] else {
        return Err(bad("expected '%%MatrixMarket matrix coordinate <field> <symmetry>'"));
    };
    if banner != "%%matrixmarket" {
        return Err(bad("missing %%MatrixMarket banner"));
    }
    if object != "matrix" {
        return Err(bad("object must be 'matrix'"));
    }
    if format != "coordinate" {
        return Err(bad("only coordinate format is supported"));
    }
    let field = match field.as_str() {
        "real" => Field::Real,
        "integer" => Field::Integer,
        "pattern" => Field::Pattern,
        other => return Err(bad(&format!("unsupported field '{other}'"))),
    };
    let symmetric = match symmetry.as_str() {
        "general" => false,
        "symmetric" => true,
        other => return Err(bad(&format!("unsupported symmetry '{other}'"))),
    };
    Ok((field, symmetric))
}

fn parse_dimensions(line: &str, lineno: usize) -> Result<(usize, usize), ParseError> {
    let nums: Vec<usize> = line
        .split_whitespace()
        .map(str::parse)
        .collect::<Result<_, _>>()
        .map_err(|_| ParseError::syntax(lineno, "dimension line must hold three non-negative integers"))?;
    let [rows, cols, nnz] = nums[..] else {
        return Err(ParseError::syntax(lineno, "dimension line must be 'rows cols nnz'"));
    };
    if rows != cols {
        return Err(ParseError::syntax(
            lineno,
            format!("adjacency matrix must be square, got {rows}x{cols}"),
        ));
    }
    if rows == 0 {
        return Err(ParseError::NoVertices);
    }
    if rows > MAX_DECLARED_VERTICES {
        return Err(ParseError::TooManyVertices {
            line: lineno,
            count: rows,
        });
    }
    Ok((rows, nnz))
}

fn parse_index(token: &str, n: usize, lineno: usize) -> Result<usize, ParseError> {
    match token.parse::<usize>() {
        Ok(i) if (1..=n).contains(&i) => Ok(i - 1),
        Ok(i) => Err(ParseError::syntax(
            lineno,
            format!("index {i} out of declared range 1..={n}"),
        )),
        Err(_) => Err(ParseError::syntax(lineno, format!("invalid index '{token}'"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<ParsedGraph, ParseError> {
        parse_matrix_market(text.as_bytes(), &ParseOptions::default())
    }

    #[test]
    fn pattern_general() {
        let p = parse("%%MatrixMarket matrix coordinate pattern general\n3 3 2\n1 2\n2 3\n").unwrap();
        assert_eq!(p.graph.vertex_count(), 3);
        assert_eq!(p.graph.edges(), &[Edge::new(0, 1, 1.0), Edge::new(1, 2, 1.0)]);
        assert_eq!(p.labels.id("1"), Some(0));
        assert_eq!(p.labels.label(2).as_deref(), Some("3"));
    }

    #[test]
    fn real_symmetric() {
        let p = parse("%%MatrixMarket matrix coordinate real symmetric\n% c\n2 2 1\n1 2 0.5\n").unwrap();
        assert_eq!(p.graph.edges(), &[Edge::new(0, 1, 0.5), Edge::new(1, 0, 0.5)]);
    }

    #[test]
    fn integer_field_and_case_insensitive_header() {
        let p = parse("%%MatrixMarket MATRIX Coordinate INTEGER General\n2 2 1\n2 1 7\n").unwrap();
        assert_eq!(p.graph.edges(), &[Edge::new(1, 0, 7.0)]);
        let e = parse("%%MatrixMarket matrix coordinate integer general\n2 2 1\n2 1 7.5\n").unwrap_err();
        assert_eq!(e.line(), Some(3));
    }

    #[test]
    fn undirected_option_doubles_general_entries() {
        let text = "%%MatrixMarket matrix coordinate pattern general\n2 2 1\n1 2\n";
        let p = parse_matrix_market(text.as_bytes(), &ParseOptions::undirected()).unwrap();
        assert_eq!(p.graph.edge_count(), 2);
    }

    #[test]
    fn diagonal_entries_are_skipped() {
        let p = parse("%%MatrixMarket matrix coordinate pattern symmetric\n3 3 2\n1 1\n3 1\n").unwrap();
        assert_eq!(p.skipped_self_loops, 1);
        assert_eq!(p.graph.edge_count(), 2);
    }

    #[test]
    fn header_errors() {
        for bad in [
            "",
            "%MatrixMarket matrix coordinate real general\n1 1 0\n",
            "%%MatrixMarket matrix array real general\n1 1\n",
            "%%MatrixMarket matrix coordinate complex general\n1 1 0\n",
            "%%MatrixMarket matrix coordinate real hermitian\n1 1 0\n",
            "%%MatrixMarket vector coordinate real general\n1 1 0\n",
        ] {
            let err = parse(bad).unwrap_err();
            assert_eq!(err.line(), Some(1), "{bad:?}: {err}");
        }
    }

    #[test]
    fn body_errors_carry_line_numbers() {
        let head = "%%MatrixMarket matrix coordinate pattern general\n";
        let cases = [
            ("2 3 1\n1 2\n", 2),
            ("2 2\n", 2),
            ("% only comments\n", 3),
            ("2 2 2\n1 2\n", 4),
            ("2 2 1\n1 2\n2 1\n", 4),
            ("2 2 1\n1 3\n", 3),
            ("2 2 1\n0 1\n", 3),
            ("2 2 1\n1 x\n", 3),
            ("2 2 1\n1 2 3\n", 3),
        ];
        for (body, line) in cases {
            let err = parse(&format!("{head}{body}")).unwrap_err();
            assert_eq!(err.line(), Some(line), "{body:?}: {err}");
        }
        assert!(matches!(parse(&format!("{head}0 0 0\n")), Err(ParseError::NoVertices)));
        assert!(matches!(
            parse(&format!("{head}999999999 999999999 0\n")),
            Err(ParseError::TooManyVertices { line: 2, .. })
        ));
    }

    #[test]
    fn isolated_vertices_are_kept() {
        let p = parse("%%MatrixMarket matrix coordinate pattern general\n5 5 1\n1 2\n").unwrap();
        assert_eq!(p.graph.vertex_count(), 5);
    }

    #[test]
    fn crlf_and_trailing_whitespace() {
        let p = parse("%%MatrixMarket matrix coordinate real general\r\n2 2 1  \r\n1 2 1.5 \r\n").unwrap();
        assert_eq!(p.graph.edges(), &[Edge::new(0, 1, 1.5)]);
    }
}
