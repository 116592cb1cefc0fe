//! Plain-text edge lists.
//!
//! One edge per line as two whitespace-separated decimal ids. Lines starting
//! with `#` and blank lines are ignored, except for an optional
//! `# vertices N` header which fixes the vertex count (so isolated trailing
//! vertices survive a round trip). Without it, `n = 1 + max id`.

use std::collections::HashSet;

use super::{Graph, GraphBuilder};
use crate::{Error, Result};

const VERTICES_DIRECTIVE: &str = "vertices";

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut declared: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    let mut seen = HashSet::new();
    let mut max_id: Option<usize> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            let mut words = comment.split_whitespace();
            if words.next() == Some(VERTICES_DIRECTIVE) {
                let n = words
                    .next()
                    .and_then(|w| w.parse::<usize>().ok())
                    .filter(|_| words.next().is_none())
                    .ok_or_else(|| Error::Parse {
                        line: line_no,
                        message: format!("expected `# {VERTICES_DIRECTIVE} N`"),
                    })?;
                if declared.is_some() {
                    return Err(Error::Parse {
                        line: line_no,
                        message: "vertex count declared twice".into(),
                    });
                }
                declared = Some((n, line_no));
            }
            continue;
        }
        let mut fields = line.split_whitespace();
        let (a, b) = match (fields.next(), fields.next(), fields.next()) {
            (Some(a), Some(b), None) => (parse_id(a, line_no)?, parse_id(b, line_no)?),
            _ => {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected two vertex ids, found `{line}`"),
                })
            }
        };
        if a == b {
            return Err(Error::Validation { line: line_no, message: format!("self-loop at vertex {a}") });
        }
        if !seen.insert((a.min(b), a.max(b))) {
            return Err(Error::Validation { line: line_no, message: format!("duplicate edge {a} {b}") });
        }
        max_id = Some(max_id.map_or(a.max(b), |m| m.max(a).max(b)));
        edges.push((a, b, line_no));
    }

    let n = match (declared, max_id) {
        (Some((n, line)), Some(m)) if n <= m => {
            return Err(Error::Validation {
                line,
                message: format!("declared {n} vertices but edges reference vertex {m}"),
            })
        }
        (Some((n, _)), _) => n,
        (None, Some(m)) => m + 1,
        (None, None) => return Err(Error::input("edge list has no edges and no vertex count")),
    };
    let mut b = GraphBuilder::new(n)?;
    for (a, c, _) in edges {
        b.insert(a, c);
    }
    Ok(b.build())
}

fn parse_id(s: &str, line: usize) -> Result<usize> {
    if !s.bytes().all(|c| c.is_ascii_digit()) {
        return Err(Error::Parse { line, message: format!("`{s}` is not a non-negative integer") });
    }
    s.parse().map_err(|_| Error::Parse { line, message: format!("vertex id `{s}` out of range") })
}

/// Canonical emission: vertex-count header, then edges sorted
/// lexicographically as `low high`.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("# {VERTICES_DIRECTIVE} {}\n", g.vertex_count());
    for (a, b) in g.edges() {
        out.push_str(&format!("{a} {b}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netgen::make_hypercube;

    #[test]
    fn reads_plain_edges() {
        let g = parse_edge_list("0 1\n1 2").unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (3, 2));
        let g = parse_edge_list("# comment\n0 1").unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 1));
        let g = parse_edge_list("\n  3\t1 \n\n").unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (4, 1));
    }

    #[test]
    fn rejects_self_loops_and_duplicates() {
        assert!(matches!(parse_edge_list("0 0"), Err(Error::Validation { line: 1, .. })));
        assert!(matches!(parse_edge_list("0 1\n1 0"), Err(Error::Validation { line: 2, .. })));
    }

    #[test]
    fn malformed_lines_report_line_number() {
        for bad in ["0 1\n1", "0 1\n1 2 3", "0 1\n# x\n-1 2", "0 a", "0 1.5"] {
            match parse_edge_list(bad) {
                Err(Error::Parse { line, .. }) => assert!(line >= 1, "{bad}"),
                other => panic!("{bad}: {other:?}"),
            }
        }
        assert!(matches!(parse_edge_list("x y\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_edge_list("0 1\n0 2\nfoo"), Err(Error::Parse { line: 3, .. })));
    }

    #[test]
    fn vertex_header() {
        let g = parse_edge_list("# vertices 5\n0 1\n").unwrap();
        assert_eq!(g.vertex_count(), 5);
        let g = parse_edge_list("# vertices 1\n").unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (1, 0));
        assert!(parse_edge_list("# vertices 2\n0 2\n").is_err());
        assert!(parse_edge_list("# vertices x\n").is_err());
        assert!(parse_edge_list("").is_err());
    }

    #[test]
    fn emission_is_canonical() {
        let g = parse_edge_list("2 1\n0 2\n").unwrap();
        assert_eq!(to_edge_list(&g), "# vertices 3\n0 2\n1 2\n");
        let g = make_hypercube(0).unwrap();
        assert_eq!(to_edge_list(&g), "# vertices 1\n");
        let h = make_hypercube(4).unwrap();
        assert_eq!(parse_edge_list(&to_edge_list(&h)).unwrap(), h);
    }
}
