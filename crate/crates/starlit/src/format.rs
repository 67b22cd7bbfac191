//! Plain-text formats for graphs, colorings, and list assignments.
//!
//! All three share the same shape: `#` starts a comment, blank lines are
//! skipped, and each payload line is a single-letter tag followed by
//! whitespace-separated integers.
//!
//! Graph: a `p <vertices> <edges>` header, then one `e <u> <v>` line per
//! edge with 0-based endpoints. Edge ids are assigned in file order.
//! Repeating an endpoint pair yields parallel edges.
//!
//! Coloring: one `c <edge_id> <color>` line per edge.
//!
//! Lists: one `l <edge_id> <color>...` line per edge.

use std::collections::BTreeSet;

use crate::colorer::ListAssignment;
use crate::error::{Error, Result};
use crate::multigraph::{EdgeId, Multigraph};
use crate::verifier::{Color, EdgeColoring};

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Payload lines with their 1-based line numbers; comments and blanks gone.
fn payload_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            None
        } else {
            Some((i + 1, line))
        }
    })
}

fn parse_fields(line_no: usize, line: &str, tag: &str) -> Result<Vec<u64>> {
    let mut parts = line.split_whitespace();
    let found = parts.next().unwrap_or("");
    if found != tag {
        return Err(parse_error(
            line_no,
            format!("expected a '{tag}' line, found '{found}'"),
        ));
    }
    parts
        .map(|p| {
            p.parse::<u64>()
                .map_err(|_| parse_error(line_no, format!("'{p}' is not a non-negative integer")))
        })
        .collect()
}

pub fn parse_graph(text: &str) -> Result<Multigraph> {
    let mut lines = payload_lines(text);
    let (header_no, header) = lines
        .next()
        .ok_or_else(|| parse_error(1, "missing 'p <vertices> <edges>' header"))?;
    let fields = parse_fields(header_no, header, "p")?;
    let [n, m] = fields[..] else {
        return Err(parse_error(
            header_no,
            format!("header needs 2 fields, found {}", fields.len()),
        ));
    };
    let mut edges = Vec::with_capacity(m as usize);
    for (line_no, line) in lines {
        let fields = parse_fields(line_no, line, "e")?;
        let [u, v] = fields[..] else {
            return Err(parse_error(
                line_no,
                format!("edge line needs 2 fields, found {}", fields.len()),
            ));
        };
        if u >= n || v >= n {
            return Err(parse_error(
                line_no,
                format!("endpoint out of range for {n} vertices"),
            ));
        }
        edges.push((u as usize, v as usize));
    }
    if edges.len() != m as usize {
        return Err(Error::Input(format!(
            "header promises {m} edges, file has {}",
            edges.len()
        )));
    }
    Multigraph::from_edges(n as usize, &edges)
}

pub fn graph_to_string(g: &Multigraph) -> String {
    let mut out = format!("p {} {}\n", g.vertex_count(), g.edge_count());
    for e in g.edge_ids() {
        let (u, v) = g.endpoints(e);
        out.push_str(&format!("e {u} {v}\n"));
    }
    out
}

/// Parses a coloring for a graph with `edge_count` edges. Every edge must
/// be colored exactly once.
pub fn parse_coloring(text: &str, edge_count: usize) -> Result<EdgeColoring> {
    let mut coloring = EdgeColoring::new(edge_count);
    for (line_no, line) in payload_lines(text) {
        let fields = parse_fields(line_no, line, "c")?;
        let [e, color] = fields[..] else {
            return Err(parse_error(
                line_no,
                format!("coloring line needs 2 fields, found {}", fields.len()),
            ));
        };
        if e as usize >= edge_count {
            return Err(parse_error(
                line_no,
                format!("edge {e} out of range for {edge_count} edges"),
            ));
        }
        let color = u32::try_from(color)
            .map_err(|_| parse_error(line_no, format!("color {color} is too large")))?;
        if coloring.get(EdgeId(e as usize)).is_some() {
            return Err(parse_error(line_no, format!("edge {e} colored twice")));
        }
        coloring.set(EdgeId(e as usize), color);
    }
    if !coloring.is_total() {
        return Err(Error::Input(format!(
            "coloring covers {} of {} edges",
            coloring.colored_count(),
            edge_count
        )));
    }
    Ok(coloring)
}

pub fn coloring_to_string(coloring: &EdgeColoring) -> String {
    let mut out = String::new();
    for (e, c) in coloring.colored() {
        out.push_str(&format!("c {e} {c}\n"));
    }
    out
}

/// Parses a list assignment for a graph with `edge_count` edges. Every edge
/// must get exactly one nonempty list.
pub fn parse_lists(text: &str, edge_count: usize) -> Result<ListAssignment> {
    let mut sets: Vec<Option<BTreeSet<Color>>> = vec![None; edge_count];
    for (line_no, line) in payload_lines(text) {
        let fields = parse_fields(line_no, line, "l")?;
        let Some((&e, colors)) = fields.split_first() else {
            return Err(parse_error(line_no, "list line needs an edge id"));
        };
        if e as usize >= edge_count {
            return Err(parse_error(
                line_no,
                format!("edge {e} out of range for {edge_count} edges"),
            ));
        }
        if colors.is_empty() {
            return Err(parse_error(line_no, format!("edge {e} has an empty list")));
        }
        if sets[e as usize].is_some() {
            return Err(parse_error(line_no, format!("edge {e} listed twice")));
        }
        let set: BTreeSet<Color> = colors
            .iter()
            .map(|&c| {
                u32::try_from(c).map_err(|_| parse_error(line_no, format!("color {c} is too large")))
            })
            .collect::<Result<_>>()?;
        sets[e as usize] = Some(set);
    }
    let missing = sets.iter().position(Option::is_none);
    if let Some(e) = missing {
        return Err(Error::Input(format!("edge {e} has no list")));
    }
    Ok(ListAssignment::from_sets(
        sets.into_iter().map(Option::unwrap).collect(),
    ))
}

pub fn lists_to_string(lists: &ListAssignment) -> String {
    let mut out = String::new();
    for (e, set) in lists.sets().iter().enumerate() {
        out.push_str(&format!("l {e}"));
        for c in set {
            out.push_str(&format!(" {c}"));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_round_trip_preserves_edge_order() {
        let text = "# a triangle with a parallel edge\np 3 4\ne 0 1\ne 1 2\ne 2 0\ne 0 1\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g.endpoints(EdgeId(3)), (0, 1));
        let g2 = parse_graph(&graph_to_string(&g)).unwrap();
        assert_eq!(
            g.edge_ids().map(|e| g.endpoints(e)).collect::<Vec<_>>(),
            g2.edge_ids().map(|e| g2.endpoints(e)).collect::<Vec<_>>()
        );
    }

    #[test]
    fn graph_comments_and_blank_lines_are_ignored() {
        let text = "\n# heading\np 2 1 # trailing\n\ne 0 1\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn graph_errors_carry_line_numbers() {
        let err = parse_graph("p 2 1\ne 0 5\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = parse_graph("e 0 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err}");
        let err = parse_graph("p 2 1\nq 0 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = parse_graph("p 2 x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err}");
    }

    #[test]
    fn graph_edge_count_mismatch_is_rejected() {
        assert!(matches!(
            parse_graph("p 2 2\ne 0 1\n"),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn coloring_round_trip() {
        let c = parse_coloring("c 0 5\nc 1 2\n", 2).unwrap();
        assert_eq!(c.get(EdgeId(0)), Some(5));
        assert_eq!(c.get(EdgeId(1)), Some(2));
        let c2 = parse_coloring(&coloring_to_string(&c), 2).unwrap();
        assert_eq!(c, c2);
    }

    #[test]
    fn coloring_rejects_duplicates_gaps_and_bad_ids() {
        assert!(matches!(
            parse_coloring("c 0 1\nc 0 2\n", 2),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(parse_coloring("c 0 1\n", 2), Err(Error::Input(_))));
        assert!(matches!(
            parse_coloring("c 7 1\n", 2),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn lists_round_trip() {
        let l = parse_lists("l 0 3 1 2\nl 1 9\n", 2).unwrap();
        assert_eq!(
            l.get(EdgeId(0)),
            Some(&[1, 2, 3].into_iter().collect::<BTreeSet<_>>())
        );
        let l2 = parse_lists(&lists_to_string(&l), 2).unwrap();
        assert_eq!(l, l2);
    }

    #[test]
    fn lists_reject_duplicates_and_missing_edges() {
        assert!(matches!(
            parse_lists("l 0 1\nl 0 2\n", 2),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(parse_lists("l 0 1\n", 2), Err(Error::Input(_))));
        assert!(matches!(
            parse_lists("l 0\nl 1 1\n", 2),
            Err(Error::Parse { line: 1, .. })
        ));
    }
}
