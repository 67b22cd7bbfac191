//! Exhaustive reference coloring for small graphs, plus a shelf of named
//! fixture graphs used across the test suite and the CLI.

use std::collections::{BTreeSet, VecDeque};

use crate::colorer::ListAssignment;
use crate::error::{Error, Result};
use crate::multigraph::{EdgeId, Multigraph};
use crate::verifier::{self, Color, EdgeColoring};

/// Largest edge count [`exhaustive_star_color`] accepts by default.
pub const DEFAULT_EDGE_GUARD: usize = 20;

const NAMES: &[&str] = &[
    "c5",
    "complement_c6",
    "cube_q3",
    "k33",
    "k4",
    "k4_subdivided_edge",
    "parallel_triple",
    "petersen",
    "prism",
];

/// Names accepted by [`named`], sorted.
pub fn names() -> &'static [&'static str] {
    NAMES
}

/// Builds one of the fixture graphs by name.
pub fn named(name: &str) -> Option<Multigraph> {
    let (n, edges): (usize, Vec<(usize, usize)>) = match name {
        "c5" => (5, vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]),
        "complement_c6" => (
            6,
            vec![
                (0, 2),
                (1, 3),
                (2, 4),
                (3, 5),
                (4, 0),
                (5, 1),
                (0, 3),
                (1, 4),
                (2, 5),
            ],
        ),
        "cube_q3" => (
            8,
            vec![
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 0),
                (4, 5),
                (5, 6),
                (6, 7),
                (7, 4),
                (0, 4),
                (1, 5),
                (2, 6),
                (3, 7),
            ],
        ),
        "k33" => (
            6,
            vec![
                (0, 3),
                (0, 4),
                (0, 5),
                (1, 3),
                (1, 4),
                (1, 5),
                (2, 3),
                (2, 4),
                (2, 5),
            ],
        ),
        "k4" => (4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
        "k4_subdivided_edge" => (
            5,
            vec![(0, 4), (4, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
        ),
        "parallel_triple" => (2, vec![(0, 1), (0, 1), (0, 1)]),
        "petersen" => (
            10,
            vec![
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 0),
                (5, 7),
                (7, 9),
                (9, 6),
                (6, 8),
                (8, 5),
                (0, 5),
                (1, 6),
                (2, 7),
                (3, 8),
                (4, 9),
            ],
        ),
        "prism" => (
            6,
            vec![
                (0, 1),
                (1, 2),
                (2, 0),
                (3, 4),
                (4, 5),
                (5, 3),
                (0, 3),
                (1, 4),
                (2, 5),
            ],
        ),
        _ => return None,
    };
    Some(Multigraph::from_edges(n, &edges).expect("fixtures are well-formed"))
}

/// Finds a valid list coloring by backtracking search, or proves none
/// exists. Refuses graphs over [`DEFAULT_EDGE_GUARD`] edges.
pub fn exhaustive_star_color(
    g: &Multigraph,
    lists: &ListAssignment,
) -> Result<Option<EdgeColoring>> {
    exhaustive_star_color_with_guard(g, lists, DEFAULT_EDGE_GUARD)
}

/// Same as [`exhaustive_star_color`] with a caller-chosen edge limit.
pub fn exhaustive_star_color_with_guard(
    g: &Multigraph,
    lists: &ListAssignment,
    max_edges: usize,
) -> Result<Option<EdgeColoring>> {
    if g.edge_count() > max_edges {
        return Err(Error::Input(format!(
            "{} edges exceed the exhaustive search limit of {max_edges}",
            g.edge_count()
        )));
    }
    if lists.domain_size() != g.edge_count() {
        return Err(Error::Input(format!(
            "list assignment covers {} edges, graph has {}",
            lists.domain_size(),
            g.edge_count()
        )));
    }
    search_root(g, lists, true)
}

fn search_root(
    g: &Multigraph,
    lists: &ListAssignment,
    reduce_symmetry: bool,
) -> Result<Option<EdgeColoring>> {
    if g.edge_ids().any(|e| lists.get(e).is_some_and(BTreeSet::is_empty)) {
        return Ok(None);
    }
    let order = bfs_edge_order(g);
    // When every list is the same palette, colorings come in orbits under
    // palette permutations: pin the first edge to the least color and the
    // second to one of the two least.
    let symmetric: Option<Vec<Color>> = if reduce_symmetry && g.edge_count() >= 1 {
        let first = lists.get(order[0]).expect("validated domain");
        if g.edge_ids().all(|e| lists.get(e) == Some(first)) {
            Some(first.iter().copied().collect())
        } else {
            None
        }
    } else {
        None
    };
    let mut coloring = EdgeColoring::new(g.edge_count());
    if extend(g, lists, &order, 0, &mut coloring, symmetric.as_deref()) {
        Ok(Some(coloring))
    } else {
        Ok(None)
    }
}

fn extend(
    g: &Multigraph,
    lists: &ListAssignment,
    order: &[EdgeId],
    pos: usize,
    coloring: &mut EdgeColoring,
    symmetric: Option<&[Color]>,
) -> bool {
    let Some(&e) = order.get(pos) else {
        return true;
    };
    let list = lists.get(e).expect("validated domain");
    for &color in list {
        if let Some(palette) = symmetric {
            if pos == 0 && color != palette[0] {
                break;
            }
            if pos == 1 && palette.get(..2).is_some_and(|p| !p.contains(&color)) {
                break;
            }
        }
        coloring.set(e, color);
        if verifier::first_violation_involving(g, coloring, e).is_none()
            && extend(g, lists, order, pos + 1, coloring, symmetric)
        {
            return true;
        }
        coloring.clear(e);
    }
    false
}

/// Orders edges so each one touches an earlier edge where connectivity
/// allows, which lets the incremental check prune branches early.
fn bfs_edge_order(g: &Multigraph) -> Vec<EdgeId> {
    let mut order = Vec::with_capacity(g.edge_count());
    let mut seen = vec![false; g.edge_count()];
    for start in g.edge_ids() {
        if seen[start.0] {
            continue;
        }
        seen[start.0] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(e) = queue.pop_front() {
            order.push(e);
            for f in g.adjacent_edges(e) {
                if !seen[f.0] {
                    seen[f.0] = true;
                    queue.push_back(f);
                }
            }
        }
    }
    order
}

/// Least `k <= max_k` such that the palette `{1, ..., k}` admits a valid
/// coloring, found by exhaustive search per `k`.
pub fn star_chromatic_index(g: &Multigraph, max_k: u32) -> Result<Option<u32>> {
    for k in 0..=max_k {
        let lists = ListAssignment::uniform_range(g.edge_count(), k);
        if exhaustive_star_color(g, &lists)?.is_some() {
            return Ok(Some(k));
        }
    }
    Ok(None)
}
