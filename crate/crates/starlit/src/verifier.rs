//! Star-coloring verifier.
//!
//! A total edge coloring is star-valid when it is proper and no path on
//! exactly 4 edges (5 distinct vertices) and no cycle on exactly 4 edges
//! (4 distinct vertices) carries exactly 2 colors. The verifier reports the
//! lexicographically least witness, so failures are stable across runs.

use std::collections::BTreeSet;

use crate::colorer::ListAssignment;
use crate::error::{Error, Result};
use crate::multigraph::{EdgeId, Multigraph};

pub type Color = u32;

/// Partial or total assignment of colors to the edges `0..m` of one graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    slots: Vec<Option<Color>>,
}

impl EdgeColoring {
    pub fn new(edge_count: usize) -> Self {
        EdgeColoring {
            slots: vec![None; edge_count],
        }
    }

    /// Builds a coloring from `(edge, color)` pairs, rejecting out-of-range
    /// ids and duplicate assignments.
    pub fn from_pairs(edge_count: usize, pairs: &[(EdgeId, Color)]) -> Result<Self> {
        let mut coloring = EdgeColoring::new(edge_count);
        for &(e, c) in pairs {
            if e.0 >= edge_count {
                return Err(Error::Input(format!(
                    "edge {e} out of range 0..{edge_count}"
                )));
            }
            if coloring.slots[e.0].is_some() {
                return Err(Error::Input(format!("edge {e} colored twice")));
            }
            coloring.slots[e.0] = Some(c);
        }
        Ok(coloring)
    }

    pub fn domain_size(&self) -> usize {
        self.slots.len()
    }

    pub fn get(&self, e: EdgeId) -> Option<Color> {
        self.slots.get(e.0).copied().flatten()
    }

    pub fn set(&mut self, e: EdgeId, color: Color) {
        self.slots[e.0] = Some(color);
    }

    pub fn clear(&mut self, e: EdgeId) {
        self.slots[e.0] = None;
    }

    pub fn is_total(&self) -> bool {
        self.slots.iter().all(Option::is_some)
    }

    pub fn colored(&self) -> impl Iterator<Item = (EdgeId, Color)> + '_ {
        self.slots
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.map(|c| (EdgeId(i), c)))
    }

    pub fn colored_count(&self) -> usize {
        self.slots.iter().filter(|c| c.is_some()).count()
    }

    pub fn distinct_colors(&self) -> BTreeSet<Color> {
        self.colored().map(|(_, c)| c).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ViolationKind {
    /// Two adjacent edges share a color; witness holds the two edges.
    Improper,
    /// A 4-edge path on 5 distinct vertices carries exactly 2 colors.
    BichromaticPath,
    /// A 4-edge cycle on 4 distinct vertices carries exactly 2 colors.
    BichromaticCycle,
}

impl ViolationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ViolationKind::Improper => "improper",
            ViolationKind::BichromaticPath => "bichromatic_path",
            ViolationKind::BichromaticCycle => "bichromatic_cycle",
        }
    }
}

/// One offending configuration; `witness` lists its edges in walk order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub witness: Vec<EdgeId>,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} edges", self.kind.as_str())?;
        for e in &self.witness {
            write!(f, " {e}")?;
        }
        Ok(())
    }
}

/// Checks a total coloring; returns the least violation if any.
///
/// Fails with an input error when the coloring is partial or sized for a
/// different graph.
pub fn find_violation(g: &Multigraph, c: &EdgeColoring) -> Result<Option<Violation>> {
    check_domain(g, c)?;
    if !c.is_total() {
        return Err(Error::Input(format!(
            "coloring is partial ({} of {} edges colored)",
            c.colored_count(),
            g.edge_count()
        )));
    }
    Ok(scan(g, c))
}

/// Like [`find_violation`] but evaluates only fully colored configurations,
/// so a partial coloring passes until its colored part goes wrong.
///
/// Panics if the coloring was sized for a different graph.
pub fn find_violation_partial(g: &Multigraph, c: &EdgeColoring) -> Option<Violation> {
    assert_eq!(
        c.domain_size(),
        g.edge_count(),
        "coloring domain does not match the graph"
    );
    scan(g, c)
}

/// True when every colored edge has a color drawn from its own list.
///
/// Fails with an input error when the list assignment does not cover the
/// coloring's domain.
pub fn respects_lists(c: &EdgeColoring, lists: &ListAssignment) -> Result<bool> {
    if let Some((e, _)) = c.colored().find(|(e, _)| lists.get(*e).is_none()) {
        return Err(Error::Input(format!("edge {e} colored but has no list")));
    }
    Ok(c
        .colored()
        .all(|(e, color)| lists.get(e).is_some_and(|list| list.contains(&color))))
}

fn check_domain(g: &Multigraph, c: &EdgeColoring) -> Result<()> {
    if c.domain_size() != g.edge_count() {
        return Err(Error::Input(format!(
            "coloring covers {} edges but the graph has {}",
            c.domain_size(),
            g.edge_count()
        )));
    }
    Ok(())
}

/// Scans every colored adjacent pair and every fully colored 4-edge window,
/// tracking the lexicographically least witness.
fn scan(g: &Multigraph, c: &EdgeColoring) -> Option<Violation> {
    let mut best: Option<Violation> = None;
    for e in g.edge_ids() {
        let Some(ce) = c.get(e) else { continue };
        for f in g.adjacent_edges(e) {
            if f > e && c.get(f) == Some(ce) {
                offer(&mut best, ViolationKind::Improper, vec![e, f]);
            }
        }
    }
    for_each_window(g, |edges, verts| {
        if let Some((kind, witness)) = classify_window(c, edges, verts) {
            offer(&mut best, kind, witness);
        }
    });
    best
}

/// Violations that involve edge `e`, first found rather than least; `None`
/// means `e` introduces no conflict into the current partial coloring.
pub(crate) fn first_violation_involving(
    g: &Multigraph,
    c: &EdgeColoring,
    e: EdgeId,
) -> Option<Violation> {
    let ce = c.get(e)?;
    for f in g.adjacent_edges(e) {
        if c.get(f) == Some(ce) {
            let (a, b) = if e < f { (e, f) } else { (f, e) };
            return Some(Violation {
                kind: ViolationKind::Improper,
                witness: vec![a, b],
            });
        }
    }
    let (u, v) = g.endpoints(e);
    for (head, tail) in [(u, v), (v, u)] {
        for back_len in 0..4usize {
            let fwd_len = 3 - back_len;
            for (back_edges, back_verts) in walks_from(g, head, e, back_len) {
                for (fwd_edges, fwd_verts) in walks_from(g, tail, e, fwd_len) {
                    let mut edges = Vec::with_capacity(4);
                    edges.extend(back_edges.iter().rev());
                    edges.push(e);
                    edges.extend(fwd_edges.iter());
                    let mut verts = Vec::with_capacity(5);
                    verts.extend(back_verts.iter().rev());
                    verts.push(head);
                    verts.push(tail);
                    verts.extend(fwd_verts.iter());
                    if let Some((kind, witness)) = classify_window(c, &edges, &verts) {
                        return Some(Violation { kind, witness });
                    }
                }
            }
        }
    }
    None
}

/// Walks of exactly `len` edges leaving `start`, never immediately reusing
/// the previous edge (`first_avoid` guards the step out of `start`). Returns
/// the edges in step order plus the vertices beyond `start`.
fn walks_from(
    g: &Multigraph,
    start: usize,
    first_avoid: EdgeId,
    len: usize,
) -> Vec<(Vec<EdgeId>, Vec<usize>)> {
    let mut out = Vec::new();
    let mut edges = Vec::with_capacity(len);
    let mut verts = Vec::with_capacity(len);
    fn recurse(
        g: &Multigraph,
        at: usize,
        avoid: EdgeId,
        left: usize,
        edges: &mut Vec<EdgeId>,
        verts: &mut Vec<usize>,
        out: &mut Vec<(Vec<EdgeId>, Vec<usize>)>,
    ) {
        if left == 0 {
            out.push((edges.clone(), verts.clone()));
            return;
        }
        for &f in g.incident_edges(at) {
            if f == avoid {
                continue;
            }
            let next = g.other_endpoint(f, at);
            edges.push(f);
            verts.push(next);
            recurse(g, next, f, left - 1, edges, verts, out);
            edges.pop();
            verts.pop();
        }
    }
    recurse(g, start, first_avoid, len, &mut edges, &mut verts, &mut out);
    out
}

/// Invokes `visit` on every 4-edge walk, passing edges and the 5-vertex
/// trajectory; simple-path and cycle filtering happens in the visitor.
fn for_each_window<F: FnMut(&[EdgeId], &[usize])>(g: &Multigraph, mut visit: F) {
    for v0 in 0..g.vertex_count() {
        for &e1 in g.incident_edges(v0) {
            let v1 = g.other_endpoint(e1, v0);
            for &e2 in g.incident_edges(v1) {
                if e2 == e1 {
                    continue;
                }
                let v2 = g.other_endpoint(e2, v1);
                for &e3 in g.incident_edges(v2) {
                    if e3 == e2 {
                        continue;
                    }
                    let v3 = g.other_endpoint(e3, v2);
                    for &e4 in g.incident_edges(v3) {
                        if e4 == e3 {
                            continue;
                        }
                        let v4 = g.other_endpoint(e4, v3);
                        visit(&[e1, e2, e3, e4], &[v0, v1, v2, v3, v4]);
                    }
                }
            }
        }
    }
}

/// Classifies one 4-edge walk: yields a canonical bichromatic witness when
/// the walk is a simple path or 4-cycle whose edges are all colored with
/// exactly two colors.
fn classify_window(
    c: &EdgeColoring,
    edges: &[EdgeId],
    verts: &[usize],
) -> Option<(ViolationKind, Vec<EdgeId>)> {
    debug_assert_eq!(edges.len(), 4);
    debug_assert_eq!(verts.len(), 5);
    let first_four_distinct = distinct(&verts[..4]);
    let kind = if first_four_distinct && verts[4] == verts[0] {
        ViolationKind::BichromaticCycle
    } else if first_four_distinct && distinct(verts) {
        ViolationKind::BichromaticPath
    } else {
        return None;
    };
    let mut palette = BTreeSet::new();
    for &e in edges {
        palette.insert(c.get(e)?);
    }
    if palette.len() != 2 {
        return None;
    }
    let witness = match kind {
        ViolationKind::BichromaticPath => canonical_path(edges),
        ViolationKind::BichromaticCycle => canonical_cycle(edges),
        ViolationKind::Improper => unreachable!(),
    };
    Some((kind, witness))
}

fn distinct(verts: &[usize]) -> bool {
    let mut seen = verts.to_vec();
    seen.sort_unstable();
    seen.windows(2).all(|w| w[0] != w[1])
}

/// Least of the two traversal directions.
fn canonical_path(edges: &[EdgeId]) -> Vec<EdgeId> {
    let forward = edges.to_vec();
    let backward: Vec<EdgeId> = edges.iter().rev().copied().collect();
    forward.min(backward)
}

/// Least over all rotations of both traversal directions.
fn canonical_cycle(edges: &[EdgeId]) -> Vec<EdgeId> {
    let mut best: Option<Vec<EdgeId>> = None;
    let backward: Vec<EdgeId> = edges.iter().rev().copied().collect();
    for seq in [edges.to_vec(), backward] {
        for start in 0..4 {
            let rotated: Vec<EdgeId> = (0..4).map(|i| seq[(start + i) % 4]).collect();
            match &best {
                Some(current) if *current <= rotated => {}
                _ => best = Some(rotated),
            }
        }
    }
    best.expect("nonempty rotation set")
}

fn offer(best: &mut Option<Violation>, kind: ViolationKind, witness: Vec<EdgeId>) {
    let replace = match best {
        None => true,
        Some(current) => witness < current.witness,
    };
    if replace {
        *best = Some(Violation { kind, witness });
    }
}
