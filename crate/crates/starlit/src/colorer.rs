//! The constructive list-coloring pipeline for subcubic multigraphs.
//!
//! Given lists of 7 colors per edge, the driver strips pendant edges,
//! completes each remaining component so at most one vertex has degree 2,
//! peels pendant 2-connected blocks off the block tree, and colors each
//! 2-connected piece through a staged decomposition: a matching covering the
//! degree-3 vertices, the complementary 2-factor, and a spanning cactus
//! whose leftover matching, connectors, and cycles are colored in that
//! order with list pruning between stages. Pendant edges are replayed last,
//! each avoiding the at most 6 colored edges within line-graph distance 2.

use std::collections::BTreeSet;

use crate::cycles::{self, CycleInstance};
use crate::decompose::{
    block_decomposition, build_supergraph, edge_vertex_set, petersen_cover_matching,
    spanning_cactus, two_factor, validate_cactus, CactusDecomposition,
};
use crate::error::{DiagnosticsBundle, Error, Result};
use crate::multigraph::{EdgeId, Multigraph, SubgraphMap};
use crate::verifier::{self, Color, EdgeColoring};

/// Immutable per-edge color lists, indexed by edge id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ListAssignment {
    lists: Vec<BTreeSet<Color>>,
}

impl ListAssignment {
    pub fn from_sets(lists: Vec<BTreeSet<Color>>) -> Self {
        ListAssignment { lists }
    }

    /// The same palette for every edge.
    pub fn uniform(edge_count: usize, palette: &BTreeSet<Color>) -> Self {
        ListAssignment {
            lists: vec![palette.clone(); edge_count],
        }
    }

    /// The palette `{1, ..., k}` for every edge.
    pub fn uniform_range(edge_count: usize, k: u32) -> Self {
        Self::uniform(edge_count, &(1..=k).collect())
    }

    pub fn domain_size(&self) -> usize {
        self.lists.len()
    }

    pub fn get(&self, e: EdgeId) -> Option<&BTreeSet<Color>> {
        self.lists.get(e.0)
    }

    pub fn sets(&self) -> &[BTreeSet<Color>] {
        &self.lists
    }

    pub fn max_color(&self) -> Option<Color> {
        self.lists.iter().flatten().max().copied()
    }

    fn restricted(&self, map: &SubgraphMap) -> ListAssignment {
        ListAssignment {
            lists: map
                .edge_to_parent
                .iter()
                .map(|&e| self.lists[e.0].clone())
                .collect(),
        }
    }
}

/// Mutable copies of the lists, shrunk as nearby edges get colored.
#[derive(Debug, Clone)]
pub struct WorkingLists {
    remaining: Vec<BTreeSet<Color>>,
}

impl WorkingLists {
    pub fn from_assignment(l: &ListAssignment) -> Self {
        WorkingLists {
            remaining: l.lists.clone(),
        }
    }

    pub fn get(&self, e: EdgeId) -> &BTreeSet<Color> {
        &self.remaining[e.0]
    }

    pub fn remove(&mut self, e: EdgeId, color: Color) {
        self.remaining[e.0].remove(&color);
    }

    pub fn domain_size(&self) -> usize {
        self.remaining.len()
    }
}

/// Counters describing how much of the pipeline a run exercised.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ColoringStats {
    pub peeled_edges: usize,
    pub bare_cycles: usize,
    pub supergraph_edges_added: usize,
    pub bodies: usize,
    pub cactus_cycles: usize,
    pub matching_edges_colored: usize,
    pub connectors_colored: usize,
}

/// A finished coloring together with run counters and the stage log.
#[derive(Debug, Clone)]
pub struct ColoringOutcome {
    pub coloring: EdgeColoring,
    pub stats: ColoringStats,
    pub trace: Vec<String>,
}

/// Source of globally unused colors for edges added during completion.
/// Colors handed out here appear in no original list and are never repeated,
/// so they can never join a bichromatic witness with original edges.
struct ColorSupply {
    next: Color,
}

impl ColorSupply {
    fn fresh_seven(&mut self) -> BTreeSet<Color> {
        let set: BTreeSet<Color> = (self.next..self.next + 7).collect();
        self.next += 7;
        set
    }
}

struct Ctx {
    stats: ColoringStats,
    trace: Vec<String>,
}

impl Ctx {
    fn log(&mut self, line: String) {
        self.trace.push(line);
    }
}

fn edge_list(edges: impl IntoIterator<Item = EdgeId>) -> String {
    let parts: Vec<String> = edges.into_iter().map(|e| e.to_string()).collect();
    if parts.is_empty() {
        "none".into()
    } else {
        parts.join(" ")
    }
}

/// Colors `g` from `l`, requiring subcubic `g` and at least 7 colors per
/// list. The result is verified before being returned.
pub fn star_edge_color_list(g: &Multigraph, l: &ListAssignment) -> Result<EdgeColoring> {
    star_edge_color_list_traced(g, l).map(|outcome| outcome.coloring)
}

/// Same as [`star_edge_color_list`] but keeps counters and the stage log.
pub fn star_edge_color_list_traced(g: &Multigraph, l: &ListAssignment) -> Result<ColoringOutcome> {
    if !g.is_subcubic() {
        return Err(Error::Input("graph is not subcubic".into()));
    }
    if l.domain_size() != g.edge_count() {
        return Err(Error::Input(format!(
            "list assignment covers {} edges, graph has {}",
            l.domain_size(),
            g.edge_count()
        )));
    }
    if let Some(e) = g.edge_ids().find(|&e| l.get(e).map_or(true, |s| s.len() < 7)) {
        return Err(Error::Input(format!(
            "edge {e} has {} colors, need at least 7",
            l.get(e).map_or(0, BTreeSet::len)
        )));
    }
    let mut supply = ColorSupply {
        next: l.max_color().map_or(1, |c| c + 1),
    };
    let mut ctx = Ctx {
        stats: ColoringStats::default(),
        trace: Vec::new(),
    };
    let attach = |mut err: Error, ctx: &Ctx| -> Error {
        if let Error::Internal { bundle, .. } = &mut err {
            if bundle.is_none() {
                *bundle = Some(Box::new(DiagnosticsBundle {
                    graph_text: crate::format::graph_to_string(g),
                    lists_text: crate::format::lists_to_string(l),
                    stage_log: ctx.trace.clone(),
                }));
            }
        }
        err
    };
    let coloring = match color_graph(g, l, &mut supply, &mut ctx) {
        Ok(c) => c,
        Err(e) => return Err(attach(e, &ctx)),
    };
    match verifier::find_violation(g, &coloring) {
        Ok(None) => {}
        Ok(Some(v)) => {
            return Err(attach(
                Error::internal(format!("constructed coloring has a violation: {v}")),
                &ctx,
            ))
        }
        Err(e) => {
            return Err(attach(
                Error::internal(format!("constructed coloring is incomplete: {e}")),
                &ctx,
            ))
        }
    }
    if !verifier::respects_lists(&coloring, l)? {
        return Err(attach(
            Error::internal("constructed coloring leaves its lists"),
            &ctx,
        ));
    }
    Ok(ColoringOutcome {
        coloring,
        stats: ctx.stats,
        trace: ctx.trace,
    })
}

/// Full pipeline on an arbitrary subcubic graph: strip, split, complete,
/// peel blocks, replay. Recursion shrinks the vertex count strictly, since a
/// peeled block always drops at least one vertex.
fn color_graph(
    g: &Multigraph,
    lists: &ListAssignment,
    supply: &mut ColorSupply,
    ctx: &mut Ctx,
) -> Result<EdgeColoring> {
    let (core_edges, peel_order) = strip_pendant_edges(g);
    ctx.stats.peeled_edges += peel_order.len();
    if !peel_order.is_empty() {
        ctx.log(format!("peeled {}", edge_list(peel_order.iter().copied())));
    }
    let mut coloring = EdgeColoring::new(g.edge_count());
    if !core_edges.is_empty() {
        let (core, core_map) = g.induced_by_edges(&core_edges);
        let core_lists = lists.restricted(&core_map);
        for component in core.connected_components() {
            let mut in_component = vec![false; core.vertex_count()];
            for &v in &component {
                in_component[v] = true;
            }
            let component_edges: Vec<EdgeId> = core
                .edge_ids()
                .filter(|&e| in_component[core.endpoints(e).0])
                .collect();
            if component_edges.is_empty() {
                continue;
            }
            let (comp, comp_map) = core.induced_by_edges(&component_edges);
            let comp_lists = core_lists.restricted(&comp_map);
            let comp_coloring = if (0..comp.vertex_count()).all(|v| comp.degree(v) == 2) {
                ctx.stats.bare_cycles += 1;
                color_bare_cycle(&comp, &comp_lists, ctx)?
            } else {
                color_branchy_component(&comp, &comp_lists, supply, ctx)?
            };
            for (local, &core_id) in comp_map.edge_to_parent.iter().enumerate() {
                let parent = core_map.edge_to_parent[core_id.0];
                coloring.set(
                    parent,
                    comp_coloring
                        .get(EdgeId(local))
                        .expect("component coloring is total"),
                );
            }
        }
    }
    for &e in peel_order.iter().rev() {
        let banned = colored_within_distance(g, &coloring, e, 2);
        let list = lists.get(e).expect("validated domain");
        let color = list
            .iter()
            .copied()
            .find(|c| !banned.contains(c))
            .ok_or_else(|| {
                Error::internal(format!(
                    "pendant edge {e} exhausted its list against {} nearby colors",
                    banned.len()
                ))
            })?;
        coloring.set(e, color);
    }
    Ok(coloring)
}

/// Repeatedly removes an edge at a degree-1 vertex (least vertex first),
/// recording the order. Returns the surviving edges ascending and the peel
/// order. Replaying the order in reverse and dodging all colored edges
/// within distance 2 extends any valid coloring of the core.
pub fn strip_pendant_edges(g: &Multigraph) -> (Vec<EdgeId>, Vec<EdgeId>) {
    let n = g.vertex_count();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut alive = vec![true; g.edge_count()];
    let mut worklist: BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut peel = Vec::new();
    while let Some(&v) = worklist.iter().next() {
        worklist.remove(&v);
        if degree[v] != 1 {
            continue;
        }
        let e = *g
            .incident_edges(v)
            .iter()
            .find(|e| alive[e.0])
            .expect("degree-1 vertex has a live edge");
        alive[e.0] = false;
        peel.push(e);
        degree[v] = 0;
        let u = g.other_endpoint(e, v);
        degree[u] -= 1;
        if degree[u] == 1 {
            worklist.insert(u);
        }
    }
    let core = (0..g.edge_count())
        .map(EdgeId)
        .filter(|e| alive[e.0])
        .collect();
    (core, peel)
}

/// Colors a connected 2-regular component directly as one cycle.
fn color_bare_cycle(
    g: &Multigraph,
    lists: &ListAssignment,
    ctx: &mut Ctx,
) -> Result<EdgeColoring> {
    let traversals = two_factor(g, &BTreeSet::new())?;
    if traversals.len() != 1 {
        return Err(Error::internal(format!(
            "2-regular component split into {} cycles",
            traversals.len()
        )));
    }
    let traversal = &traversals[0];
    ctx.log(format!(
        "bare cycle {}",
        edge_list(traversal.edges.iter().copied())
    ));
    let inst = CycleInstance::new(
        traversal
            .edges
            .iter()
            .map(|&e| lists.get(e).expect("validated domain").clone())
            .collect(),
    )?;
    let colors = cycles::color_cycle(&inst)?;
    let mut coloring = EdgeColoring::new(g.edge_count());
    for (&e, &c) in traversal.edges.iter().zip(colors.iter()) {
        coloring.set(e, c);
    }
    Ok(coloring)
}

/// Completes a component with branch vertices into a near-cubic supergraph,
/// colors that, and keeps the restriction to the component's own edges.
fn color_branchy_component(
    comp: &Multigraph,
    lists: &ListAssignment,
    supply: &mut ColorSupply,
    ctx: &mut Ctx,
) -> Result<EdgeColoring> {
    let completed = build_supergraph(comp).map_err(|e| {
        Error::internal(format!("component completion rejected its input: {e}"))
    })?;
    ctx.stats.supergraph_edges_added += completed.added_edges.len();
    if !completed.added_edges.is_empty() {
        ctx.log(format!(
            "completion added {}",
            edge_list(completed.added_edges.iter().copied())
        ));
    }
    let mut hat_sets: Vec<BTreeSet<Color>> = lists.lists.clone();
    for _ in &completed.added_edges {
        hat_sets.push(supply.fresh_seven());
    }
    let hat_lists = ListAssignment::from_sets(hat_sets);
    let hat_coloring = color_completed(&completed.graph, &hat_lists, supply, ctx)?;
    let mut coloring = EdgeColoring::new(comp.edge_count());
    for e in comp.edge_ids() {
        coloring.set(e, hat_coloring.get(e).expect("completed coloring is total"));
    }
    Ok(coloring)
}

/// Colors a connected graph with at most one degree-2 vertex by peeling one
/// pendant block, recursing on the remainder, bridging the two, and running
/// the 2-connected engine on the block with the bridge color pruned nearby.
fn color_completed(
    g: &Multigraph,
    lists: &ListAssignment,
    supply: &mut ColorSupply,
    ctx: &mut Ctx,
) -> Result<EdgeColoring> {
    let blocks = block_decomposition(g);
    if blocks.blocks.len() == 1 {
        let working = WorkingLists::from_assignment(lists);
        return color_body(g, working, ctx);
    }
    let chosen = blocks
        .leaf_blocks()
        .into_iter()
        .find(|&i| {
            edge_vertex_set(g, &blocks.blocks[i])
                .iter()
                .all(|&v| g.degree(v) == 3)
        })
        .ok_or_else(|| {
            Error::internal("no pendant block has all vertices of degree 3")
        })?;
    let block_edges = &blocks.blocks[chosen];
    let block_vertices = edge_vertex_set(g, block_edges);
    let crossing: Vec<EdgeId> = g
        .edge_ids()
        .filter(|&e| {
            let (u, v) = g.endpoints(e);
            block_vertices.contains(&u) != block_vertices.contains(&v)
        })
        .collect();
    let [bridge] = crossing[..] else {
        return Err(Error::internal(format!(
            "pendant block touches the rest through {} edges instead of 1",
            crossing.len()
        )));
    };
    let rest_edges: Vec<EdgeId> = g
        .edge_ids()
        .filter(|&e| e != bridge && !block_edges.contains(&e))
        .collect();
    let (rest, rest_map) = g.induced_by_edges(&rest_edges);
    let rest_lists = lists.restricted(&rest_map);
    let rest_coloring = color_graph(&rest, &rest_lists, supply, ctx)?;
    let mut coloring = EdgeColoring::new(g.edge_count());
    for (local, &parent) in rest_map.edge_to_parent.iter().enumerate() {
        coloring.set(
            parent,
            rest_coloring
                .get(EdgeId(local))
                .expect("remainder coloring is total"),
        );
    }
    let banned = colored_within_distance(g, &coloring, bridge, 2);
    let bridge_color = lists
        .get(bridge)
        .expect("validated domain")
        .iter()
        .copied()
        .find(|c| !banned.contains(c))
        .ok_or_else(|| {
            Error::internal(format!(
                "bridge {bridge} exhausted its list against {} nearby colors",
                banned.len()
            ))
        })?;
    coloring.set(bridge, bridge_color);
    ctx.log(format!("bridge {bridge} color {bridge_color}"));
    let near_bridge = g.edges_within_distance(bridge, 2)?;
    let (block, block_map) = g.induced_by_edges(block_edges);
    let mut working = WorkingLists::from_assignment(&lists.restricted(&block_map));
    for (local, &parent) in block_map.edge_to_parent.iter().enumerate() {
        if near_bridge.contains(&parent) {
            working.remove(EdgeId(local), bridge_color);
        }
    }
    let block_coloring = color_body(&block, working, ctx)?;
    for (local, &parent) in block_map.edge_to_parent.iter().enumerate() {
        coloring.set(
            parent,
            block_coloring
                .get(EdgeId(local))
                .expect("block coloring is total"),
        );
    }
    Ok(coloring)
}

/// The staged engine for bridgeless subcubic graphs with at most one
/// degree-2 vertex: leftover matching, then connectors under the 5-cycle
/// union guard, then the cactus cycles, with pruning and invariant checks
/// between stages and a full verification at the end.
pub fn color_two_connected_body(b: &Multigraph, working: WorkingLists) -> Result<ColoringOutcome> {
    let mut ctx = Ctx {
        stats: ColoringStats::default(),
        trace: Vec::new(),
    };
    let coloring = color_body(b, working, &mut ctx)?;
    Ok(ColoringOutcome {
        coloring,
        stats: ctx.stats,
        trace: ctx.trace,
    })
}

fn color_body(
    b: &Multigraph,
    mut working: WorkingLists,
    ctx: &mut Ctx,
) -> Result<EdgeColoring> {
    ctx.stats.bodies += 1;
    if working.domain_size() != b.edge_count() {
        return Err(Error::internal("working lists do not match the body"));
    }
    let cover = petersen_cover_matching(b)
        .map_err(|e| Error::internal(format!("body fails cover preconditions: {e}")))?;
    let factor = two_factor(b, &cover)?;
    let cactus = spanning_cactus(b, factor, &cover)?;
    validate_cactus(b, &cactus)?;
    ctx.stats.cactus_cycles += cactus.cycles.len();
    ctx.log(format!("body {} vertices {} edges", b.vertex_count(), b.edge_count()));
    for cycle in &cactus.cycles {
        ctx.log(format!("cycle {}", edge_list(cycle.edges.iter().copied())));
    }
    ctx.log(format!(
        "connectors {}",
        edge_list(cactus.connectors.iter().copied())
    ));
    ctx.log(format!(
        "leftover {}",
        edge_list(cactus.leftover_matching.iter().copied())
    ));
    let mut coloring = greedy_color_matching(b, &cactus.leftover_matching, &working)?;
    ctx.stats.matching_edges_colored += cactus.leftover_matching.len();
    prune_lists(&mut working, &coloring, b);
    for e in b.edge_ids() {
        if coloring.get(e).is_none() && working.get(e).len() < 3 {
            return Err(Error::internal(format!(
                "edge {e} keeps only {} colors after the matching stage",
                working.get(e).len()
            )));
        }
    }
    color_connectors(b, &cactus, &working, &mut coloring)?;
    ctx.stats.connectors_colored += cactus.connectors.len();
    prune_lists(&mut working, &coloring, b);
    for e in b.edge_ids() {
        if coloring.get(e).is_none() && working.get(e).len() < 3 {
            return Err(Error::internal(format!(
                "edge {e} keeps only {} colors after the connector stage",
                working.get(e).len()
            )));
        }
    }
    for cycle in &cactus.cycles {
        if cycle.len() == 5 {
            let union: BTreeSet<Color> = cycle
                .edges
                .iter()
                .flat_map(|&e| working.get(e).iter().copied())
                .collect();
            if union.len() < 4 {
                return Err(Error::internal(format!(
                    "a 5-cycle keeps a union of only {} colors",
                    union.len()
                )));
            }
        }
    }
    for cycle in &cactus.cycles {
        let inst = CycleInstance::new(
            cycle
                .edges
                .iter()
                .map(|&e| working.get(e).clone())
                .collect(),
        )?;
        let colors = cycles::color_cycle(&inst)?;
        for (&e, &c) in cycle.edges.iter().zip(colors.iter()) {
            coloring.set(e, c);
        }
    }
    for &e in cactus.connectors.iter().chain(cactus.leftover_matching.iter()) {
        let color = coloring.get(e).expect("matching was colored");
        let clash = b
            .edges_within_distance(e, 2)?
            .into_iter()
            .find(|&f| coloring.get(f) == Some(color));
        if let Some(f) = clash {
            return Err(Error::internal(format!(
                "matching edge {e} shares color {color} with nearby edge {f}"
            )));
        }
    }
    match verifier::find_violation(b, &coloring) {
        Ok(None) => Ok(coloring),
        Ok(Some(v)) => Err(Error::internal(format!(
            "2-connected body coloring has a violation: {v}"
        ))),
        Err(e) => Err(Error::internal(format!(
            "2-connected body coloring is incomplete: {e}"
        ))),
    }
}

/// Colors the leftover matching in ascending edge order, giving each edge
/// the least list color unused on colored edges within distance 2. At most
/// 4 such edges exist, so 7-color lists never run dry.
pub fn greedy_color_matching(
    g: &Multigraph,
    mprime: &BTreeSet<EdgeId>,
    working: &WorkingLists,
) -> Result<EdgeColoring> {
    let mut coloring = EdgeColoring::new(g.edge_count());
    for &e in mprime {
        let banned = colored_within_distance(g, &coloring, e, 2);
        let color = working
            .get(e)
            .iter()
            .copied()
            .find(|c| !banned.contains(c))
            .ok_or_else(|| {
                Error::internal(format!(
                    "matching edge {e} exhausted its list against {} nearby colors",
                    banned.len()
                ))
            })?;
        coloring.set(e, color);
    }
    Ok(coloring)
}

/// Colors connectors in ascending edge order. A candidate color must be
/// unused within distance 2 and must keep every incident 5-cycle's union of
/// surviving colors at 4 or more. Each incident 5-cycle rules out at most
/// one candidate and a connector touches at most two such cycles, so at
/// least one of the 3 or more candidates always remains.
pub fn color_connectors(
    g: &Multigraph,
    cactus: &CactusDecomposition,
    working: &WorkingLists,
    coloring: &mut EdgeColoring,
) -> Result<()> {
    let mut cycle_of = vec![usize::MAX; g.vertex_count()];
    for (i, cycle) in cactus.cycles.iter().enumerate() {
        for &v in &cycle.vertices {
            cycle_of[v] = i;
        }
    }
    for &e in &cactus.connectors {
        let banned = colored_within_distance(g, coloring, e, 2);
        let candidates: Vec<Color> = working
            .get(e)
            .iter()
            .copied()
            .filter(|c| !banned.contains(c))
            .collect();
        let (u, v) = g.endpoints(e);
        let mut incident_fives: Vec<usize> = [cycle_of[u], cycle_of[v]]
            .into_iter()
            .filter(|&i| i != usize::MAX && cactus.cycles[i].len() == 5)
            .collect();
        incident_fives.dedup();
        let chosen = candidates
            .iter()
            .copied()
            .find(|&c| {
                incident_fives.iter().all(|&i| {
                    five_cycle_union_after(g, &cactus.cycles[i].edges, working, coloring, e, c)
                        >= 4
                })
            })
            .ok_or_else(|| {
                Error::internal(format!(
                    "connector {e} has no candidate keeping its 5-cycle unions at 4"
                ))
            })?;
        coloring.set(e, chosen);
    }
    Ok(())
}

/// Size of the union of surviving colors over a 5-cycle's edges if `e` were
/// colored `candidate` on top of the current partial coloring.
fn five_cycle_union_after(
    g: &Multigraph,
    cycle_edges: &[EdgeId],
    working: &WorkingLists,
    coloring: &EdgeColoring,
    e: EdgeId,
    candidate: Color,
) -> usize {
    let mut union = BTreeSet::new();
    for &f in cycle_edges {
        let near = g
            .edges_within_distance(f, 2)
            .expect("cycle edges are valid");
        let mut available: BTreeSet<Color> = working.get(f).clone();
        for g_edge in &near {
            if let Some(c) = coloring.get(*g_edge) {
                available.remove(&c);
            }
        }
        if near.contains(&e) || f == e {
            available.remove(&candidate);
        }
        union.extend(available);
    }
    union.len()
}

/// Removes from every uncolored edge's list the colors of colored edges
/// within distance 2 of it.
pub fn prune_lists(working: &mut WorkingLists, coloring: &EdgeColoring, g: &Multigraph) {
    for (f, color) in coloring.colored().collect::<Vec<_>>() {
        for e in g
            .edges_within_distance(f, 2)
            .expect("colored edges are valid")
        {
            if coloring.get(e).is_none() {
                working.remove(e, color);
            }
        }
    }
}

fn colored_within_distance(
    g: &Multigraph,
    coloring: &EdgeColoring,
    e: EdgeId,
    radius: usize,
) -> BTreeSet<Color> {
    g.edges_within_distance(e, radius)
        .expect("edge is valid")
        .into_iter()
        .filter_map(|f| coloring.get(f))
        .collect()
}
