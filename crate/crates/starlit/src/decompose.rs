//! Structural machinery for the coloring pipeline: biconnected blocks,
//! completion of degree-2 vertices into a near-cubic supergraph, maximum
//! matching with blossom contraction, cover matchings that leave a lone
//! degree-2 vertex exposed, 2-factor extraction, and the spanning cactus
//! splitting a matching into connectors and leftover edges.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::multigraph::{EdgeId, Multigraph};

/// Biconnected decomposition of a multigraph.
#[derive(Debug, Clone)]
pub struct BlockStructure {
    /// Edge sets of the biconnected components, each ascending, ordered by
    /// least edge id. A bridge appears as a singleton block.
    pub blocks: Vec<Vec<EdgeId>>,
    pub bridges: BTreeSet<EdgeId>,
    pub cut_vertices: BTreeSet<usize>,
    /// For each block, the cut vertices lying in it: the adjacency of the
    /// block tree.
    pub block_cuts: Vec<Vec<usize>>,
}

impl BlockStructure {
    /// Indices of blocks touching at most one cut vertex. With two or more
    /// blocks these are the pendant blocks of the block tree.
    pub fn leaf_blocks(&self) -> Vec<usize> {
        (0..self.blocks.len())
            .filter(|&i| self.block_cuts[i].len() <= 1)
            .collect()
    }
}

/// Vertices spanned by an edge set.
pub fn edge_vertex_set(g: &Multigraph, edges: &[EdgeId]) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    for &e in edges {
        let (u, v) = g.endpoints(e);
        out.insert(u);
        out.insert(v);
    }
    out
}

struct BlockFinder<'g> {
    g: &'g Multigraph,
    disc: Vec<usize>,
    low: Vec<usize>,
    timer: usize,
    stack: Vec<EdgeId>,
    blocks: Vec<Vec<EdgeId>>,
    cuts: BTreeSet<usize>,
}

impl BlockFinder<'_> {
    fn dfs(&mut self, v: usize, entry: Option<EdgeId>) {
        self.timer += 1;
        self.disc[v] = self.timer;
        self.low[v] = self.timer;
        let mut children = 0;
        for idx in 0..self.g.incident_edges(v).len() {
            let e = self.g.incident_edges(v)[idx];
            if Some(e) == entry {
                continue;
            }
            let w = self.g.other_endpoint(e, v);
            if self.disc[w] == 0 {
                self.stack.push(e);
                children += 1;
                self.dfs(w, Some(e));
                self.low[v] = self.low[v].min(self.low[w]);
                if self.low[w] >= self.disc[v] {
                    if entry.is_some() || children > 1 {
                        self.cuts.insert(v);
                    }
                    let mut block = Vec::new();
                    loop {
                        let top = self.stack.pop().expect("tree edge is on the stack");
                        block.push(top);
                        if top == e {
                            break;
                        }
                    }
                    block.sort_unstable();
                    self.blocks.push(block);
                }
            } else if self.disc[w] < self.disc[v] {
                // Back edge; a second parallel edge to the tree parent lands
                // here because only the entry edge itself is skipped.
                self.stack.push(e);
                self.low[v] = self.low[v].min(self.disc[w]);
            }
        }
    }
}

/// Biconnected components, bridges, and cut vertices. Parallel edges between
/// the same pair form a 2-edge-connected block, not bridges.
pub fn block_decomposition(g: &Multigraph) -> BlockStructure {
    let n = g.vertex_count();
    let mut finder = BlockFinder {
        g,
        disc: vec![0; n],
        low: vec![0; n],
        timer: 0,
        stack: Vec::new(),
        blocks: Vec::new(),
        cuts: BTreeSet::new(),
    };
    for v in 0..n {
        if finder.disc[v] == 0 {
            finder.dfs(v, None);
            debug_assert!(finder.stack.is_empty());
        }
    }
    let mut blocks = finder.blocks;
    blocks.sort_by_key(|b| b[0]);
    let bridges: BTreeSet<EdgeId> = blocks
        .iter()
        .filter(|b| b.len() == 1)
        .map(|b| b[0])
        .collect();
    let cut_vertices = finder.cuts;
    let block_cuts: Vec<Vec<usize>> = blocks
        .iter()
        .map(|b| {
            edge_vertex_set(g, b)
                .into_iter()
                .filter(|v| cut_vertices.contains(v))
                .collect()
        })
        .collect();
    BlockStructure {
        blocks,
        bridges,
        cut_vertices,
        block_cuts,
    }
}

/// A graph completed so at most one vertex has degree below 3.
#[derive(Debug, Clone)]
pub struct SupergraphResult {
    /// Original edges keep their ids; added edges follow.
    pub graph: Multigraph,
    pub added_edges: BTreeSet<EdgeId>,
}

/// Pairs up degree-2 vertices with new edges (ascending vertex order,
/// parallel to existing edges allowed) until at most one remains.
///
/// Requires a connected subcubic input with minimum degree 2.
pub fn build_supergraph(g: &Multigraph) -> Result<SupergraphResult> {
    if !g.is_subcubic() {
        return Err(Error::Input("supergraph completion needs a subcubic input".into()));
    }
    if g.vertex_count() == 0 {
        return Err(Error::Input("supergraph completion needs a nonempty graph".into()));
    }
    if g.connected_components().len() != 1 {
        return Err(Error::Input("supergraph completion needs a connected graph".into()));
    }
    if let Some(v) = (0..g.vertex_count()).find(|&v| g.degree(v) < 2) {
        return Err(Error::Input(format!(
            "vertex {v} has degree {} below 2; strip pendant edges first",
            g.degree(v)
        )));
    }
    let deg2: Vec<usize> = (0..g.vertex_count()).filter(|&v| g.degree(v) == 2).collect();
    let mut edges: Vec<(usize, usize)> = g.edge_ids().map(|e| g.endpoints(e)).collect();
    let original = edges.len();
    for pair in deg2.chunks_exact(2) {
        edges.push((pair[0], pair[1]));
    }
    let graph = Multigraph::from_edges(g.vertex_count(), &edges)?;
    let added_edges = (original..edges.len()).map(EdgeId).collect();
    Ok(SupergraphResult { graph, added_edges })
}

struct Blossom {
    n: usize,
    adj: Vec<Vec<usize>>,
    matched: Vec<Option<usize>>,
    parent: Vec<Option<usize>>,
    base: Vec<usize>,
    used: Vec<bool>,
}

impl Blossom {
    fn lca(&self, a: usize, b: usize) -> usize {
        let mut on_path = vec![false; self.n];
        let mut a = a;
        loop {
            a = self.base[a];
            on_path[a] = true;
            match self.matched[a] {
                None => break,
                Some(m) => match self.parent[m] {
                    None => break,
                    Some(p) => a = p,
                },
            }
        }
        let mut b = b;
        loop {
            b = self.base[b];
            if on_path[b] {
                return b;
            }
            b = self.parent[self.matched[b].expect("even vertex is matched")]
                .expect("path to root exists");
        }
    }

    fn mark_path(&mut self, mut v: usize, stem: usize, mut child: usize, flower: &mut [bool]) {
        while self.base[v] != stem {
            let m = self.matched[v].expect("blossom vertices are matched");
            flower[self.base[v]] = true;
            flower[self.base[m]] = true;
            self.parent[v] = Some(child);
            child = m;
            v = self.parent[m].expect("path to stem exists");
        }
    }

    fn find_augmenting_path(&mut self, root: usize) -> Option<usize> {
        self.used = vec![false; self.n];
        self.parent = vec![None; self.n];
        self.base = (0..self.n).collect();
        self.used[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for idx in 0..self.adj[v].len() {
                let to = self.adj[v][idx];
                if self.base[v] == self.base[to] || self.matched[v] == Some(to) {
                    continue;
                }
                let closes_odd_cycle = to == root
                    || self
                        .matched[to]
                        .map(|m| self.parent[m].is_some())
                        .unwrap_or(false);
                if closes_odd_cycle {
                    let stem = self.lca(v, to);
                    let mut flower = vec![false; self.n];
                    self.mark_path(v, stem, to, &mut flower);
                    self.mark_path(to, stem, v, &mut flower);
                    for i in 0..self.n {
                        if flower[self.base[i]] {
                            self.base[i] = stem;
                            if !self.used[i] {
                                self.used[i] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to].is_none() {
                    self.parent[to] = Some(v);
                    match self.matched[to] {
                        None => return Some(to),
                        Some(m) => {
                            self.used[m] = true;
                            queue.push_back(m);
                        }
                    }
                }
            }
        }
        None
    }

    fn augment_from(&mut self, exposed: usize) {
        let mut v = exposed;
        loop {
            let pv = self.parent[v].expect("augmenting path reaches the root");
            let next = self.matched[pv];
            self.matched[v] = Some(pv);
            self.matched[pv] = Some(v);
            match next {
                Some(x) => v = x,
                None => break,
            }
        }
    }
}

/// Maximum-cardinality matching by augmenting-path search with blossom
/// contraction, run on the simple quotient (parallel edges collapsed; the
/// least edge id represents each vertex pair).
pub fn maximum_matching(g: &Multigraph) -> BTreeSet<EdgeId> {
    let n = g.vertex_count();
    let mut representative: BTreeMap<(usize, usize), EdgeId> = BTreeMap::new();
    for e in g.edge_ids() {
        let (u, v) = g.endpoints(e);
        representative.entry((u.min(v), u.max(v))).or_insert(e);
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in representative.keys() {
        adj[u].push(v);
        adj[v].push(u);
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    let mut engine = Blossom {
        n,
        adj,
        matched: vec![None; n],
        parent: vec![None; n],
        base: (0..n).collect(),
        used: vec![false; n],
    };
    for v in 0..n {
        if engine.matched[v].is_none() {
            if let Some(exposed) = engine.find_augmenting_path(v) {
                engine.augment_from(exposed);
            }
        }
    }
    let mut out = BTreeSet::new();
    for v in 0..n {
        if let Some(u) = engine.matched[v] {
            if v < u {
                out.insert(representative[&(v, u)]);
            }
        }
    }
    out
}

fn degree_two_vertices(g: &Multigraph) -> Vec<usize> {
    (0..g.vertex_count()).filter(|&v| g.degree(v) == 2).collect()
}

/// A matching covering every degree-3 vertex and leaving the lone degree-2
/// vertex, if present, exposed.
///
/// Requires a connected, bridgeless, subcubic graph with minimum degree 2
/// and at most one degree-2 vertex. Such graphs always admit this matching,
/// so failure to find one reports an internal error.
pub fn petersen_cover_matching(g: &Multigraph) -> Result<BTreeSet<EdgeId>> {
    if g.vertex_count() == 0 || g.edge_count() == 0 {
        return Err(Error::Input("cover matching needs a nonempty graph".into()));
    }
    if !g.is_subcubic() {
        return Err(Error::Input("cover matching needs a subcubic graph".into()));
    }
    if g.connected_components().len() != 1 {
        return Err(Error::Input("cover matching needs a connected graph".into()));
    }
    if let Some(v) = (0..g.vertex_count()).find(|&v| g.degree(v) < 2) {
        return Err(Error::Input(format!(
            "cover matching needs minimum degree 2, vertex {v} has degree {}",
            g.degree(v)
        )));
    }
    let deg2 = degree_two_vertices(g);
    if deg2.len() > 1 {
        return Err(Error::Input(format!(
            "cover matching allows at most one degree-2 vertex, found {}",
            deg2.len()
        )));
    }
    if !block_decomposition(g).bridges.is_empty() {
        return Err(Error::Input("cover matching needs a bridgeless graph".into()));
    }
    match deg2.first().copied() {
        Some(v) => {
            let kept: Vec<EdgeId> = g
                .edge_ids()
                .filter(|&e| {
                    let (a, b) = g.endpoints(e);
                    a != v && b != v
                })
                .collect();
            let (sub, map) = g.induced_by_edges(&kept);
            let matching = maximum_matching(&sub);
            if matching.len() * 2 != sub.vertex_count() {
                return Err(Error::internal(format!(
                    "no matching covers all degree-3 vertices around exposed vertex {v}"
                )));
            }
            Ok(matching.into_iter().map(|e| map.edge_to_parent[e.0]).collect())
        }
        None => {
            let matching = maximum_matching(g);
            if matching.len() * 2 != g.vertex_count() {
                return Err(Error::internal(
                    "no perfect matching in a bridgeless cubic graph",
                ));
            }
            Ok(matching)
        }
    }
}

/// One cycle of a 2-factor in traversal order: `vertices[i]` is the tail of
/// `edges[i]` and the head of `edges[i-1]`, cyclically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleTraversal {
    pub edges: Vec<EdgeId>,
    pub vertices: Vec<usize>,
}

impl CycleTraversal {
    pub fn len(&self) -> usize {
        self.edges.len()
    }
}

/// Splits the graph minus a cover matching into its cycles. The remainder
/// must be 2-regular (guaranteed when `m` covers every degree-3 vertex and
/// misses the degree-2 one); anything else is an internal error. A parallel
/// pair forms a 2-cycle.
pub fn two_factor(g: &Multigraph, m: &BTreeSet<EdgeId>) -> Result<Vec<CycleTraversal>> {
    let n = g.vertex_count();
    let mut remainder: Vec<Vec<EdgeId>> = vec![Vec::new(); n];
    for e in g.edge_ids() {
        if !m.contains(&e) {
            let (u, v) = g.endpoints(e);
            remainder[u].push(e);
            remainder[v].push(e);
        }
    }
    if let Some(v) = (0..n).find(|&v| remainder[v].len() != 2) {
        return Err(Error::internal(format!(
            "graph minus cover matching is not 2-regular: vertex {v} keeps {} edges",
            remainder[v].len()
        )));
    }
    let mut visited = vec![false; g.edge_count()];
    let mut cycles = Vec::new();
    for start in 0..n {
        let Some(&first) = remainder[start].iter().find(|e| !visited[e.0]) else {
            continue;
        };
        let mut edges = Vec::new();
        let mut vertices = Vec::new();
        let mut v = start;
        let mut e = first;
        loop {
            visited[e.0] = true;
            edges.push(e);
            vertices.push(v);
            v = g.other_endpoint(e, v);
            if v == start {
                break;
            }
            e = *remainder[v]
                .iter()
                .find(|f| !visited[f.0])
                .expect("2-regular walk continues until it closes");
        }
        cycles.push(CycleTraversal { edges, vertices });
    }
    let cycle_edge_total: usize = cycles.iter().map(CycleTraversal::len).sum();
    if cycle_edge_total + m.len() != g.edge_count() {
        return Err(Error::internal(
            "cycle extraction did not account for every non-matching edge",
        ));
    }
    Ok(cycles)
}

/// A 2-factor split into cycles plus the matching split into tree connectors
/// and leftover edges.
#[derive(Debug, Clone)]
pub struct CactusDecomposition {
    pub cycles: Vec<CycleTraversal>,
    /// Matching edges joining distinct cycles into a spanning tree.
    pub connectors: BTreeSet<EdgeId>,
    /// The rest of the matching.
    pub leftover_matching: BTreeSet<EdgeId>,
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// Contracts each cycle to a supernode and spans the contraction with
/// matching edges, smallest edge id first. Tree edges become connectors; the
/// rest of the matching is left over.
pub fn spanning_cactus(
    g: &Multigraph,
    cycles: Vec<CycleTraversal>,
    m: &BTreeSet<EdgeId>,
) -> Result<CactusDecomposition> {
    let n = g.vertex_count();
    let mut cycle_of = vec![usize::MAX; n];
    for (i, cycle) in cycles.iter().enumerate() {
        for &v in &cycle.vertices {
            if cycle_of[v] != usize::MAX {
                return Err(Error::internal(format!(
                    "vertex {v} appears on two cycles of the 2-factor"
                )));
            }
            cycle_of[v] = i;
        }
    }
    if let Some(v) = (0..n).find(|&v| cycle_of[v] == usize::MAX) {
        return Err(Error::internal(format!("vertex {v} lies on no cycle")));
    }
    let mut dsu = Dsu::new(cycles.len());
    let mut connectors = BTreeSet::new();
    let mut leftover = BTreeSet::new();
    for &e in m {
        let (u, v) = g.endpoints(e);
        if dsu.union(cycle_of[u], cycle_of[v]) {
            connectors.insert(e);
        } else {
            leftover.insert(e);
        }
    }
    let root = dsu.find(0);
    if (0..cycles.len()).any(|i| dsu.find(i) != root) {
        return Err(Error::internal(
            "matching edges do not connect the cycles of a connected graph",
        ));
    }
    Ok(CactusDecomposition {
        cycles,
        connectors,
        leftover_matching: leftover,
    })
}

/// Checks every structural promise of a decomposition against its graph:
/// cycles partition the vertices and are genuine closed walks, matching
/// edges are disjoint from cycles and from each other, connectors span the
/// contraction, and no edge has more than 4 leftover-matching edges within
/// line-graph distance 2.
pub fn validate_cactus(g: &Multigraph, c: &CactusDecomposition) -> Result<()> {
    let n = g.vertex_count();
    let mut covered = vec![0usize; n];
    let mut cycle_edges = BTreeSet::new();
    let mut cycle_of = vec![usize::MAX; n];
    for (i, cycle) in c.cycles.iter().enumerate() {
        if cycle.len() < 2 || cycle.vertices.len() != cycle.len() {
            return Err(Error::internal(format!("cycle {i} is malformed")));
        }
        for k in 0..cycle.len() {
            let tail = cycle.vertices[k];
            let head = cycle.vertices[(k + 1) % cycle.len()];
            if g.other_endpoint(cycle.edges[k], tail) != head {
                return Err(Error::internal(format!(
                    "cycle {i} traversal breaks at position {k}"
                )));
            }
            covered[tail] += 1;
            cycle_of[tail] = i;
            if !cycle_edges.insert(cycle.edges[k]) {
                return Err(Error::internal(format!(
                    "edge {} appears twice among cycles",
                    cycle.edges[k]
                )));
            }
        }
    }
    if let Some(v) = (0..n).find(|&v| covered[v] != 1) {
        return Err(Error::internal(format!(
            "vertex {v} lies on {} cycles instead of 1",
            covered[v]
        )));
    }
    let matching: BTreeSet<EdgeId> = c
        .connectors
        .union(&c.leftover_matching)
        .copied()
        .collect();
    if matching.len() != c.connectors.len() + c.leftover_matching.len() {
        return Err(Error::internal(
            "connectors and leftover matching overlap",
        ));
    }
    if matching.iter().any(|e| cycle_edges.contains(e)) {
        return Err(Error::internal("a matching edge lies on a cycle"));
    }
    if cycle_edges.len() + matching.len() != g.edge_count() {
        return Err(Error::internal(
            "cycles and matching do not partition the edges",
        ));
    }
    let mut touched = vec![false; n];
    for &e in &matching {
        let (u, v) = g.endpoints(e);
        if touched[u] || touched[v] {
            return Err(Error::internal(format!(
                "matching edges share a vertex at edge {e}"
            )));
        }
        touched[u] = true;
        touched[v] = true;
    }
    let mut dsu = Dsu::new(c.cycles.len());
    for &e in &c.connectors {
        let (u, v) = g.endpoints(e);
        if !dsu.union(cycle_of[u], cycle_of[v]) {
            return Err(Error::internal(format!(
                "connector {e} closes a cycle among supernodes"
            )));
        }
    }
    if !c.cycles.is_empty() {
        let root = dsu.find(0);
        if (0..c.cycles.len()).any(|i| dsu.find(i) != root) {
            return Err(Error::internal("connectors do not span the cycles"));
        }
    }
    for e in g.edge_ids() {
        let near = g.edges_within_distance(e, 2)?;
        let count = near.iter().filter(|f| c.leftover_matching.contains(f)).count();
        if count > 4 {
            return Err(Error::internal(format!(
                "edge {e} has {count} leftover-matching edges within distance 2"
            )));
        }
    }
    Ok(())
}
