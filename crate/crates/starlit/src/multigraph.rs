//! Loopless multigraph with dense integer edge identities.
//!
//! Parallel edges are first-class: every edge keeps its own [`EdgeId`] and two
//! parallel edges are adjacent (they share both endpoints). Edge distance is
//! measured in the line graph: adjacent edges are at distance 1.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Dense index of an edge, `0..m` in insertion order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

impl std::fmt::Display for EdgeId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Undirected loopless multigraph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    vertex_count: usize,
    endpoints: Vec<(usize, usize)>,
    incidence: Vec<Vec<EdgeId>>,
}

/// Translation table from a derived subgraph back to its parent graph.
#[derive(Debug, Clone)]
pub struct SubgraphMap {
    /// Per subgraph vertex, the parent vertex it came from.
    pub vertex_to_parent: Vec<usize>,
    /// Per subgraph edge, the parent edge it came from.
    pub edge_to_parent: Vec<EdgeId>,
}

impl Multigraph {
    /// Builds a multigraph from explicit endpoint pairs.
    ///
    /// Rejects loops and endpoints `>= vertex_count`. Edge ids follow the
    /// order of `edges`.
    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut incidence = vec![Vec::new(); vertex_count];
        let mut endpoints = Vec::with_capacity(edges.len());
        for (id, &(u, v)) in edges.iter().enumerate() {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::Input(format!(
                    "edge {id} ({u}, {v}) has an endpoint outside 0..{vertex_count}"
                )));
            }
            if u == v {
                return Err(Error::Input(format!("edge {id} is a loop at vertex {u}")));
            }
            incidence[u].push(EdgeId(id));
            incidence[v].push(EdgeId(id));
            endpoints.push((u, v));
        }
        Ok(Multigraph {
            vertex_count,
            endpoints,
            incidence,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.endpoints.len()
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edge_count()).map(EdgeId)
    }

    /// Endpoints of `e` as stored at construction.
    pub fn endpoints(&self, e: EdgeId) -> (usize, usize) {
        self.endpoints[e.0]
    }

    /// The endpoint of `e` that is not `v`. Panics if `v` is not an endpoint.
    pub fn other_endpoint(&self, e: EdgeId, v: usize) -> usize {
        let (a, b) = self.endpoints[e.0];
        if v == a {
            b
        } else {
            assert_eq!(v, b, "vertex {v} is not an endpoint of edge {e}");
            a
        }
    }

    /// Edges incident to `v`, in ascending id order.
    pub fn incident_edges(&self, v: usize) -> &[EdgeId] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    pub fn is_subcubic(&self) -> bool {
        (0..self.vertex_count).all(|v| self.degree(v) <= 3)
    }

    /// Edges sharing at least one endpoint with `e`, excluding `e` itself.
    pub fn adjacent_edges(&self, e: EdgeId) -> Vec<EdgeId> {
        let (u, v) = self.endpoints(e);
        let mut out: BTreeSet<EdgeId> = BTreeSet::new();
        for &f in self.incident_edges(u).iter().chain(self.incident_edges(v)) {
            if f != e {
                out.insert(f);
            }
        }
        out.into_iter().collect()
    }

    /// All edges `f != e` within line-graph distance `radius` of `e`.
    ///
    /// Distance 1 means sharing an endpoint. In a subcubic graph at most 4
    /// edges are at distance 1 and at most 12 at distance at most 2.
    pub fn edges_within_distance(&self, e: EdgeId, radius: usize) -> Result<BTreeSet<EdgeId>> {
        if e.0 >= self.edge_count() {
            return Err(Error::Input(format!(
                "edge {e} out of range 0..{}",
                self.edge_count()
            )));
        }
        let mut seen: BTreeSet<EdgeId> = BTreeSet::new();
        let mut frontier = vec![e];
        seen.insert(e);
        for _ in 0..radius {
            let mut next = Vec::new();
            for &f in &frontier {
                for g in self.adjacent_edges(f) {
                    if seen.insert(g) {
                        next.push(g);
                    }
                }
            }
            frontier = next;
        }
        seen.remove(&e);
        Ok(seen)
    }

    /// Vertex sets of connected components, each sorted ascending, ordered by
    /// smallest member. Isolated vertices form singleton components.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.vertex_count];
        let mut components = Vec::new();
        for start in 0..self.vertex_count {
            if seen[start] {
                continue;
            }
            let mut stack = vec![start];
            let mut comp = Vec::new();
            seen[start] = true;
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &e in self.incident_edges(v) {
                    let w = self.other_endpoint(e, v);
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            components.push(comp);
        }
        components
    }

    /// New graph containing exactly `edges` (deduplicated, ascending order)
    /// and the vertices they touch, renumbered densely. Vertices keep their
    /// relative order; subgraph edge `i` is `edges_sorted[i]`.
    pub fn induced_by_edges(&self, edges: &[EdgeId]) -> (Multigraph, SubgraphMap) {
        let edge_set: BTreeSet<EdgeId> = edges.iter().copied().collect();
        let mut vertex_set: BTreeSet<usize> = BTreeSet::new();
        for &e in &edge_set {
            let (u, v) = self.endpoints(e);
            vertex_set.insert(u);
            vertex_set.insert(v);
        }
        let vertex_to_parent: Vec<usize> = vertex_set.into_iter().collect();
        let mut to_local = vec![usize::MAX; self.vertex_count];
        for (local, &parent) in vertex_to_parent.iter().enumerate() {
            to_local[parent] = local;
        }
        let edge_to_parent: Vec<EdgeId> = edge_set.into_iter().collect();
        let local_edges: Vec<(usize, usize)> = edge_to_parent
            .iter()
            .map(|&e| {
                let (u, v) = self.endpoints(e);
                (to_local[u], to_local[v])
            })
            .collect();
        let graph = Multigraph::from_edges(vertex_to_parent.len(), &local_edges)
            .expect("subgraph of a valid multigraph is valid");
        (
            graph,
            SubgraphMap {
                vertex_to_parent,
                edge_to_parent,
            },
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn path3() -> Multigraph {
        // 0 -e0- 1 -e1- 2 -e2- 3
        Multigraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap()
    }

    fn k4() -> Multigraph {
        Multigraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn degrees_count_parallel_edges_separately() {
        let g = Multigraph::from_edges(3, &[(0, 1), (0, 1), (0, 1)]).unwrap();
        assert_eq!(g.degree(0), 3);
        assert_eq!(g.degree(1), 3);
        assert_eq!(g.degree(2), 0);
    }

    #[test]
    fn triangle_degrees() {
        let g = Multigraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!((0..3).all(|v| g.degree(v) == 2));
    }

    #[test]
    fn loops_are_rejected() {
        let err = Multigraph::from_edges(2, &[(1, 1)]).unwrap_err();
        assert!(matches!(err, Error::Input(_)));
    }

    #[test]
    fn out_of_range_endpoint_rejected() {
        let err = Multigraph::from_edges(2, &[(0, 2)]).unwrap_err();
        assert!(matches!(err, Error::Input(_)));
    }

    #[test]
    fn subcubic_recognizes_cycle_and_k4_but_not_k5() {
        let c5 = Multigraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert!(c5.is_subcubic());
        assert!(k4().is_subcubic());
        let mut k5_edges = Vec::new();
        for u in 0..5 {
            for v in (u + 1)..5 {
                k5_edges.push((u, v));
            }
        }
        let k5 = Multigraph::from_edges(5, &k5_edges).unwrap();
        assert!(!k5.is_subcubic());
    }

    #[test]
    fn distance_on_a_three_edge_path() {
        let g = path3();
        let r1 = g.edges_within_distance(EdgeId(0), 1).unwrap();
        assert_eq!(r1.into_iter().collect::<Vec<_>>(), vec![EdgeId(1)]);
        let r2 = g.edges_within_distance(EdgeId(0), 2).unwrap();
        assert_eq!(
            r2.into_iter().collect::<Vec<_>>(),
            vec![EdgeId(1), EdgeId(2)]
        );
    }

    #[test]
    fn every_k4_edge_has_four_neighbors_at_distance_one() {
        let g = k4();
        for e in g.edge_ids() {
            assert_eq!(g.edges_within_distance(e, 1).unwrap().len(), 4);
        }
    }

    #[test]
    fn distance_query_rejects_unknown_edge() {
        let g = path3();
        assert!(g.edges_within_distance(EdgeId(99), 1).is_err());
    }

    #[test]
    fn components_of_triangle_plus_square() {
        let g = Multigraph::from_edges(
            7,
            &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (5, 6), (6, 3)],
        )
        .unwrap();
        assert_eq!(g.connected_components(), vec![vec![0, 1, 2], vec![3, 4, 5, 6]]);
    }

    #[test]
    fn isolated_vertices_are_singleton_components() {
        let g = Multigraph::from_edges(3, &[]).unwrap();
        assert_eq!(g.connected_components(), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn k4_is_one_component() {
        assert_eq!(k4().connected_components().len(), 1);
    }

    #[test]
    fn induced_subgraph_renumbers_and_maps_back() {
        let g = path3();
        let (sub, map) = g.induced_by_edges(&[EdgeId(2), EdgeId(1)]);
        assert_eq!(sub.vertex_count(), 3);
        assert_eq!(sub.edge_count(), 2);
        assert_eq!(map.edge_to_parent, vec![EdgeId(1), EdgeId(2)]);
        assert_eq!(map.vertex_to_parent, vec![1, 2, 3]);
        assert_eq!(sub.endpoints(EdgeId(0)), (0, 1));
        assert_eq!(sub.endpoints(EdgeId(1)), (1, 2));
    }

    #[test]
    fn parallel_edges_are_adjacent() {
        let g = Multigraph::from_edges(2, &[(0, 1), (0, 1)]).unwrap();
        assert_eq!(g.adjacent_edges(EdgeId(0)), vec![EdgeId(1)]);
    }

    prop_compose! {
        fn arbitrary_multigraph()(n in 1usize..10, raw in prop::collection::vec((0usize..10, 0usize..10), 0..20))
            -> Multigraph
        {
            let edges: Vec<(usize, usize)> = raw
                .into_iter()
                .map(|(a, b)| (a % n, b % n))
                .filter(|(a, b)| a != b)
                .collect();
            Multigraph::from_edges(n, &edges).unwrap()
        }
    }

    fn subcubic_sample(seed: u64) -> Multigraph {
        crate::gen::random_subcubic(12, seed, true).unwrap()
    }

    proptest! {
        #[test]
        fn distance_is_symmetric(g in arbitrary_multigraph()) {
            for e in g.edge_ids() {
                for f in g.edges_within_distance(e, 2).unwrap() {
                    prop_assert!(g.edges_within_distance(f, 2).unwrap().contains(&e));
                }
            }
        }

        #[test]
        fn radius_one_is_contained_in_radius_two(g in arbitrary_multigraph()) {
            for e in g.edge_ids() {
                let r1 = g.edges_within_distance(e, 1).unwrap();
                let r2 = g.edges_within_distance(e, 2).unwrap();
                prop_assert!(r1.is_subset(&r2));
            }
        }

        #[test]
        fn subcubic_distance_bounds(seed in 0u64..500) {
            let g = subcubic_sample(seed);
            prop_assert!(g.is_subcubic());
            for e in g.edge_ids() {
                prop_assert!(g.edges_within_distance(e, 1).unwrap().len() <= 4);
                prop_assert!(g.edges_within_distance(e, 2).unwrap().len() <= 12);
            }
        }
    }
}
