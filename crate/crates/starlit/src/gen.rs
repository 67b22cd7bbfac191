//! Random subcubic instance generators, deterministic under a fixed seed.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::multigraph::Multigraph;

const MAX_ATTEMPTS: u64 = 100_000;
/// Edge removal probability when thinning a cubic graph down to a subcubic
/// one; chosen so most instances keep branch vertices while still exercising
/// degree-2 and pendant shapes.
const DELETION_PROBABILITY: f64 = 0.2;

fn attempt_rng(seed: u64, attempt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ attempt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Random cubic multigraph on `n` vertices (`n` even, at least 4) via the
/// pairing model: three points per vertex, a uniform perfect matching of the
/// points, resampled until loop-free (and simple unless `allow_parallel`).
/// May be disconnected.
pub fn random_cubic(n: usize, seed: u64, allow_parallel: bool) -> Result<Multigraph> {
    if n < 4 || n % 2 != 0 {
        return Err(Error::Input(format!(
            "cubic graphs need an even vertex count of at least 4, got {n}"
        )));
    }
    for attempt in 0..MAX_ATTEMPTS {
        let mut rng = attempt_rng(seed, attempt);
        let mut points: Vec<usize> = (0..n).flat_map(|v| [v, v, v]).collect();
        points.shuffle(&mut rng);
        let pairs: Vec<(usize, usize)> = points
            .chunks_exact(2)
            .map(|chunk| (chunk[0].min(chunk[1]), chunk[0].max(chunk[1])))
            .collect();
        if pairs.iter().any(|&(u, v)| u == v) {
            continue;
        }
        if !allow_parallel {
            let mut seen = std::collections::BTreeSet::new();
            if !pairs.iter().all(|pair| seen.insert(*pair)) {
                continue;
            }
        }
        let mut edges = pairs;
        edges.sort_unstable();
        return Multigraph::from_edges(n, &edges);
    }
    Err(Error::internal(format!(
        "pairing model failed to produce a loop-free cubic graph on {n} vertices"
    )))
}

/// Random connected subcubic multigraph with at most `n` vertices: a random
/// cubic graph thinned by independent edge deletions, keeping the largest
/// connected component. Resampled until at least one edge survives.
pub fn random_subcubic(n: usize, seed: u64, allow_parallel: bool) -> Result<Multigraph> {
    let even_n = if n % 2 == 0 { n } else { n.saturating_sub(1) };
    if even_n < 4 {
        return Err(Error::Input(format!(
            "subcubic generation needs at least 4 vertices, got {n}"
        )));
    }
    for attempt in 0..MAX_ATTEMPTS {
        let mut rng = attempt_rng(seed.wrapping_add(0x5bf0_3635), attempt);
        let cubic = random_cubic(even_n, rng.gen(), allow_parallel)?;
        let kept: Vec<(usize, usize)> = (0..cubic.edge_count())
            .filter(|_| !rng.gen_bool(DELETION_PROBABILITY))
            .map(|e| cubic.endpoints(crate::multigraph::EdgeId(e)))
            .collect();
        if kept.is_empty() {
            continue;
        }
        let thinned = Multigraph::from_edges(even_n, &kept)?;
        let components = thinned.connected_components();
        let largest = components
            .iter()
            .max_by_key(|c| c.len())
            .expect("nonempty graph has a component");
        let in_largest: Vec<bool> = {
            let mut mark = vec![false; even_n];
            for &v in largest {
                mark[v] = true;
            }
            mark
        };
        let component_edges: Vec<crate::multigraph::EdgeId> = (0..thinned.edge_count())
            .map(crate::multigraph::EdgeId)
            .filter(|&e| {
                let (u, v) = thinned.endpoints(e);
                in_largest[u] && in_largest[v]
            })
            .collect();
        if component_edges.is_empty() {
            continue;
        }
        let (graph, _) = thinned.induced_by_edges(&component_edges);
        return Ok(graph);
    }
    Err(Error::internal(format!(
        "edge thinning failed to leave any edges on {n} vertices"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigraph::EdgeId;
    use proptest::prelude::*;

    #[test]
    fn cubic_generation_is_three_regular_and_deterministic() {
        let g1 = random_cubic(10, 7, true).unwrap();
        let g2 = random_cubic(10, 7, true).unwrap();
        assert_eq!(g1.edge_count(), 15);
        for v in 0..10 {
            assert_eq!(g1.degree(v), 3);
        }
        let edges1: Vec<_> = (0..g1.edge_count()).map(|e| g1.endpoints(EdgeId(e))).collect();
        let edges2: Vec<_> = (0..g2.edge_count()).map(|e| g2.endpoints(EdgeId(e))).collect();
        assert_eq!(edges1, edges2);
    }

    #[test]
    fn cubic_generation_rejects_bad_sizes() {
        assert!(random_cubic(3, 0, true).is_err());
        assert!(random_cubic(7, 0, true).is_err());
        assert!(random_cubic(2, 0, true).is_err());
    }

    #[test]
    fn simple_cubic_has_no_parallel_edges() {
        for seed in 0..20 {
            let g = random_cubic(8, seed, false).unwrap();
            let mut seen = std::collections::BTreeSet::new();
            for e in 0..g.edge_count() {
                assert!(seen.insert(g.endpoints(EdgeId(e))), "seed {seed} repeated an edge");
            }
        }
    }

    #[test]
    fn subcubic_generation_is_connected_and_bounded() {
        for seed in 0..30 {
            let g = random_subcubic(14, seed, true).unwrap();
            assert!(g.vertex_count() <= 14);
            assert!(g.edge_count() >= 1);
            assert!(g.is_subcubic());
            assert_eq!(g.connected_components().len(), 1, "seed {seed}");
        }
    }

    #[test]
    fn subcubic_generation_is_deterministic() {
        let g1 = random_subcubic(20, 99, true).unwrap();
        let g2 = random_subcubic(20, 99, true).unwrap();
        assert_eq!(g1.vertex_count(), g2.vertex_count());
        let edges1: Vec<_> = (0..g1.edge_count()).map(|e| g1.endpoints(EdgeId(e))).collect();
        let edges2: Vec<_> = (0..g2.edge_count()).map(|e| g2.endpoints(EdgeId(e))).collect();
        assert_eq!(edges1, edges2);
    }

    proptest! {
        #[test]
        fn generated_graphs_stay_subcubic(seed in 0u64..200, n in 4usize..24) {
            let g = random_subcubic(n, seed, seed % 2 == 0).unwrap();
            prop_assert!(g.is_subcubic());
            prop_assert!(g.vertex_count() <= n);
        }
    }
}
