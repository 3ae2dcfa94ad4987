//! Small chordal graphs for tests and benchmarks: exhaustive lists and a
//! seeded random generator.

use rand::Rng;

use crate::recognition::chordality;
use crate::cliques::build_clique_graph;
use crate::graph::{Graph, VertexId};

/// Largest order for which [`connected_chordal_graphs`] enumerates.
pub const EXHAUSTIVE_LIMIT: usize = 7;

/// Every connected chordal graph on vertex ids `0..n` (labelled, so
/// isomorphic copies are listed separately), by filtering all edge sets.
pub fn connected_chordal_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= EXHAUSTIVE_LIMIT, "exhaustive enumeration limited to {EXHAUSTIVE_LIMIT} vertices");
    let pairs: Vec<(VertexId, VertexId)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let g = Graph::from_edges(n, &edges).expect("valid pairs");
        if g.is_connected() && chordality(&g).is_chordal() {
            out.push(g);
        }
    }
    out
}

/// Random connected chordal graph on `n ≥ 1` vertices: each new vertex is
/// joined to a non-empty random subset of a random maximal clique, so it
/// is simplicial when added.
pub fn random_chordal<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Graph {
    assert!(n >= 1);
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    for v in 1..n {
        let g = Graph::from_edges(v, &edges).expect("valid edges");
        let cg = build_clique_graph(&g).expect("connected chordal");
        let clique = &cg.clique(rng.random_range(0..cg.clique_count())).members;
        let anchor = clique[rng.random_range(0..clique.len())];
        for &w in clique {
            if w == anchor || rng.random_bool(0.5) {
                edges.push((w, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("valid edges")
}
