//! Minimal vertex separators from the family lattice, a brute-force
//! separator oracle, and the reduced clique graph.
//!
//! A minimal separator is a vertex set that is an inclusion-minimal
//! `u`-`v` separator for some pair of vertices `u`, `v`.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::cliques::{CliqueGraph, EdgeId};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::lattice::FamilyLattice;
use crate::trees::{CliqueTree, CliqueTreeEnumerator};

/// Sorted vertex sets, each sorted.
pub type SeparatorSet = BTreeSet<Vec<VertexId>>;

/// Largest graph the brute-force oracle accepts.
pub const ORACLE_LIMIT: usize = 16;

/// `{Δ(F) : Δ(F) ≠ ∅ and B_F has at least two vertices}`.
pub fn minimal_separators_lattice(lattice: &FamilyLattice) -> SeparatorSet {
    lattice
        .families()
        .iter()
        .zip(lattice.all_graphs())
        .filter(|(fam, gr)| !fam.max_generator.is_empty() && gr.b.vertex_count() >= 2)
        .map(|(fam, _)| fam.max_generator.clone())
        .collect()
}

fn separates(g: &Graph, removed: &[bool], u: VertexId, v: VertexId) -> bool {
    let mut seen = removed.to_vec();
    seen[u] = true;
    let mut queue = VecDeque::from([u]);
    while let Some(x) = queue.pop_front() {
        for &w in g.neighbors(x) {
            if w == v {
                return false;
            }
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    true
}

/// Brute force over all candidate sets: for every non-adjacent pair
/// `u`, `v`, every subset `S` of the other vertices that separates them and
/// stays separating after no single-vertex removal (separation is monotone
/// under adding vertices, so this is inclusion-minimality). Works on any
/// graph up to [`ORACLE_LIMIT`] vertices.
pub fn minimal_separators_oracle(g: &Graph) -> Result<SeparatorSet> {
    let n = g.vertex_count();
    if n > ORACLE_LIMIT {
        return Err(Error::SizeGate {
            what: "separator oracle",
            n,
            limit: ORACLE_LIMIT,
        });
    }
    let mut out = SeparatorSet::new();
    for u in 0..n {
        for v in u + 1..n {
            if g.has_edge(u, v) {
                continue;
            }
            let others: Vec<VertexId> = (0..n).filter(|&x| x != u && x != v).collect();
            for mask in 0u32..(1 << others.len()) {
                let mut removed = vec![false; n];
                for (i, &x) in others.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        removed[x] = true;
                    }
                }
                if !separates(g, &removed, u, v) {
                    continue;
                }
                let minimal = others.iter().all(|&x| {
                    if !removed[x] {
                        return true;
                    }
                    removed[x] = false;
                    let still = separates(g, &removed, u, v);
                    removed[x] = true;
                    !still
                });
                if minimal {
                    out.insert(others.iter().copied().filter(|&x| removed[x]).collect());
                }
            }
        }
    }
    Ok(out)
}

/// Clique-graph edges whose label is a minimal separator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReducedCliqueGraph {
    pub edges: Vec<EdgeId>,
}

pub fn reduced_clique_graph(cg: &CliqueGraph, seps: &SeparatorSet) -> ReducedCliqueGraph {
    let edges = cg
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| seps.contains(&e.label))
        .map(|(i, _)| i)
        .collect();
    ReducedCliqueGraph { edges }
}

/// Clique-graph edges `K1K2` whose intersection separates `K1 ∖ K2` from
/// `K2 ∖ K1` in `g`. Checked directly by search in `G − (K1 ∩ K2)`.
pub fn separating_pair_edges(g: &Graph, cg: &CliqueGraph) -> Vec<EdgeId> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    for (i, e) in cg.edges().iter().enumerate() {
        let mut removed = vec![false; n];
        for &v in &e.label {
            removed[v] = true;
        }
        let (k1, k2) = (&cg.clique(e.a).members, &cg.clique(e.b).members);
        let mut seen = removed.clone();
        let mut queue: VecDeque<VertexId> = k1.iter().copied().filter(|&v| !removed[v]).collect();
        for &v in &queue {
            seen[v] = true;
        }
        let mut reached = false;
        while let Some(x) = queue.pop_front() {
            if k2.binary_search(&x).is_ok() {
                reached = true;
                break;
            }
            for &w in g.neighbors(x) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        if !reached {
            out.push(i);
        }
    }
    out
}

/// Clique-graph edges that join two different vertices of their `B_F`.
pub fn non_loop_edges(lattice: &FamilyLattice) -> Vec<EdgeId> {
    let mut out: Vec<EdgeId> = lattice
        .all_graphs()
        .iter()
        .flat_map(|gr| gr.b.edges().iter().filter(|e| !e.is_loop()).map(|e| e.label))
        .collect();
    out.sort_unstable();
    out
}

/// Union of all clique trees, and each tree's set of edge labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CliqueTreeUnion {
    pub edges: Vec<EdgeId>,
    pub label_sets: Vec<SeparatorSet>,
}

/// `{K1 ∩ K2 : K1K2 ∈ t}`.
pub fn tree_labels(cg: &CliqueGraph, t: &CliqueTree) -> SeparatorSet {
    t.edges.iter().map(|&e| cg.edge(e).label.clone()).collect()
}

/// Enumerates every clique tree; exponential in general, meant for small
/// graphs.
pub fn clique_tree_union(g: &Graph) -> Result<CliqueTreeUnion> {
    let lattice = std::sync::Arc::new(FamilyLattice::from_graph(g)?);
    let cg = lattice.clique_graph().clone();
    let mut used = vec![false; cg.edge_count()];
    let mut label_sets = Vec::new();
    for t in CliqueTreeEnumerator::new(lattice) {
        for &e in &t.edges {
            used[e] = true;
        }
        label_sets.push(tree_labels(&cg, &t));
    }
    let edges = (0..used.len()).filter(|&e| used[e]).collect();
    Ok(CliqueTreeUnion { edges, label_sets })
}
