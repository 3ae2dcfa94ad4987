//! Maximal cliques of a chordal graph and the intersection-labelled clique
//! graph.

use std::collections::HashMap;

use serde::Serialize;

use crate::recognition::{require_chordal, Peo};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::util::{intersect_sorted, is_subset_sorted};

/// Index of a clique within a [`CliqueGraph`].
pub type CliqueId = usize;
/// Index of an edge within a [`CliqueGraph`].
pub type EdgeId = usize;

/// Maximal complete vertex set, members sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Clique {
    pub members: Vec<VertexId>,
}

impl Clique {
    pub fn contains(&self, v: VertexId) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Maximal cliques from a perfect elimination ordering: every maximal clique
/// is `{v} ∪ later_neighbours(v)` for some `v`, so the candidates are filtered
/// for inclusion-maximality. Sorted lexicographically by member list.
pub fn enumerate_cliques(g: &Graph, peo: &Peo) -> Result<Vec<Clique>> {
    // Revalidate: `peo` may have been built for a different graph.
    let peo = Peo::new(g, peo.order().to_vec())?;
    let mut candidates: Vec<Vec<VertexId>> = peo
        .order()
        .iter()
        .map(|&v| {
            let mut c = peo.later_neighbors(g, v);
            c.push(v);
            c.sort_unstable();
            c
        })
        .collect();
    candidates.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    candidates.dedup();
    let mut maximal: Vec<Vec<VertexId>> = Vec::new();
    for c in candidates {
        if !maximal.iter().any(|m| is_subset_sorted(&c, m)) {
            maximal.push(c);
        }
    }
    let mut cliques: Vec<Clique> = maximal.into_iter().map(|members| Clique { members }).collect();
    cliques.sort();
    Ok(cliques)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CliqueEdge {
    pub a: CliqueId,
    pub b: CliqueId,
    /// `cliques[a] ∩ cliques[b]`, non-empty and sorted.
    pub label: Vec<VertexId>,
}

/// Graph on the cliques with an edge for every intersecting pair, labelled
/// by the intersection. Edges are ordered lexicographically by `(a, b)`
/// with `a < b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueGraph {
    vertex_count: usize,
    cliques: Vec<Clique>,
    edges: Vec<CliqueEdge>,
    edge_index: HashMap<(CliqueId, CliqueId), EdgeId>,
    /// `containing[v]` = cliques containing `v`, ascending.
    containing: Vec<Vec<CliqueId>>,
}

impl CliqueGraph {
    /// Builds the clique graph from a clique list over `vertex_count`
    /// vertices. The list is sorted into canonical order first.
    pub fn from_cliques(vertex_count: usize, mut cliques: Vec<Clique>) -> Self {
        cliques.sort();
        let mut edges = Vec::new();
        let mut edge_index = HashMap::new();
        for a in 0..cliques.len() {
            for b in a + 1..cliques.len() {
                let label = intersect_sorted(&cliques[a].members, &cliques[b].members);
                if !label.is_empty() {
                    edge_index.insert((a, b), edges.len());
                    edges.push(CliqueEdge { a, b, label });
                }
            }
        }
        let mut containing = vec![Vec::new(); vertex_count];
        for (k, clique) in cliques.iter().enumerate() {
            for &v in &clique.members {
                containing[v].push(k);
            }
        }
        CliqueGraph {
            vertex_count,
            cliques,
            edges,
            edge_index,
            containing,
        }
    }

    pub fn cliques(&self) -> &[Clique] {
        &self.cliques
    }

    pub fn clique(&self, k: CliqueId) -> &Clique {
        &self.cliques[k]
    }

    pub fn clique_count(&self) -> usize {
        self.cliques.len()
    }

    pub fn edges(&self) -> &[CliqueEdge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &CliqueEdge {
        &self.edges[e]
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Number of vertices of the underlying graph.
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_between(&self, a: CliqueId, b: CliqueId) -> Option<EdgeId> {
        self.edge_index.get(&(a.min(b), a.max(b))).copied()
    }

    /// `F(v)`: the cliques containing `v`.
    pub fn cliques_containing(&self, v: VertexId) -> &[CliqueId] {
        &self.containing[v]
    }

    /// Clique with exactly these (sorted) members.
    pub fn find_clique(&self, members: &[VertexId]) -> Option<CliqueId> {
        self.cliques
            .binary_search_by(|c| c.members.as_slice().cmp(members))
            .ok()
    }

    /// Cliques containing every vertex of `set`, ascending.
    pub fn cliques_containing_all(&self, set: &[VertexId]) -> Vec<CliqueId> {
        (0..self.cliques.len())
            .filter(|&k| is_subset_sorted(set, &self.cliques[k].members))
            .collect()
    }
}

/// Clique graph of a connected chordal graph.
pub fn build_clique_graph(g: &Graph) -> Result<CliqueGraph> {
    let peo = require_chordal(g)?;
    let cliques = enumerate_cliques(g, &peo)?;
    Ok(CliqueGraph::from_cliques(g.vertex_count(), cliques))
}

/// Checks the clique graph invariants against `g`.
pub fn check_clique_graph(g: &Graph, cg: &CliqueGraph) -> Result<()> {
    for clique in cg.cliques() {
        if !g.is_complete_set(&clique.members) {
            return Err(Error::NotComplete(clique.members.clone()));
        }
        let extendable = g.vertices().any(|v| {
            !clique.contains(v) && clique.members.iter().all(|&u| g.has_edge(u, v))
        });
        if extendable {
            return Err(Error::NotComplete(clique.members.clone()));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;

    fn names(g: &Graph, c: &Clique) -> Vec<String> {
        g.names_of(&c.members)
    }

    #[test]
    fn example_graph_cliques() {
        let g = parse_graph("v1 v2\nv2 v3\nv1 v3\nv3 v4").unwrap().graph;
        let cg = build_clique_graph(&g).unwrap();
        let got: Vec<_> = cg.cliques().iter().map(|c| names(&g, c)).collect();
        assert_eq!(got, vec![vec!["v1", "v2", "v3"], vec!["v3", "v4"]]);
        assert_eq!(cg.edge_count(), 1);
        assert_eq!(g.names_of(&cg.edge(0).label), vec!["v3"]);
        check_clique_graph(&g, &cg).unwrap();
    }

    #[test]
    fn single_edge() {
        let g = Graph::path(2);
        let cg = build_clique_graph(&g).unwrap();
        assert_eq!(cg.cliques(), &[Clique { members: vec![0, 1] }]);
    }

    #[test]
    fn star_cliques_and_clique_graph() {
        // centre 0, leaves 1, 2, 3
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let cg = build_clique_graph(&g).unwrap();
        let members: Vec<_> = cg.cliques().iter().map(|c| c.members.clone()).collect();
        assert_eq!(members, vec![vec![0, 1], vec![0, 2], vec![0, 3]]);
        assert_eq!(cg.edge_count(), 3);
        assert!(cg.edges().iter().all(|e| e.label == vec![0]));
    }

    #[test]
    fn complete_graph_has_one_clique() {
        let cg = build_clique_graph(&Graph::complete(4)).unwrap();
        assert_eq!(cg.clique_count(), 1);
        assert_eq!(cg.edge_count(), 0);
    }

    #[test]
    fn non_chordal_rejected() {
        assert!(matches!(
            build_clique_graph(&Graph::cycle(5)),
            Err(Error::NotChordal(_))
        ));
    }

    #[test]
    fn invalid_peo_rejected() {
        let g = Graph::path(3);
        let peo = Peo::new(&Graph::complete(3), vec![1, 0, 2]).unwrap();
        assert!(matches!(
            enumerate_cliques(&g, &peo),
            Err(Error::InvalidPeo { vertex: 1 })
        ));
    }
}
