//! Four independent characterisations of clique trees, each returning a
//! structured witness on failure: the defining induced-subtree condition,
//! the clique intersection property, the running intersection property and
//! the family-local maximum weight condition.

use std::collections::VecDeque;

use serde::Serialize;
use thiserror::Error;

use crate::cliques::{CliqueGraph, CliqueId, EdgeId};
use crate::graph::VertexId;
use crate::lattice::{FamilyId, FamilyLattice};
use crate::trees::CliqueTree;
use crate::util::{forest_shape, intersect_sorted, is_subset_sorted, union_sorted, DisjointSets, ForestShape};

/// Why an edge set fails to be a spanning tree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Error)]
pub enum TreeDefect {
    #[error("edge {0} does not belong here")]
    ForeignEdge(EdgeId),
    #[error("edge {0} is a loop")]
    Loop(EdgeId),
    #[error("edge {0} closes a cycle")]
    Cycle(EdgeId),
    #[error("{0} components")]
    Disconnected(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Error)]
pub enum Violation {
    #[error("edge id {0} is not a clique-graph edge")]
    UnknownEdge(EdgeId),
    #[error("edge {0} listed twice")]
    RepeatedEdge(EdgeId),
    #[error("not a spanning tree of the clique graph: {0}")]
    NotSpanning(TreeDefect),
    #[error("cliques containing vertex {vertex} do not induce a tree: {defect}")]
    VertexSubtree { vertex: VertexId, defect: TreeDefect },
    #[error("family {family}: {defect}")]
    FamilyTree { family: FamilyId, defect: TreeDefect },
    #[error("clique {k3} lies between {k1} and {k2} but misses part of their intersection")]
    Cip {
        k1: CliqueId,
        k2: CliqueId,
        k3: CliqueId,
    },
    #[error("running intersection fails at position {position} (clique {clique})")]
    Rip { position: usize, clique: CliqueId },
    #[error("enumeration is not a permutation of the cliques")]
    BadEnumeration,
    #[error("family {family}: induced weight {weight} below maximum {max}")]
    MaxWeight {
        family: FamilyId,
        weight: usize,
        max: usize,
    },
}

/// `Ok` on pass, the first violation found otherwise.
pub type Verdict = Result<(), Violation>;

/// Checks that `t` uses distinct clique-graph edges forming a spanning tree.
pub fn check_spanning(cg: &CliqueGraph, t: &CliqueTree) -> Verdict {
    let mut seen = vec![false; cg.edge_count()];
    for &e in &t.edges {
        if e >= cg.edge_count() {
            return Err(Violation::UnknownEdge(e));
        }
        if std::mem::replace(&mut seen[e], true) {
            return Err(Violation::RepeatedEdge(e));
        }
    }
    let endpoints = t.edges.iter().map(|&e| (cg.edge(e).a, cg.edge(e).b));
    match forest_shape(cg.clique_count(), endpoints) {
        ForestShape::Tree => Ok(()),
        ForestShape::Cyclic(pos) => Err(Violation::NotSpanning(TreeDefect::Cycle(t.edges[pos]))),
        ForestShape::Disconnected(k) => Err(Violation::NotSpanning(TreeDefect::Disconnected(k))),
    }
}

/// Shape of the subgraph of `t` induced on the clique set `members`.
fn induced_shape(cg: &CliqueGraph, t: &CliqueTree, members: &[CliqueId]) -> Result<Vec<EdgeId>, TreeDefect> {
    let pos = |k: CliqueId| members.binary_search(&k).ok();
    let mut inside = Vec::new();
    let mut endpoints = Vec::new();
    for &e in &t.edges {
        let edge = cg.edge(e);
        if let (Some(a), Some(b)) = (pos(edge.a), pos(edge.b)) {
            inside.push(e);
            endpoints.push((a, b));
        }
    }
    match forest_shape(members.len(), endpoints) {
        ForestShape::Tree => Ok(inside),
        ForestShape::Cyclic(p) => Err(TreeDefect::Cycle(inside[p])),
        ForestShape::Disconnected(k) => Err(TreeDefect::Disconnected(k)),
    }
}

/// `t` is a spanning tree and `t[F(v)]` is a tree for every vertex `v`.
pub fn validate_definition(cg: &CliqueGraph, t: &CliqueTree) -> Verdict {
    check_spanning(cg, t)?;
    for v in 0..cg.vertex_count() {
        induced_shape(cg, t, cg.cliques_containing(v))
            .map_err(|defect| Violation::VertexSubtree { vertex: v, defect })?;
    }
    Ok(())
}

/// `t[F]` is a tree for every family `F` of the lattice.
pub fn validate_family_trees(lattice: &FamilyLattice, t: &CliqueTree) -> Verdict {
    let cg = lattice.clique_graph();
    check_spanning(cg, t)?;
    for (f, fam) in lattice.families().iter().enumerate() {
        induced_shape(cg, t, &fam.members).map_err(|defect| Violation::FamilyTree { family: f, defect })?;
    }
    Ok(())
}

fn tree_adjacency(cg: &CliqueGraph, t: &CliqueTree) -> Vec<Vec<CliqueId>> {
    let mut adj = vec![Vec::new(); cg.clique_count()];
    for &e in &t.edges {
        let edge = cg.edge(e);
        adj[edge.a].push(edge.b);
        adj[edge.b].push(edge.a);
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    adj
}

/// BFS parents from `root`; children visited in ascending clique id.
fn bfs(adj: &[Vec<CliqueId>], root: CliqueId) -> (Vec<CliqueId>, Vec<Option<CliqueId>>) {
    let mut parent = vec![None; adj.len()];
    let mut seen = vec![false; adj.len()];
    let mut order = vec![root];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &w in &adj[u] {
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some(u);
                order.push(w);
                queue.push_back(w);
            }
        }
    }
    (order, parent)
}

/// Clique intersection property: for all cliques `K1`, `K2` and every `K3`
/// on the `t`-path between them, `K1 ∩ K2 ⊆ K3`.
pub fn validate_cip(cg: &CliqueGraph, t: &CliqueTree) -> Verdict {
    check_spanning(cg, t)?;
    let adj = tree_adjacency(cg, t);
    let k = cg.clique_count();
    for k1 in 0..k {
        let (_, parent) = bfs(&adj, k1);
        for k2 in k1 + 1..k {
            let common = intersect_sorted(&cg.clique(k1).members, &cg.clique(k2).members);
            if common.is_empty() {
                continue;
            }
            let mut x = parent[k2].expect("spanning tree is connected");
            while x != k1 {
                if !is_subset_sorted(&common, &cg.clique(x).members) {
                    return Err(Violation::Cip { k1, k2, k3: x });
                }
                x = parent[x].expect("path leads back to the root");
            }
        }
    }
    Ok(())
}

/// Clique enumeration with, for every position after the first, the
/// position of its tree parent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RipOrdering {
    pub order: Vec<CliqueId>,
    /// `parents[n]` is the position of the parent of `order[n]`; `None`
    /// only at position 0.
    pub parents: Vec<Option<usize>>,
}

/// Breadth-first enumeration of `t` from `root`. The parent links are
/// exactly the edges of `t`.
pub fn rip_ordering(cg: &CliqueGraph, t: &CliqueTree, root: CliqueId) -> Result<RipOrdering, Violation> {
    check_spanning(cg, t)?;
    let adj = tree_adjacency(cg, t);
    let (order, parent) = bfs(&adj, root);
    let mut position = vec![0; order.len()];
    for (i, &k) in order.iter().enumerate() {
        position[k] = i;
    }
    let parents = order.iter().map(|&k| parent[k].map(|p| position[p])).collect();
    Ok(RipOrdering { order, parents })
}

/// Running intersection property of an enumeration `K_1, K_2, ...`: every
/// `K_n ∩ (K_1 ∪ ... ∪ K_{n-1})` lies in some earlier `K_i`. When `parents`
/// is given, `K_i` must be the listed parent; otherwise the earliest
/// fitting predecessor is chosen. Returns the witness position `i(n)` for
/// each position `n >= 1` (0-based; entry 0 is `None`). Violations report
/// 1-based positions.
pub fn validate_rip(
    cg: &CliqueGraph,
    order: &[CliqueId],
    parents: Option<&[Option<usize>]>,
) -> Result<Vec<Option<usize>>, Violation> {
    let k = cg.clique_count();
    let mut seen = vec![false; k];
    if order.len() != k || order.iter().any(|&c| c >= k || std::mem::replace(&mut seen[c], true)) {
        return Err(Violation::BadEnumeration);
    }
    if parents.is_some_and(|p| p.len() != k) {
        return Err(Violation::BadEnumeration);
    }
    let mut witnesses = vec![None; k];
    let mut running: Vec<VertexId> = match order.first() {
        Some(&c) => cg.clique(c).members.clone(),
        None => return Ok(witnesses),
    };
    for n in 1..k {
        let clique = &cg.clique(order[n]).members;
        let overlap = intersect_sorted(clique, &running);
        let fits = |i: usize| is_subset_sorted(&overlap, &cg.clique(order[i]).members);
        let witness = match parents {
            Some(p) => p[n].filter(|&i| i < n && fits(i)),
            None => (0..n).find(|&i| fits(i)),
        };
        match witness {
            Some(i) => witnesses[n] = Some(i),
            None => {
                return Err(Violation::Rip {
                    position: n + 1,
                    clique: order[n],
                })
            }
        }
        running = union_sorted(&running, clique);
    }
    Ok(witnesses)
}

/// Does some root make the breadth-first enumeration of `t` satisfy the
/// running intersection property with `t`'s own edges as witnesses?
pub fn rip_root(cg: &CliqueGraph, t: &CliqueTree) -> Result<Option<CliqueId>, Violation> {
    check_spanning(cg, t)?;
    for root in 0..cg.clique_count() {
        let ordering = rip_ordering(cg, t, root)?;
        if validate_rip(cg, &ordering.order, Some(&ordering.parents)).is_ok() {
            return Ok(Some(root));
        }
    }
    Ok(None)
}

/// Maximum total weight `Σ |K1 ∩ K2|` of a spanning tree of the clique
/// graph induced on `members` (Kruskal). `None` if that graph is
/// disconnected.
fn max_weight_spanning(cg: &CliqueGraph, members: &[CliqueId]) -> Option<usize> {
    let pos = |k: CliqueId| members.binary_search(&k).ok();
    let mut edges: Vec<(usize, usize, usize)> = cg
        .edges()
        .iter()
        .filter_map(|e| Some((e.label.len(), pos(e.a)?, pos(e.b)?)))
        .collect();
    edges.sort_by_key(|x| std::cmp::Reverse(x.0));
    let mut dsu = DisjointSets::new(members.len());
    let mut total = 0;
    for (w, a, b) in edges {
        if dsu.union(a, b) {
            total += w;
        }
    }
    (dsu.components() <= 1).then_some(total)
}

/// For every family `F`, `t[F]` is a spanning tree of the clique graph on
/// `F` of maximum weight, with weight `|K1 ∩ K2|` per edge.
pub fn validate_local_max_weight(lattice: &FamilyLattice, t: &CliqueTree) -> Verdict {
    let cg = lattice.clique_graph();
    check_spanning(cg, t)?;
    for (f, fam) in lattice.families().iter().enumerate() {
        let weight = induced_weight(cg, t, &fam.members);
        let max = max_weight_spanning(cg, &fam.members).expect("clique families induce connected subgraphs");
        if weight < max {
            return Err(Violation::MaxWeight { family: f, weight, max });
        }
        // t[F] is a forest, so reaching the maximum weight forces a tree.
        induced_shape(cg, t, &fam.members).map_err(|defect| Violation::FamilyTree { family: f, defect })?;
    }
    Ok(())
}

/// Total weight `Σ |K1 ∩ K2|` of the edges of `t` inside `members`.
pub fn induced_weight(cg: &CliqueGraph, t: &CliqueTree, members: &[CliqueId]) -> usize {
    t.edges
        .iter()
        .map(|&e| cg.edge(e))
        .filter(|e| members.binary_search(&e.a).is_ok() && members.binary_search(&e.b).is_ok())
        .map(|e| e.label.len())
        .sum()
}

/// Maximum weight over spanning trees of the clique graph induced on
/// `members`; `None` if that induced graph is disconnected.
pub fn max_induced_weight(cg: &CliqueGraph, members: &[CliqueId]) -> Option<usize> {
    max_weight_spanning(cg, members)
}

/// Outcome of all four validators on one tree.
#[derive(Clone, Debug, Serialize)]
pub struct Validation {
    pub definition: Verdict,
    pub cip: Verdict,
    /// Root whose breadth-first order realises the tree, if any.
    pub rip: Result<Option<CliqueId>, Violation>,
    pub max_weight: Verdict,
}

impl Validation {
    pub fn rip_passed(&self) -> bool {
        matches!(self.rip, Ok(Some(_)))
    }

    pub fn all_pass(&self) -> bool {
        self.definition.is_ok() && self.cip.is_ok() && self.rip_passed() && self.max_weight.is_ok()
    }

    pub fn all_agree(&self) -> bool {
        let d = self.definition.is_ok();
        d == self.cip.is_ok() && d == self.rip_passed() && d == self.max_weight.is_ok()
    }
}

pub fn validate_all(lattice: &FamilyLattice, t: &CliqueTree) -> Validation {
    let cg = lattice.clique_graph();
    Validation {
        definition: validate_definition(cg, t),
        cip: validate_cip(cg, t),
        rip: rip_root(cg, t),
        max_weight: validate_local_max_weight(lattice, t),
    }
}
