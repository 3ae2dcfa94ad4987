//! Tree orders built from a rooted clique tree, and their verification.

use std::cmp::Reverse;
use std::collections::VecDeque;

use serde::Serialize;

use crate::cliques::{CliqueGraph, CliqueId};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::trees::CliqueTree;
use crate::validate::validate_definition;

/// A strict partial order on the vertices together with a linear extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeOrder {
    root_clique: Option<CliqueId>,
    anchors: Vec<CliqueId>,
    less: Vec<Vec<bool>>,
    linear: Vec<VertexId>,
    rank: Vec<usize>,
}

impl TreeOrder {
    /// Transitive closure of `pairs` (`(v, w)` meaning `v ≺ w`). A cycle is
    /// rejected. The linear extension takes the smallest available id first.
    pub fn from_relation(n: usize, pairs: &[(VertexId, VertexId)]) -> Result<Self> {
        let mut less = vec![vec![false; n]; n];
        for &(v, w) in pairs {
            if v >= n || w >= n {
                return Err(Error::InvalidVertex(v.max(w)));
            }
            less[v][w] = true;
        }
        for k in 0..n {
            let through = less[k].clone();
            for row in less.iter_mut() {
                if row[k] {
                    for (cell, &reach) in row.iter_mut().zip(&through) {
                        *cell |= reach;
                    }
                }
            }
        }
        if let Some(v) = (0..n).find(|&v| less[v][v]) {
            return Err(Error::InvalidOrder(format!("vertex {v} lies on a cycle")));
        }
        let mut indegree: Vec<usize> = (0..n).map(|w| (0..n).filter(|&v| less[v][w]).count()).collect();
        let mut linear = Vec::with_capacity(n);
        let mut done = vec![false; n];
        while linear.len() < n {
            let v = (0..n).find(|&v| !done[v] && indegree[v] == 0).expect("acyclic relation");
            done[v] = true;
            linear.push(v);
            for w in 0..n {
                if less[v][w] {
                    indegree[w] -= 1;
                }
            }
        }
        Ok(Self::assemble(None, Vec::new(), less, linear))
    }

    /// The chain `order[0] ≺ order[1] ≺ ...`.
    pub fn total(order: &[VertexId]) -> Result<Self> {
        let n = order.len();
        let mut seen = vec![false; n];
        for &v in order {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidOrder("not a permutation".into()));
            }
        }
        let pairs: Vec<_> = order.windows(2).map(|w| (w[0], w[1])).collect();
        Self::from_relation(n, &pairs)
    }

    fn assemble(
        root_clique: Option<CliqueId>,
        anchors: Vec<CliqueId>,
        less: Vec<Vec<bool>>,
        linear: Vec<VertexId>,
    ) -> Self {
        let mut rank = vec![0; linear.len()];
        for (i, &v) in linear.iter().enumerate() {
            rank[v] = i;
        }
        TreeOrder {
            root_clique,
            anchors,
            less,
            linear,
            rank,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.linear.len()
    }

    pub fn root_clique(&self) -> Option<CliqueId> {
        self.root_clique
    }

    /// Clique of `F(v)` nearest the root; `None` for orders not built from
    /// a clique tree.
    pub fn anchor(&self, v: VertexId) -> Option<CliqueId> {
        self.anchors.get(v).copied()
    }

    /// `v ≺ w`.
    pub fn precedes(&self, v: VertexId, w: VertexId) -> bool {
        self.less[v][w]
    }

    /// `v ≼ w`.
    pub fn precedes_eq(&self, v: VertexId, w: VertexId) -> bool {
        v == w || self.less[v][w]
    }

    pub fn comparable(&self, v: VertexId, w: VertexId) -> bool {
        self.precedes_eq(v, w) || self.less[w][v]
    }

    /// Vertices in an order refining `≺`.
    pub fn linear_extension(&self) -> &[VertexId] {
        &self.linear
    }

    /// Position of `v` in the linear extension.
    pub fn rank(&self, v: VertexId) -> usize {
        self.rank[v]
    }

    /// `N⁻(v) = ↓v ∩ N(v)`.
    pub fn lesser_neighbours(&self, g: &Graph, v: VertexId) -> Vec<VertexId> {
        g.neighbors(v).iter().copied().filter(|&w| self.less[w][v]).collect()
    }

    /// `↓v = {w : w ≼ v}`.
    pub fn downward_set(&self, v: VertexId) -> Vec<VertexId> {
        (0..self.vertex_count()).filter(|&w| self.precedes_eq(w, v)).collect()
    }

    /// Maximal elements of `w_set`.
    pub fn max_elements(&self, w_set: &[VertexId]) -> Vec<VertexId> {
        let mut out: Vec<VertexId> = w_set
            .iter()
            .copied()
            .filter(|&v| !w_set.iter().any(|&u| self.less[v][u]))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// `N⁻(W) = (∪_{v ∈ W} N⁻(v)) ∖ W`.
    pub fn lesser_boundary(&self, g: &Graph, w_set: &[VertexId]) -> Vec<VertexId> {
        let mut inside = vec![false; self.vertex_count()];
        for &v in w_set {
            inside[v] = true;
        }
        let mut out: Vec<VertexId> = w_set
            .iter()
            .flat_map(|&v| self.lesser_neighbours(g, v))
            .filter(|&w| !inside[w])
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Roots `t` at `root` and orders vertices by the position of their anchor
/// cliques. `tie_break` lists all vertices; earlier means smaller when two
/// anchors coincide.
pub fn build_tree_order(
    g: &Graph,
    cg: &CliqueGraph,
    t: &CliqueTree,
    root: CliqueId,
    tie_break: &[VertexId],
) -> Result<TreeOrder> {
    let n = g.vertex_count();
    if cg.vertex_count() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: cg.vertex_count(),
        });
    }
    let m = cg.clique_count();
    if root >= m {
        return Err(Error::InvalidClique(root));
    }
    validate_definition(cg, t).map_err(Error::NotACliqueTree)?;
    let mut tie_rank = vec![usize::MAX; n];
    for (i, &v) in tie_break.iter().enumerate() {
        if v >= n || tie_rank[v] != usize::MAX {
            return Err(Error::InvalidOrder("tie-break is not a permutation".into()));
        }
        tie_rank[v] = i;
    }
    if tie_break.len() != n {
        return Err(Error::InvalidOrder("tie-break is not a permutation".into()));
    }

    let mut adj = vec![Vec::new(); m];
    for (a, b) in t.clique_pairs(cg) {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut depth = vec![usize::MAX; m];
    let mut parent = vec![None; m];
    depth[root] = 0;
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if depth[y] == usize::MAX {
                depth[y] = depth[x] + 1;
                parent[y] = Some(x);
                queue.push_back(y);
            }
        }
    }

    let anchors: Vec<CliqueId> = (0..n)
        .map(|v| {
            *cg.cliques_containing(v)
                .iter()
                .min_by_key(|&&k| depth[k])
                .expect("every vertex lies in a clique")
        })
        .collect();
    let strictly_below = |x: CliqueId, y: CliqueId| {
        let mut cur = parent[x];
        while let Some(z) = cur {
            if z == y {
                return true;
            }
            cur = parent[z];
        }
        false
    };
    let less: Vec<Vec<bool>> = (0..n)
        .map(|v| {
            (0..n)
                .map(|w| {
                    let (xv, xw) = (anchors[v], anchors[w]);
                    if xv == xw {
                        tie_rank[v] < tie_rank[w]
                    } else {
                        strictly_below(xv, xw)
                    }
                })
                .collect()
        })
        .collect();
    let mut linear: Vec<VertexId> = (0..n).collect();
    linear.sort_by_key(|&v| (Reverse(depth[anchors[v]]), anchors[v], tie_rank[v]));
    Ok(TreeOrder::assemble(Some(root), anchors, less, linear))
}

/// First violated condition found by [`verify_tree_order`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, thiserror::Error)]
pub enum OrderViolation {
    #[error("order is not irreflexive at {0}")]
    Reflexive(VertexId),
    #[error("order is not transitive: {0} < {1} < {2}")]
    NotTransitive(VertexId, VertexId, VertexId),
    #[error("order is not antisymmetric on {0}, {1}")]
    NotAntisymmetric(VertexId, VertexId),
    #[error("linear extension does not refine the order at {0} < {1}")]
    BadExtension(VertexId, VertexId),
    #[error("common lower bound {w} of incomparable {u}, {v}")]
    TreeOrder { w: VertexId, u: VertexId, v: VertexId },
    #[error("edge {u}{v} joins incomparable vertices")]
    EdgeIncomparable { u: VertexId, v: VertexId },
    #[error("chain {w} <= {u} <= {v} with edge {v}{w} but no edge {u}{v}")]
    Chain { w: VertexId, u: VertexId, v: VertexId },
}

/// Checks the partial-order axioms, the tree-order law, edge
/// comparability and the chain condition, exhaustively.
pub fn verify_tree_order(g: &Graph, o: &TreeOrder) -> Result<(), OrderViolation> {
    let n = o.vertex_count();
    assert_eq!(g.vertex_count(), n, "order and graph differ in size");
    for v in 0..n {
        if o.precedes(v, v) {
            return Err(OrderViolation::Reflexive(v));
        }
    }
    for a in 0..n {
        for b in 0..n {
            if !o.precedes(a, b) {
                continue;
            }
            if o.precedes(b, a) {
                return Err(OrderViolation::NotAntisymmetric(a, b));
            }
            if o.rank(a) > o.rank(b) {
                return Err(OrderViolation::BadExtension(a, b));
            }
            if let Some(c) = (0..n).find(|&c| o.precedes(b, c) && !o.precedes(a, c)) {
                return Err(OrderViolation::NotTransitive(a, b, c));
            }
        }
    }
    for w in 0..n {
        for u in 0..n {
            for v in u + 1..n {
                if o.precedes_eq(w, u) && o.precedes_eq(w, v) && !o.comparable(u, v) {
                    return Err(OrderViolation::TreeOrder { w, u, v });
                }
            }
        }
    }
    for (u, v) in g.edges() {
        if !o.comparable(u, v) {
            return Err(OrderViolation::EdgeIncomparable { u, v });
        }
    }
    for w in 0..n {
        for u in 0..n {
            if u == w || !o.precedes(w, u) {
                continue;
            }
            for &v in g.neighbors(w) {
                if v != u && o.precedes(u, v) && !g.has_edge(u, v) {
                    return Err(OrderViolation::Chain { w, u, v });
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cliques::build_clique_graph;
    use crate::trees::enumerate_clique_trees;

    fn first_tree(g: &Graph) -> (CliqueGraph, CliqueTree) {
        let cg = build_clique_graph(g).unwrap();
        let t = enumerate_clique_trees(g).unwrap().next().unwrap();
        (cg, t)
    }

    fn ids(n: usize) -> Vec<VertexId> {
        (0..n).collect()
    }

    #[test]
    fn path_example() {
        // vertices 1, 2, 3 are ids 0, 1, 2; cliques A = {0, 1}, B = {1, 2}
        let g = Graph::path(3);
        let (cg, t) = first_tree(&g);
        let a = cg.find_clique(&[0, 1]).unwrap();
        let b = cg.find_clique(&[1, 2]).unwrap();
        let o = build_tree_order(&g, &cg, &t, a, &ids(3)).unwrap();
        assert_eq!(o.anchor(0), Some(a));
        assert_eq!(o.anchor(1), Some(a));
        assert_eq!(o.anchor(2), Some(b));
        assert!(o.precedes(2, 0) && o.precedes(0, 1) && o.precedes(2, 1));
        assert_eq!(o.linear_extension(), &[2, 0, 1]);
        assert_eq!(verify_tree_order(&g, &o), Ok(()));

        assert_eq!(o.lesser_neighbours(&g, 1), vec![0, 2]);
        assert_eq!(o.downward_set(2), vec![2]);
        assert_eq!(o.max_elements(&[0, 2]), vec![0]);
        assert_eq!(o.max_elements(&[0, 1, 2]), vec![1]);
        assert_eq!(o.lesser_boundary(&g, &[1]), vec![0, 2]);
        assert!(o.lesser_neighbours(&g, 2).is_empty());
    }

    #[test]
    fn trivial_orders() {
        let g = Graph::empty(1);
        let (cg, t) = first_tree(&g);
        let o = build_tree_order(&g, &cg, &t, 0, &[0]).unwrap();
        assert_eq!(o.linear_extension(), &[0]);
        assert_eq!(verify_tree_order(&g, &o), Ok(()));

        let g = Graph::complete(3);
        let (cg, t) = first_tree(&g);
        let o = build_tree_order(&g, &cg, &t, 0, &[2, 0, 1]).unwrap();
        assert_eq!(o.linear_extension(), &[2, 0, 1]);
        assert!(o.precedes(2, 0) && o.precedes(0, 1));
    }

    #[test]
    fn partial_order_fails_on_edge() {
        let g = Graph::path(3);
        let o = TreeOrder::from_relation(3, &[(0, 2)]).unwrap();
        assert_eq!(
            verify_tree_order(&g, &o),
            Err(OrderViolation::EdgeIncomparable { u: 0, v: 1 })
        );
    }

    #[test]
    fn total_orders_on_complete_graph_pass() {
        let g = Graph::complete(4);
        for order in [[0, 1, 2, 3], [3, 1, 0, 2], [2, 3, 1, 0]] {
            let o = TreeOrder::total(&order).unwrap();
            assert_eq!(verify_tree_order(&g, &o), Ok(()));
        }
    }

    #[test]
    fn chain_violation_detected() {
        // 1 < 0 < 2 on the path 0-1-2: edge 12 but no edge 02
        let g = Graph::path(3);
        let o = TreeOrder::total(&[1, 0, 2]).unwrap();
        assert_eq!(
            verify_tree_order(&g, &o),
            Err(OrderViolation::Chain { w: 1, u: 0, v: 2 })
        );
        assert!(verify_tree_order(&g, &TreeOrder::total(&[0, 2, 1]).unwrap()).is_ok());
    }

    #[test]
    fn tree_order_law_violation_detected() {
        let g = Graph::empty(3);
        let o = TreeOrder::from_relation(3, &[(0, 1), (0, 2)]).unwrap();
        assert_eq!(
            verify_tree_order(&g, &o),
            Err(OrderViolation::TreeOrder { w: 0, u: 1, v: 2 })
        );
    }

    #[test]
    fn cyclic_relation_rejected() {
        assert!(TreeOrder::from_relation(2, &[(0, 1), (1, 0)]).is_err());
        assert!(TreeOrder::total(&[0, 0]).is_err());
    }

    #[test]
    fn bad_inputs_rejected() {
        let g = Graph::path(3);
        let (cg, t) = first_tree(&g);
        assert!(build_tree_order(&g, &cg, &t, 5, &ids(3)).is_err());
        assert!(build_tree_order(&g, &cg, &t, 0, &[0, 1]).is_err());
        assert!(build_tree_order(&g, &cg, &t, 0, &[0, 1, 1]).is_err());
        assert!(build_tree_order(&g, &cg, &CliqueTree::new(vec![]), 0, &ids(3)).is_err());
    }
}
