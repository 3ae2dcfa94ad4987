//! Spanning trees of the contraction multigraphs, exact counting and the
//! bijection between clique trees and per-family spanning-tree choices.

use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::cliques::{CliqueGraph, CliqueId, EdgeId};
use crate::error::{Error, Result};
use crate::graph::{EdgeLabel, Graph, Multigraph, VertexId};
use crate::lattice::{FamilyId, FamilyLattice};
use crate::util::{forest_shape, DisjointSets, ForestShape};
use crate::validate::{TreeDefect, Violation};

/// Spanning tree of a multigraph, as the sorted labels of its edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SpanningTree {
    pub labels: Vec<EdgeLabel>,
}

/// Lazily enumerates the spanning trees of a multigraph.
///
/// Candidates are edge subsets in lexicographic order of edge position.
/// An edge is taken only if it closes no cycle and the taken edges plus all
/// later edges still connect the graph, so every branch ends in a tree and
/// each tree is produced exactly once. Loops are never taken.
#[derive(Clone, Debug)]
pub struct SpanningTrees {
    n: usize,
    edges: Vec<(VertexId, VertexId, EdgeLabel)>,
    chosen: Vec<usize>,
    next_start: usize,
    done: bool,
}

impl SpanningTrees {
    fn new(b: &Multigraph) -> Self {
        let edges = b
            .edges()
            .iter()
            .filter(|e| !e.is_loop())
            .map(|e| (e.u, e.v, e.label))
            .collect();
        SpanningTrees {
            n: b.vertex_count(),
            edges,
            chosen: Vec::new(),
            next_start: 0,
            done: false,
        }
    }

    /// Can `chosen + [e]` be completed using edges after `e`?
    fn extendable(&self, e: usize) -> bool {
        let mut dsu = DisjointSets::new(self.n);
        for &c in &self.chosen {
            let (u, v, _) = self.edges[c];
            dsu.union(u, v);
        }
        let (u, v, _) = self.edges[e];
        if !dsu.union(u, v) {
            return false;
        }
        for &(u, v, _) in &self.edges[e + 1..] {
            dsu.union(u, v);
        }
        dsu.components() == 1
    }

    fn emit(&self) -> SpanningTree {
        let mut labels: Vec<EdgeLabel> = self.chosen.iter().map(|&c| self.edges[c].2).collect();
        labels.sort_unstable();
        SpanningTree { labels }
    }
}

impl Iterator for SpanningTrees {
    type Item = SpanningTree;

    fn next(&mut self) -> Option<SpanningTree> {
        if self.done {
            return None;
        }
        if self.n <= 1 {
            self.done = true;
            return Some(SpanningTree { labels: Vec::new() });
        }
        loop {
            let found = (self.next_start..self.edges.len()).find(|&e| self.extendable(e));
            match found {
                Some(e) => {
                    self.chosen.push(e);
                    self.next_start = e + 1;
                    if self.chosen.len() == self.n - 1 {
                        let tree = self.emit();
                        let last = self.chosen.pop().expect("just pushed");
                        self.next_start = last + 1;
                        return Some(tree);
                    }
                }
                None => match self.chosen.pop() {
                    Some(last) => self.next_start = last + 1,
                    None => {
                        self.done = true;
                        return None;
                    }
                },
            }
        }
    }
}

/// Streams every spanning tree of `b` once, in a deterministic order.
pub fn spanning_trees_stream(b: &Multigraph) -> Result<SpanningTrees> {
    if !b.is_connected() {
        return Err(Error::MultigraphDisconnected);
    }
    Ok(SpanningTrees::new(b))
}

/// Number of spanning trees by the matrix-tree theorem: any cofactor of the
/// loopless Laplacian, evaluated with fraction-free elimination over
/// arbitrary-precision integers. Zero for a disconnected multigraph.
pub fn count_spanning_trees(b: &Multigraph) -> BigUint {
    let n = b.vertex_count();
    if n <= 1 {
        return BigUint::one();
    }
    let mut lap = vec![vec![BigInt::zero(); n]; n];
    for e in b.edges().iter().filter(|e| !e.is_loop()) {
        lap[e.u][e.u] += 1;
        lap[e.v][e.v] += 1;
        lap[e.u][e.v] -= 1;
        lap[e.v][e.u] -= 1;
    }
    lap.pop();
    for row in &mut lap {
        row.pop();
    }
    determinant(lap)
        .abs()
        .to_biguint()
        .expect("absolute value is non-negative")
}

/// Bareiss elimination with row pivoting.
fn determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let value = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = value;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// A spanning tree of `B_F` for one family, by clique-graph edge ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LabeledSpanningTree {
    pub family: FamilyId,
    pub edges: Vec<EdgeId>,
}

/// One spanning tree of `B_F` per family, indexed by family id.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FamilyChoice {
    pub trees: Vec<LabeledSpanningTree>,
}

/// Spanning tree of the clique graph, as sorted clique-graph edge ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CliqueTree {
    pub edges: Vec<EdgeId>,
}

impl CliqueTree {
    pub fn new(mut edges: Vec<EdgeId>) -> Self {
        edges.sort_unstable();
        CliqueTree { edges }
    }

    /// Builds the edge set from clique pairs; every pair must be a
    /// clique-graph edge.
    pub fn from_clique_pairs(cg: &CliqueGraph, pairs: &[(CliqueId, CliqueId)]) -> Result<Self> {
        let edges = pairs
            .iter()
            .map(|&(a, b)| {
                cg.edge_between(a, b)
                    .ok_or(Error::NotACliqueGraphEdge(a, b))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CliqueTree::new(edges))
    }

    pub fn clique_pairs(&self, cg: &CliqueGraph) -> Vec<(CliqueId, CliqueId)> {
        self.edges
            .iter()
            .map(|&e| {
                let edge = cg.edge(e);
                (edge.a, edge.b)
            })
            .collect()
    }

    /// Edges as pairs of clique member-name lists.
    pub fn named_pairs(&self, cg: &CliqueGraph, g: &Graph) -> Vec<[Vec<String>; 2]> {
        self.clique_pairs(cg)
            .into_iter()
            .map(|(a, b)| {
                [
                    g.names_of(&cg.clique(a).members),
                    g.names_of(&cg.clique(b).members),
                ]
            })
            .collect()
    }
}

/// Checks that `edges` (clique-graph edge ids) form a spanning tree of
/// `B_F` for family `f`.
fn check_local_tree(lattice: &FamilyLattice, f: FamilyId, edges: &[EdgeId]) -> Result<(), Violation> {
    let gr = lattice.graphs(f);
    let mut endpoints = Vec::with_capacity(edges.len());
    for &e in edges {
        let Some(me) = gr.b.edges().iter().find(|me| me.label == e) else {
            return Err(Violation::FamilyTree {
                family: f,
                defect: TreeDefect::ForeignEdge(e),
            });
        };
        if me.is_loop() {
            return Err(Violation::FamilyTree {
                family: f,
                defect: TreeDefect::Loop(e),
            });
        }
        endpoints.push((me.u, me.v));
    }
    match forest_shape(gr.b.vertex_count(), endpoints) {
        ForestShape::Tree => Ok(()),
        ForestShape::Cyclic(pos) => Err(Violation::FamilyTree {
            family: f,
            defect: TreeDefect::Cycle(edges[pos]),
        }),
        ForestShape::Disconnected(components) => Err(Violation::FamilyTree {
            family: f,
            defect: TreeDefect::Disconnected(components),
        }),
    }
}

fn assemble_unchecked<'a>(parts: impl Iterator<Item = &'a [EdgeId]>) -> CliqueTree {
    let mut edges: Vec<EdgeId> = parts.flat_map(|p| p.iter().copied()).collect();
    edges.sort_unstable();
    CliqueTree { edges }
}

/// Union of the chosen local trees. Fails only when `choice` is not a
/// valid per-family choice.
pub fn assemble(lattice: &FamilyLattice, choice: &FamilyChoice) -> Result<CliqueTree> {
    if choice.trees.len() != lattice.len() {
        return Err(Error::DimensionMismatch {
            expected: lattice.len(),
            found: choice.trees.len(),
        });
    }
    for (f, tree) in choice.trees.iter().enumerate() {
        if tree.family != f {
            return Err(Error::InvalidChoice {
                family: f,
                reason: format!("entry is labelled with family {}", tree.family),
            });
        }
        check_local_tree(lattice, f, &tree.edges).map_err(|v| Error::InvalidChoice {
            family: f,
            reason: v.to_string(),
        })?;
    }
    Ok(assemble_unchecked(choice.trees.iter().map(|t| t.edges.as_slice())))
}

/// Splits a clique tree along the edge partition. Fails with the first
/// family whose part is not a spanning tree of `B_F`.
pub fn decompose(lattice: &FamilyLattice, tree: &CliqueTree) -> Result<FamilyChoice> {
    let cg = lattice.clique_graph();
    let mut parts: Vec<Vec<EdgeId>> = vec![Vec::new(); lattice.len()];
    let mut seen = vec![false; cg.edge_count()];
    for &e in &tree.edges {
        if e >= cg.edge_count() {
            return Err(Error::NotACliqueTree(Violation::UnknownEdge(e)));
        }
        if std::mem::replace(&mut seen[e], true) {
            return Err(Error::NotACliqueTree(Violation::RepeatedEdge(e)));
        }
        parts[lattice.edge_family(e)].push(e);
    }
    let mut trees = Vec::with_capacity(parts.len());
    for (f, mut edges) in parts.into_iter().enumerate() {
        edges.sort_unstable();
        check_local_tree(lattice, f, &edges).map_err(Error::NotACliqueTree)?;
        trees.push(LabeledSpanningTree { family: f, edges });
    }
    Ok(FamilyChoice { trees })
}

/// Spanning trees of every `B_F`, indexed by family.
pub fn local_trees(lattice: &FamilyLattice) -> Vec<Vec<LabeledSpanningTree>> {
    lattice
        .all_graphs()
        .iter()
        .map(|gr| {
            spanning_trees_stream(&gr.b)
                .expect("B_F is a complete multigraph")
                .map(|t| LabeledSpanningTree {
                    family: gr.family,
                    edges: t.labels,
                })
                .collect()
        })
        .collect()
}

/// The first tree of the enumeration, built without listing the others.
pub fn first_clique_tree(lattice: &FamilyLattice) -> CliqueTree {
    let parts: Vec<Vec<EdgeId>> = lattice
        .all_graphs()
        .iter()
        .map(|gr| {
            spanning_trees_stream(&gr.b)
                .expect("B_F is a complete multigraph")
                .next()
                .expect("B_F is connected")
                .labels
        })
        .collect();
    assemble_unchecked(parts.iter().map(Vec::as_slice))
}

/// `∏_F τ(B_F)` over the lattice.
pub fn count_clique_trees_in(lattice: &FamilyLattice) -> BigUint {
    lattice
        .all_graphs()
        .iter()
        .map(|gr| count_spanning_trees(&gr.b))
        .product()
}

/// Exact number of clique trees of a connected chordal graph.
pub fn count_clique_trees(g: &Graph) -> Result<BigUint> {
    let lattice = FamilyLattice::from_graph(g)?;
    Ok(count_clique_trees_in(&lattice))
}

/// Streams all clique trees, odometer-style over the per-family choice
/// indices (first family most significant).
///
/// Between emissions the enumerator keeps the lattice, the precomputed
/// per-family spanning-tree lists and one index per family; nothing grows
/// with the number of trees emitted.
#[derive(Clone, Debug)]
pub struct CliqueTreeEnumerator {
    lattice: Arc<FamilyLattice>,
    local: Vec<Vec<LabeledSpanningTree>>,
    indices: Option<Vec<usize>>,
}

/// Borrowed view of everything [`CliqueTreeEnumerator`] retains.
#[derive(Debug)]
pub struct EnumeratorState<'a> {
    pub lattice: &'a FamilyLattice,
    pub local_trees: &'a [Vec<LabeledSpanningTree>],
    /// `None` once the stream is exhausted.
    pub choice_indices: Option<&'a [usize]>,
}

impl CliqueTreeEnumerator {
    pub fn new(lattice: Arc<FamilyLattice>) -> Self {
        let local = local_trees(&lattice);
        let indices = if local.iter().all(|l| !l.is_empty()) {
            Some(vec![0; local.len()])
        } else {
            None
        };
        CliqueTreeEnumerator {
            lattice,
            local,
            indices,
        }
    }

    pub fn lattice(&self) -> &FamilyLattice {
        &self.lattice
    }

    pub fn state(&self) -> EnumeratorState<'_> {
        EnumeratorState {
            lattice: &self.lattice,
            local_trees: &self.local,
            choice_indices: self.indices.as_deref(),
        }
    }

    /// The choice that the next emitted tree decomposes into.
    pub fn current_choice(&self) -> Option<FamilyChoice> {
        let indices = self.indices.as_ref()?;
        Some(FamilyChoice {
            trees: indices
                .iter()
                .zip(&self.local)
                .map(|(&i, l)| l[i].clone())
                .collect(),
        })
    }
}

impl Iterator for CliqueTreeEnumerator {
    type Item = CliqueTree;

    fn next(&mut self) -> Option<CliqueTree> {
        let indices = self.indices.as_mut()?;
        let tree = assemble_unchecked(
            indices
                .iter()
                .zip(&self.local)
                .map(|(&i, l)| l[i].edges.as_slice()),
        );
        let mut pos = indices.len();
        loop {
            if pos == 0 {
                self.indices = None;
                break;
            }
            pos -= 1;
            indices[pos] += 1;
            if indices[pos] < self.local[pos].len() {
                break;
            }
            indices[pos] = 0;
        }
        Some(tree)
    }
}

/// Clique-tree stream of a connected chordal graph.
pub fn enumerate_clique_trees(g: &Graph) -> Result<CliqueTreeEnumerator> {
    let lattice = FamilyLattice::from_graph(g)?;
    Ok(CliqueTreeEnumerator::new(Arc::new(lattice)))
}
