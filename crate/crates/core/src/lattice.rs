//! Clique families, their maximal generators and the family lattice, with
//! the per-family graphs `R_F`, `S_F` and the contraction multigraph `B_F`.
//!
//! A clique family `F(C)` is the set of cliques containing a complete set
//! `C`. Its maximal generator `Δ(F)` is the intersection of its members and
//! regenerates it: `F(Δ(F)) = F`. For a family `F`, the clique-graph edges
//! inside `F` split into `R_F` (intersection generates a strictly smaller
//! family) and `S_F` (intersection equals `Δ(F)`). `B_F` is `S_F` with the
//! components of `R_F` contracted, keeping clique-graph edge ids as labels.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::cliques::{CliqueGraph, CliqueId, EdgeId};
use crate::error::{Error, Result};
use crate::graph::{Graph, MultiEdge, Multigraph, VertexId};
use crate::util::{intersect_sorted, is_subset_sorted, DisjointSets};

/// Largest clique whose subsets [`FamilyLattice::generators`] lists.
pub const GENERATOR_LIMIT: usize = 20;

/// Index of a family within a [`FamilyLattice`].
pub type FamilyId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CliqueFamily {
    /// Clique ids, ascending. Never empty.
    pub members: Vec<CliqueId>,
    /// Intersection of all member cliques.
    pub max_generator: Vec<VertexId>,
}

impl CliqueFamily {
    fn from_members(cg: &CliqueGraph, members: Vec<CliqueId>) -> Self {
        let max_generator = members
            .iter()
            .map(|&k| cg.clique(k).members.clone())
            .reduce(|acc, m| intersect_sorted(&acc, &m))
            .expect("clique families are non-empty");
        CliqueFamily {
            members,
            max_generator,
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, k: CliqueId) -> bool {
        self.members.binary_search(&k).is_ok()
    }
}

/// `F(C)` for a complete set `C` (possibly empty). A set contained in no
/// clique is not complete and is rejected.
pub fn family_of(cg: &CliqueGraph, set: &[VertexId]) -> Result<CliqueFamily> {
    let mut c = set.to_vec();
    c.sort_unstable();
    c.dedup();
    if let Some(&v) = c.iter().find(|&&v| v >= cg.vertex_count()) {
        return Err(Error::InvalidVertex(v));
    }
    let members = cg.cliques_containing_all(&c);
    if members.is_empty() {
        return Err(Error::NotComplete(c));
    }
    Ok(CliqueFamily::from_members(cg, members))
}

/// Derived graphs of one family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyGraphs {
    pub family: FamilyId,
    /// Clique-graph edges inside the family whose intersection generates a
    /// strict subfamily.
    pub r_edges: Vec<EdgeId>,
    /// Clique-graph edges inside the family whose intersection is `Δ(F)`.
    pub s_edges: Vec<EdgeId>,
    /// Components of `R_F`, each sorted, ordered by smallest clique id.
    /// Vertex `i` of `b` is `classes[i]`.
    pub classes: Vec<Vec<CliqueId>>,
    /// `S_F` contracted by the classes; labels are clique-graph edge ids.
    pub b: Multigraph,
}

impl FamilyGraphs {
    pub fn class_of(&self, k: CliqueId) -> Option<usize> {
        self.classes.iter().position(|c| c.binary_search(&k).is_ok())
    }
}

/// All clique families of a connected chordal graph, with the clique graph
/// they were built from and the derived per-family graphs.
#[derive(Clone, Debug)]
pub struct FamilyLattice {
    cg: CliqueGraph,
    families: Vec<CliqueFamily>,
    index: HashMap<Vec<CliqueId>, FamilyId>,
    edge_family: Vec<FamilyId>,
    graphs: Vec<FamilyGraphs>,
}

impl FamilyLattice {
    /// Convenience: clique graph and lattice of `g`.
    pub fn from_graph(g: &Graph) -> Result<Self> {
        let cg = crate::cliques::build_clique_graph(g)?;
        Ok(enumerate_families(cg))
    }

    pub fn clique_graph(&self) -> &CliqueGraph {
        &self.cg
    }

    pub fn families(&self) -> &[CliqueFamily] {
        &self.families
    }

    pub fn family(&self, f: FamilyId) -> &CliqueFamily {
        &self.families[f]
    }

    pub fn len(&self) -> usize {
        self.families.len()
    }

    pub fn is_empty(&self) -> bool {
        self.families.is_empty()
    }

    /// Family with exactly these (sorted) members.
    pub fn find(&self, members: &[CliqueId]) -> Option<FamilyId> {
        self.index.get(members).copied()
    }

    /// Lattice id of `F(C)`.
    pub fn family_id_of(&self, set: &[VertexId]) -> Result<FamilyId> {
        let fam = family_of(&self.cg, set)?;
        Ok(self
            .find(&fam.members)
            .expect("every generated family is in the lattice"))
    }

    /// `families[a] ⊆ families[b]`.
    pub fn is_subfamily(&self, a: FamilyId, b: FamilyId) -> bool {
        is_subset_sorted(&self.families[a].members, &self.families[b].members)
    }

    /// The family `F(K1 ∩ K2)` owning each clique-graph edge.
    pub fn edge_family(&self, e: EdgeId) -> FamilyId {
        self.edge_family[e]
    }

    pub fn graphs(&self, f: FamilyId) -> &FamilyGraphs {
        &self.graphs[f]
    }

    pub fn all_graphs(&self) -> &[FamilyGraphs] {
        &self.graphs
    }

    /// Every generator of every family: the complete sets (subsets of
    /// cliques, including `∅`) grouped by the family they generate, each
    /// group sorted by `(size, members)`. Exponential in the clique size.
    pub fn generators(&self) -> Result<Vec<Vec<Vec<VertexId>>>> {
        let mut complete: BTreeSet<Vec<VertexId>> = BTreeSet::new();
        for clique in self.cg.cliques() {
            let k = clique.len();
            if k > GENERATOR_LIMIT {
                return Err(Error::SizeGate {
                    what: "generator enumeration",
                    n: k,
                    limit: GENERATOR_LIMIT,
                });
            }
            for mask in 0u32..1 << k {
                complete.insert(
                    (0..k)
                        .filter(|&i| mask >> i & 1 == 1)
                        .map(|i| clique.members[i])
                        .collect(),
                );
            }
        }
        let mut out = vec![Vec::new(); self.families.len()];
        for c in complete {
            out[self.family_id_of(&c)?].push(c);
        }
        for group in &mut out {
            group.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        }
        Ok(out)
    }

    /// JSON-ready summary with vertex names from `g`.
    pub fn export(&self, g: &Graph) -> LatticeExport {
        let cliques = self
            .cg
            .cliques()
            .iter()
            .map(|c| g.names_of(&c.members))
            .collect();
        let families = self
            .families
            .iter()
            .zip(&self.graphs)
            .enumerate()
            .map(|(id, (fam, gr))| FamilyExport {
                id,
                members: fam.members.clone(),
                max_generator: g.names_of(&fam.max_generator),
                r: GraphSummary {
                    vertices: fam.len(),
                    edges: gr.r_edges.len(),
                    loops: 0,
                },
                s: GraphSummary {
                    vertices: fam.len(),
                    edges: gr.s_edges.len(),
                    loops: 0,
                },
                b: GraphSummary {
                    vertices: gr.b.vertex_count(),
                    edges: gr.b.edges().len(),
                    loops: gr.b.loop_count(),
                },
            })
            .collect();
        LatticeExport { cliques, families }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphSummary {
    pub vertices: usize,
    pub edges: usize,
    pub loops: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyExport {
    pub id: FamilyId,
    pub members: Vec<CliqueId>,
    pub max_generator: Vec<String>,
    pub r: GraphSummary,
    pub s: GraphSummary,
    pub b: GraphSummary,
}

#[derive(Clone, Debug, Serialize)]
pub struct LatticeExport {
    pub cliques: Vec<Vec<String>>,
    pub families: Vec<FamilyExport>,
}

/// All families `F(C)`, `C` complete (possibly empty). Computed as the
/// closure of `{F(v)} ∪ {F(∅)}` under non-empty intersection, since
/// `F(C) = ⋂_{v ∈ C} F(v)`. Families are keyed by member set and sorted by
/// `(size, members)`.
pub fn enumerate_families(cg: CliqueGraph) -> FamilyLattice {
    let mut found: BTreeSet<Vec<CliqueId>> = BTreeSet::new();
    found.insert((0..cg.clique_count()).collect());
    for v in 0..cg.vertex_count() {
        let fv = cg.cliques_containing(v);
        if !fv.is_empty() {
            found.insert(fv.to_vec());
        }
    }
    let mut frontier: Vec<Vec<CliqueId>> = found.iter().cloned().collect();
    while !frontier.is_empty() {
        let existing: Vec<Vec<CliqueId>> = found.iter().cloned().collect();
        let mut next = Vec::new();
        for a in &frontier {
            for b in &existing {
                let meet = intersect_sorted(a, b);
                if !meet.is_empty() && !found.contains(&meet) {
                    found.insert(meet.clone());
                    next.push(meet);
                }
            }
        }
        frontier = next;
    }

    let mut members: Vec<Vec<CliqueId>> = found.into_iter().collect();
    members.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let families: Vec<CliqueFamily> = members
        .into_iter()
        .map(|m| CliqueFamily::from_members(&cg, m))
        .collect();
    let index: HashMap<Vec<CliqueId>, FamilyId> = families
        .iter()
        .enumerate()
        .map(|(i, f)| (f.members.clone(), i))
        .collect();

    let edge_family = edge_partition_with(&cg, &index);
    let mut lattice = FamilyLattice {
        cg,
        families,
        index,
        edge_family,
        graphs: Vec::new(),
    };
    lattice.graphs = (0..lattice.families.len())
        .map(|f| family_graphs(&lattice, f))
        .collect();
    lattice
}

fn edge_partition_with(cg: &CliqueGraph, index: &HashMap<Vec<CliqueId>, FamilyId>) -> Vec<FamilyId> {
    cg.edges()
        .iter()
        .map(|e| {
            let members = cg.cliques_containing_all(&e.label);
            index[&members]
        })
        .collect()
}

/// Maps every clique-graph edge `K1K2` to `F(K1 ∩ K2)`. The preimage of a
/// family is exactly its `S_F` edge set.
pub fn edge_partition(lattice: &FamilyLattice) -> Vec<FamilyId> {
    edge_partition_with(&lattice.cg, &lattice.index)
}

/// Computes `R_F`, `S_F`, the `∼_F` classes and `B_F` for family `f`.
pub fn family_graphs(lattice: &FamilyLattice, f: FamilyId) -> FamilyGraphs {
    let cg = &lattice.cg;
    let fam = &lattice.families[f];
    let mut r_edges = Vec::new();
    let mut s_edges = Vec::new();
    for (e, edge) in cg.edges().iter().enumerate() {
        if !(fam.contains(edge.a) && fam.contains(edge.b)) {
            continue;
        }
        // S_F: the intersection is exactly the maximal generator.
        if edge.label == fam.max_generator {
            s_edges.push(e);
        }
        // R_F: the intersection generates a strictly smaller family.
        let generated = cg.cliques_containing_all(&edge.label);
        if generated.len() < fam.len() && is_subset_sorted(&generated, &fam.members) {
            r_edges.push(e);
        }
    }

    let pos: HashMap<CliqueId, usize> = fam
        .members
        .iter()
        .enumerate()
        .map(|(i, &k)| (k, i))
        .collect();
    let mut dsu = DisjointSets::new(fam.len());
    for &e in &r_edges {
        let edge = cg.edge(e);
        dsu.union(pos[&edge.a], pos[&edge.b]);
    }
    let mut by_root: HashMap<usize, Vec<CliqueId>> = HashMap::new();
    for (i, &k) in fam.members.iter().enumerate() {
        by_root.entry(dsu.find(i)).or_default().push(k);
    }
    let mut classes: Vec<Vec<CliqueId>> = by_root.into_values().collect();
    classes.sort();
    let class_of: HashMap<CliqueId, usize> = classes
        .iter()
        .enumerate()
        .flat_map(|(c, ks)| ks.iter().map(move |&k| (k, c)))
        .collect();

    let b_edges = s_edges
        .iter()
        .map(|&e| {
            let edge = cg.edge(e);
            let (u, v) = (class_of[&edge.a], class_of[&edge.b]);
            MultiEdge {
                u: u.min(v),
                v: u.max(v),
                label: e,
            }
        })
        .collect();
    let b = Multigraph::new(classes.len(), b_edges).expect("labels are distinct edge ids");
    FamilyGraphs {
        family: f,
        r_edges,
        s_edges,
        classes,
        b,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;

    fn example() -> (Graph, FamilyLattice) {
        let g = parse_graph("v1 v2\nv2 v3\nv1 v3\nv3 v4").unwrap().graph;
        let lattice = FamilyLattice::from_graph(&g).unwrap();
        (g, lattice)
    }

    /// Vertices 1..5 mapped to ids 0..4; cliques {1,2,3}, {2,3,4}, {3,4,5}.
    fn three_clique_path() -> FamilyLattice {
        let g = Graph::from_edges(
            5,
            &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (2, 4), (3, 4)],
        )
        .unwrap();
        FamilyLattice::from_graph(&g).unwrap()
    }

    fn star3() -> FamilyLattice {
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        FamilyLattice::from_graph(&g).unwrap()
    }

    #[test]
    fn example_generators() {
        let (_, lattice) = example();
        // ids: v1 = 0, v2 = 1, v3 = 2, v4 = 3; families sorted by size
        let gens = lattice.generators().unwrap();
        let k1 = lattice.find(&[0]).unwrap();
        let k2 = lattice.find(&[1]).unwrap();
        let both = lattice.find(&[0, 1]).unwrap();
        assert_eq!(gens[both], vec![vec![], vec![2]]);
        assert_eq!(
            gens[k1],
            vec![vec![0], vec![1], vec![0, 1], vec![0, 2], vec![1, 2], vec![0, 1, 2]]
        );
        assert_eq!(gens[k2], vec![vec![3], vec![2, 3]]);
    }

    #[test]
    fn example_families_of_vertices() {
        let (g, lattice) = example();
        let cg = lattice.clique_graph();
        let v = |name: &str| g.vertex_by_name(name).unwrap();
        let f3 = family_of(cg, &[v("v3")]).unwrap();
        assert_eq!(f3.members, vec![0, 1]);
        assert_eq!(f3.max_generator, vec![v("v3")]);
        let f1 = family_of(cg, &[v("v1")]).unwrap();
        assert_eq!(f1.members, vec![0]);
        assert_eq!(f1.max_generator, cg.clique(0).members);
        let f_empty = family_of(cg, &[]).unwrap();
        assert_eq!(f_empty.members, vec![0, 1]);
        assert_eq!(f_empty.max_generator, vec![v("v3")]);
        assert_eq!(lattice.len(), 3);
    }

    #[test]
    fn incomplete_set_rejected() {
        let (g, lattice) = example();
        let c = [g.vertex_by_name("v1").unwrap(), g.vertex_by_name("v4").unwrap()];
        assert!(matches!(
            family_of(lattice.clique_graph(), &c),
            Err(Error::NotComplete(_))
        ));
    }

    #[test]
    fn single_clique_lattice() {
        let lattice = FamilyLattice::from_graph(&Graph::complete(4)).unwrap();
        assert_eq!(lattice.len(), 1);
        assert!(edge_partition(&lattice).is_empty());
    }

    #[test]
    fn star_lattice() {
        let lattice = star3();
        assert_eq!(lattice.len(), 4);
        let whole = lattice.find(&[0, 1, 2]).unwrap();
        let gr = lattice.graphs(whole);
        assert_eq!(gr.s_edges.len(), 3);
        assert!(gr.r_edges.is_empty());
        assert_eq!(gr.classes.len(), 3);
        assert_eq!(gr.b.vertex_count(), 3);
        assert_eq!(gr.b.edges().len(), 3);
        assert_eq!(gr.b.loop_count(), 0);
    }

    #[test]
    fn three_clique_path_family_graphs() {
        let lattice = three_clique_path();
        let cg = lattice.clique_graph();
        let k12 = cg.edge_between(0, 1).unwrap();
        let k23 = cg.edge_between(1, 2).unwrap();
        let k13 = cg.edge_between(0, 2).unwrap();
        let f3 = lattice.family_id_of(&[2]).unwrap();
        let gr = lattice.graphs(f3);
        assert_eq!(gr.r_edges, vec![k12, k23]);
        assert_eq!(gr.s_edges, vec![k13]);
        assert_eq!(gr.classes.len(), 1);
        assert_eq!(gr.b.vertex_count(), 1);
        assert_eq!(gr.b.loop_count(), 1);

        let partition = edge_partition(&lattice);
        assert_eq!(partition[k12], lattice.family_id_of(&[1, 2]).unwrap());
        assert_eq!(partition[k23], lattice.family_id_of(&[2, 3]).unwrap());
        assert_eq!(partition[k13], f3);
    }

    #[test]
    fn disjoint_cliques_root_family() {
        // path 1-2-3-4: cliques are its edges; the global intersection is empty
        let lattice = FamilyLattice::from_graph(&Graph::path(4)).unwrap();
        let all = lattice.find(&[0, 1, 2]).unwrap();
        assert!(lattice.family(all).max_generator.is_empty());
        let gr = lattice.graphs(all);
        assert_eq!(gr.r_edges.len(), lattice.clique_graph().edge_count());
        assert!(gr.s_edges.is_empty());
        assert_eq!(gr.b.vertex_count(), 1);
        assert!(gr.b.edges().is_empty());
    }

    #[test]
    fn example_partition() {
        let (g, lattice) = example();
        let f3 = lattice.family_id_of(&[g.vertex_by_name("v3").unwrap()]).unwrap();
        assert_eq!(edge_partition(&lattice), vec![f3]);
    }
}
