//! Finite simple graphs, the edge-list reader and labelled multigraphs.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};

/// Dense vertex index, `0..n` within a [`Graph`].
pub type VertexId = usize;

/// Finite simple undirected graph. Vertex ids are contiguous and every
/// adjacency list is sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<VertexId>>,
    names: Vec<String>,
}

impl Graph {
    /// Edgeless graph on `n` vertices named `0`, `1`, ...
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            names: (0..n).map(|v| v.to_string()).collect(),
        }
    }

    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let names = (0..n).map(|v| v.to_string()).collect();
        Self::with_names(names, edges)
    }

    /// Loops are rejected; repeated edges collapse.
    pub fn with_names(names: Vec<String>, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let n = names.len();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(Error::InvalidVertex(u));
            }
            if v >= n {
                return Err(Error::InvalidVertex(v));
            }
            if u == v {
                return Err(Error::LoopEdge {
                    line: 0,
                    name: names[u].clone(),
                });
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph { adj, names })
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Self::from_edges(n, &edges).expect("valid edges")
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Self::from_edges(n, &edges).expect("valid edges")
    }

    pub fn cycle(n: usize) -> Self {
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        if n >= 3 {
            edges.push((n - 1, 0));
        }
        Self::from_edges(n, &edges).expect("valid edges")
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.adj.len()
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.names.iter().position(|n| n == name)
    }

    pub fn names_of(&self, vertices: &[VertexId]) -> Vec<String> {
        vertices.iter().map(|&v| self.names[v].clone()).collect()
    }

    pub fn is_complete_set(&self, set: &[VertexId]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| u != v && self.has_edge(u, v)))
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Standing precondition of every analysis entry point.
    pub fn require_connected(&self) -> Result<()> {
        if self.vertex_count() == 0 {
            return Err(Error::EmptyGraph);
        }
        match self.components().len() {
            1 => Ok(()),
            components => Err(Error::Disconnected { components }),
        }
    }

    /// Induced subgraph on `vertices` (in the given order). Vertex `i` of
    /// the result is `vertices[i]` of `self`; names are carried over.
    pub fn induced(&self, vertices: &[VertexId]) -> Graph {
        let index: HashMap<VertexId, usize> =
            vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let adj = vertices
            .iter()
            .map(|&v| {
                let mut list: Vec<usize> = self.adj[v]
                    .iter()
                    .filter_map(|w| index.get(w).copied())
                    .collect();
                list.sort_unstable();
                list
            })
            .collect();
        Graph {
            adj,
            names: vertices.iter().map(|&v| self.names[v].clone()).collect(),
        }
    }

    /// `set` together with all its neighbours, sorted.
    pub fn closed_neighbourhood(&self, set: &[VertexId]) -> Vec<VertexId> {
        let mut mark = vec![false; self.vertex_count()];
        for &v in set {
            mark[v] = true;
            for &w in &self.adj[v] {
                mark[w] = true;
            }
        }
        (0..mark.len()).filter(|&v| mark[v]).collect()
    }

    /// Renders the graph in the edge-list format. Isolated vertices are
    /// not representable and are dropped.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (u, v) in self.edges() {
            out.push_str(&self.names[u]);
            out.push(' ');
            out.push_str(&self.names[v]);
            out.push('\n');
        }
        out
    }
}

/// Non-fatal findings while reading an edge list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ParseWarning {
    DuplicateEdge { line: usize, u: String, v: String },
}

#[derive(Clone, Debug)]
pub struct ParsedGraph {
    pub graph: Graph,
    pub warnings: Vec<ParseWarning>,
}

/// Reads the edge-list format: one edge per line as two whitespace-separated
/// vertex names, `#` starts a comment, blank lines are ignored. Ids are
/// assigned in order of first appearance. Disconnected graphs are accepted
/// here so the analysis entry points can report them.
pub fn parse_graph(text: &str) -> Result<ParsedGraph> {
    let mut names: Vec<String> = Vec::new();
    let mut ids: HashMap<String, VertexId> = HashMap::new();
    let mut edges = Vec::new();
    let mut seen = HashSet::new();
    let mut warnings = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens.len() {
            0 => continue,
            2 => {}
            k => {
                return Err(Error::Parse {
                    line,
                    reason: format!("expected two vertex names, found {k} tokens"),
                })
            }
        }
        if tokens[0] == tokens[1] {
            return Err(Error::LoopEdge {
                line,
                name: tokens[0].to_string(),
            });
        }
        let mut id_of = |name: &str| -> VertexId {
            *ids.entry(name.to_string()).or_insert_with(|| {
                names.push(name.to_string());
                names.len() - 1
            })
        };
        let (u, v) = (id_of(tokens[0]), id_of(tokens[1]));
        if !seen.insert((u.min(v), u.max(v))) {
            warnings.push(ParseWarning::DuplicateEdge {
                line,
                u: tokens[0].to_string(),
                v: tokens[1].to_string(),
            });
            continue;
        }
        edges.push((u, v));
    }
    let graph = Graph::with_names(names, &edges)?;
    Ok(ParsedGraph { graph, warnings })
}

/// Cyclic vertex sequence; consecutive entries (cyclically) are adjacent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cycle {
    pub vertices: Vec<VertexId>,
}

impl Cycle {
    pub fn new(vertices: Vec<VertexId>) -> Self {
        Cycle { vertices }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Checks distinctness and adjacency of consecutive vertices in `g`.
    pub fn check_in(&self, g: &Graph) -> Result<()> {
        let k = self.vertices.len();
        if k < 3 {
            return Err(Error::InvalidCycle(format!("length {k} < 3")));
        }
        let mut seen = HashSet::new();
        for &v in &self.vertices {
            if v >= g.vertex_count() {
                return Err(Error::InvalidVertex(v));
            }
            if !seen.insert(v) {
                return Err(Error::InvalidCycle(format!("vertex {v} repeated")));
            }
        }
        for i in 0..k {
            let (a, b) = (self.vertices[i], self.vertices[(i + 1) % k]);
            if !g.has_edge(a, b) {
                return Err(Error::InvalidCycle(format!("{a} and {b} are not adjacent")));
            }
        }
        Ok(())
    }

    /// Pairs of non-consecutive cycle vertices adjacent in `g`.
    pub fn chords(&self, g: &Graph) -> Vec<(VertexId, VertexId)> {
        let k = self.vertices.len();
        let mut out = Vec::new();
        for i in 0..k {
            for j in i + 2..k {
                if i == 0 && j == k - 1 {
                    continue;
                }
                let (a, b) = (self.vertices[i], self.vertices[j]);
                if g.has_edge(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

/// Opaque edge label carried through contraction.
pub type EdgeLabel = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MultiEdge {
    pub u: VertexId,
    pub v: VertexId,
    pub label: EdgeLabel,
}

impl MultiEdge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }
}

/// Multigraph with labelled edges; loops and parallel edges allowed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Multigraph {
    n: usize,
    edges: Vec<MultiEdge>,
}

impl Multigraph {
    pub fn new(n: usize, edges: Vec<MultiEdge>) -> Result<Self> {
        let mut labels = HashSet::new();
        for e in &edges {
            for x in [e.u, e.v] {
                if x >= n {
                    return Err(Error::InvalidVertex(x));
                }
            }
            if !labels.insert(e.label) {
                return Err(Error::DuplicateLabel(e.label));
            }
        }
        Ok(Multigraph { n, edges })
    }

    /// Labels are assigned as `0..edges.len()` in input order.
    pub fn unlabeled(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let edges = edges
            .iter()
            .enumerate()
            .map(|(label, &(u, v))| MultiEdge { u, v, label })
            .collect();
        Self::new(n, edges)
    }

    pub fn from_graph(g: &Graph) -> Self {
        let edges = g.edges().collect::<Vec<_>>();
        Self::unlabeled(g.vertex_count(), &edges).expect("graph edges are valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[MultiEdge] {
        &self.edges
    }

    pub fn loop_count(&self) -> usize {
        self.edges.iter().filter(|e| e.is_loop()).count()
    }

    /// Connectivity ignoring loops. The empty multigraph counts as connected.
    pub fn is_connected(&self) -> bool {
        let mut dsu = crate::util::DisjointSets::new(self.n);
        for e in &self.edges {
            dsu.union(e.u, e.v);
        }
        dsu.components() <= 1
    }

    /// Collapses every class of `partition` to one vertex. Vertices not
    /// covered become singleton classes. New ids follow the classes in the
    /// order: given classes first, then uncovered vertices by id. Every edge
    /// survives with its label; edges inside a class become loops.
    pub fn contract(&self, partition: &[Vec<VertexId>]) -> Result<Multigraph> {
        let mut class_of = vec![usize::MAX; self.n];
        for (c, class) in partition.iter().enumerate() {
            for &v in class {
                if v >= self.n {
                    return Err(Error::InvalidVertex(v));
                }
                if class_of[v] != usize::MAX {
                    return Err(Error::OverlappingPartition { vertex: v });
                }
                class_of[v] = c;
            }
        }
        let mut next = partition.len();
        for slot in class_of.iter_mut() {
            if *slot == usize::MAX {
                *slot = next;
                next += 1;
            }
        }
        let edges = self
            .edges
            .iter()
            .map(|e| MultiEdge {
                u: class_of[e.u],
                v: class_of[e.v],
                label: e.label,
            })
            .collect();
        Ok(Multigraph { n: next, edges })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_path() {
        let g = parse_graph("a b\nb c").unwrap().graph;
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.names(), ["a", "b", "c"]);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn parse_example_graph() {
        let g = parse_graph("v1 v2\nv2 v3\nv1 v3\nv3 v4").unwrap().graph;
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 4);
        assert!(g.has_edge(0, 2));
        assert!(g.has_edge(2, 3));
        assert!(!g.has_edge(0, 3));
    }

    #[test]
    fn parse_rejects_loops() {
        assert!(matches!(
            parse_graph("a a"),
            Err(Error::LoopEdge { line: 1, .. })
        ));
    }

    #[test]
    fn parse_comments_blank_lines_and_duplicates() {
        let parsed = parse_graph("# header\n\na b # trailing\nb a\n  \nb c\n").unwrap();
        assert_eq!(parsed.graph.edge_count(), 2);
        assert_eq!(
            parsed.warnings,
            vec![ParseWarning::DuplicateEdge {
                line: 4,
                u: "b".into(),
                v: "a".into()
            }]
        );
    }

    #[test]
    fn parse_malformed_line() {
        assert!(matches!(
            parse_graph("a b\na b c"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(parse_graph("a"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn disconnected_is_parsed_but_rejected_for_analysis() {
        let g = parse_graph("a b\nc d").unwrap().graph;
        assert!(matches!(
            g.require_connected(),
            Err(Error::Disconnected { components: 2 })
        ));
        assert!(matches!(
            Graph::empty(0).require_connected(),
            Err(Error::EmptyGraph)
        ));
    }

    #[test]
    fn edge_list_round_trip() {
        let g = parse_graph("x y\ny z\nz x\nz w").unwrap().graph;
        let again = parse_graph(&g.to_edge_list()).unwrap().graph;
        assert_eq!(g, again);
    }

    #[test]
    fn contract_triangle() {
        // triangle a=0, b=1, c=2; contract {a, b}
        let m = Multigraph::from_graph(&Graph::complete(3));
        let c = m.contract(&[vec![0, 1]]).unwrap();
        assert_eq!(c.vertex_count(), 2);
        assert_eq!(c.loop_count(), 1);
        let parallel: Vec<_> = c.edges().iter().filter(|e| !e.is_loop()).collect();
        assert_eq!(parallel.len(), 2);
        assert!(parallel.iter().all(|e| (e.u, e.v) == (0, 1)));
    }

    #[test]
    fn contract_singletons_is_identity() {
        let m = Multigraph::from_graph(&Graph::cycle(5));
        let singletons: Vec<Vec<usize>> = (0..5).map(|v| vec![v]).collect();
        assert_eq!(m.contract(&singletons).unwrap(), m);
        assert_eq!(m.contract(&[]).unwrap(), m);
    }

    #[test]
    fn contract_path_ends() {
        let m = Multigraph::from_graph(&Graph::path(3));
        let c = m.contract(&[vec![0, 2]]).unwrap();
        assert_eq!(c.vertex_count(), 2);
        assert_eq!(c.loop_count(), 0);
        assert_eq!(c.edges().len(), 2);
    }

    #[test]
    fn contract_errors() {
        let m = Multigraph::from_graph(&Graph::path(3));
        assert!(matches!(
            m.contract(&[vec![0, 1], vec![1, 2]]),
            Err(Error::OverlappingPartition { vertex: 1 })
        ));
        assert!(matches!(
            m.contract(&[vec![7]]),
            Err(Error::InvalidVertex(7))
        ));
    }

    #[test]
    fn cycle_chords() {
        let mut g = Graph::cycle(4);
        assert!(Cycle::new(vec![0, 1, 2, 3]).chords(&g).is_empty());
        g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        assert_eq!(Cycle::new(vec![0, 1, 2, 3]).chords(&g), vec![(0, 2)]);
    }
}
