//! Chordality recognition by maximum cardinality search, perfect
//! elimination orderings, chordless-cycle witnesses and the 2-chord lemma.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Cycle, Graph, VertexId};

/// Perfect elimination ordering: for every vertex, its neighbours occurring
/// later in `order` form a complete set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Peo {
    order: Vec<VertexId>,
    #[serde(skip)]
    position: Vec<usize>,
}

impl Peo {
    /// Wraps `order` after checking it is a permutation and a perfect
    /// elimination ordering of `g`.
    pub fn new(g: &Graph, order: Vec<VertexId>) -> Result<Self> {
        let n = g.vertex_count();
        if order.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: order.len(),
            });
        }
        let mut position = vec![usize::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            if v >= n {
                return Err(Error::InvalidVertex(v));
            }
            if position[v] != usize::MAX {
                return Err(Error::InvalidOrder(format!("vertex {v} repeated")));
            }
            position[v] = i;
        }
        let peo = Peo { order, position };
        if let Some(vertex) = peo.first_violation(g) {
            return Err(Error::InvalidPeo { vertex });
        }
        Ok(peo)
    }

    pub fn order(&self) -> &[VertexId] {
        &self.order
    }

    pub fn position(&self, v: VertexId) -> usize {
        self.position[v]
    }

    /// Neighbours of `v` after it in the ordering, sorted by id.
    pub fn later_neighbors(&self, g: &Graph, v: VertexId) -> Vec<VertexId> {
        g.neighbors(v)
            .iter()
            .copied()
            .filter(|&w| self.position[w] > self.position[v])
            .collect()
    }

    fn first_violation(&self, g: &Graph) -> Option<VertexId> {
        self.order.iter().copied().find(|&v| {
            let later = self.later_neighbors(g, v);
            !g.is_complete_set(&later)
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ChordalityVerdict {
    Chordal(Peo),
    /// An induced cycle of length at least 4.
    NotChordal(Cycle),
}

impl ChordalityVerdict {
    pub fn is_chordal(&self) -> bool {
        matches!(self, ChordalityVerdict::Chordal(_))
    }
}

/// Maximum cardinality search visit order. Each step picks the unvisited
/// vertex with the most visited neighbours, lowest id on ties. Works on
/// disconnected graphs (a fresh component starts at label 0).
pub fn maximum_cardinality_search(g: &Graph) -> Vec<VertexId> {
    let n = g.vertex_count();
    let mut label = vec![0usize; n];
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best: Option<VertexId> = None;
        for v in 0..n {
            if visited[v] {
                continue;
            }
            if best.is_none_or(|b| label[v] > label[b]) {
                best = Some(v);
            }
        }
        let v = best.expect("an unvisited vertex remains");
        visited[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            if !visited[w] {
                label[w] += 1;
            }
        }
    }
    order
}

/// Chordality of an arbitrary (possibly disconnected) graph.
pub(crate) fn chordality(g: &Graph) -> ChordalityVerdict {
    let mut order = maximum_cardinality_search(g);
    order.reverse();
    match Peo::new(g, order) {
        Ok(peo) => ChordalityVerdict::Chordal(peo),
        Err(_) => ChordalityVerdict::NotChordal(
            chordless_cycle(g).expect("a graph without a perfect elimination ordering has a hole"),
        ),
    }
}

/// Recognises chordal graphs. On success the certificate is the reversed
/// MCS order; on failure an induced cycle of length at least 4.
pub fn is_chordal(g: &Graph) -> Result<ChordalityVerdict> {
    g.require_connected()?;
    Ok(chordality(g))
}

/// Returns the perfect elimination ordering or the `NotChordal` error.
pub fn require_chordal(g: &Graph) -> Result<Peo> {
    match is_chordal(g)? {
        ChordalityVerdict::Chordal(peo) => Ok(peo),
        ChordalityVerdict::NotChordal(c) => Err(Error::NotChordal(c)),
    }
}

/// Finds an induced cycle of length >= 4, if any.
///
/// Every such cycle passes through some vertex `v` whose two cycle
/// neighbours `a`, `b` are non-adjacent, and the rest of the cycle is an
/// induced `a`-`b` path avoiding the other neighbours of `v`. Searching a
/// shortest such path for every `(v, a, b)` therefore finds one whenever
/// one exists.
pub fn chordless_cycle(g: &Graph) -> Option<Cycle> {
    let n = g.vertex_count();
    for v in 0..n {
        let nv = g.neighbors(v);
        for (i, &a) in nv.iter().enumerate() {
            for &b in &nv[i + 1..] {
                if g.has_edge(a, b) {
                    continue;
                }
                let mut blocked = vec![false; n];
                blocked[v] = true;
                for &w in nv {
                    if w != a && w != b {
                        blocked[w] = true;
                    }
                }
                if let Some(path) = shortest_path(g, a, b, &blocked) {
                    let mut vertices = vec![v];
                    vertices.extend(path);
                    return Some(Cycle::new(vertices));
                }
            }
        }
    }
    None
}

fn shortest_path(g: &Graph, from: VertexId, to: VertexId, blocked: &[bool]) -> Option<Vec<VertexId>> {
    let n = g.vertex_count();
    let mut prev = vec![usize::MAX; n];
    prev[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        if u == to {
            let mut path = vec![to];
            let mut x = to;
            while x != from {
                x = prev[x];
                path.push(x);
            }
            path.reverse();
            return Some(path);
        }
        for &w in g.neighbors(u) {
            if !blocked[w] && prev[w] == usize::MAX {
                prev[w] = u;
                queue.push_back(w);
            }
        }
    }
    None
}

/// In a chordal graph every cycle of length >= 4 has a chord joining two
/// vertices at distance exactly 2 along the cycle. Returns the first such
/// chord `(c[i], c[i + 2])` in cycle order.
pub fn find_two_chord(g: &Graph, cycle: &Cycle) -> Result<(VertexId, VertexId)> {
    let k = cycle.len();
    if k < 4 {
        return Err(Error::CycleTooShort(k));
    }
    cycle.check_in(g)?;
    if let ChordalityVerdict::NotChordal(hole) = chordality(g) {
        return Err(Error::NotChordal(hole));
    }
    let c = &cycle.vertices;
    (0..k)
        .map(|i| (c[i], c[(i + 2) % k]))
        .find(|&(a, b)| g.has_edge(a, b))
        .ok_or_else(|| Error::NoTwoChord(c.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;

    fn example_graph() -> Graph {
        parse_graph("v1 v2\nv2 v3\nv1 v3\nv3 v4").unwrap().graph
    }

    /// Independent check: later neighbours of every vertex pairwise adjacent.
    fn peo_holds(g: &Graph, order: &[VertexId]) -> bool {
        let pos: Vec<usize> = {
            let mut p = vec![0; order.len()];
            for (i, &v) in order.iter().enumerate() {
                p[v] = i;
            }
            p
        };
        g.vertices().all(|v| {
            let later: Vec<_> = g
                .neighbors(v)
                .iter()
                .filter(|&&w| pos[w] > pos[v])
                .collect();
            later
                .iter()
                .all(|&&a| later.iter().all(|&&b| a == b || g.has_edge(a, b)))
        })
    }

    fn hole_holds(g: &Graph, c: &Cycle) -> bool {
        c.len() >= 4 && c.check_in(g).is_ok() && c.chords(g).is_empty()
    }

    #[test]
    fn example_graph_is_chordal() {
        let g = example_graph();
        match is_chordal(&g).unwrap() {
            ChordalityVerdict::Chordal(peo) => assert!(peo_holds(&g, peo.order())),
            other => panic!("expected chordal, got {other:?}"),
        }
    }

    #[test]
    fn four_cycle_witness() {
        let g = Graph::cycle(4);
        match is_chordal(&g).unwrap() {
            ChordalityVerdict::NotChordal(c) => {
                assert!(hole_holds(&g, &c));
                let mut vs = c.vertices.clone();
                vs.sort();
                assert_eq!(vs, vec![0, 1, 2, 3]);
            }
            other => panic!("expected hole, got {other:?}"),
        }
    }

    #[test]
    fn complete_graph_is_chordal() {
        assert!(is_chordal(&Graph::complete(4)).unwrap().is_chordal());
    }

    #[test]
    fn long_hole_with_pendant_trees() {
        // 6-cycle plus a triangle hanging off vertex 0
        let g = Graph::from_edges(
            8,
            &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 6), (0, 7), (6, 7)],
        )
        .unwrap();
        match is_chordal(&g).unwrap() {
            ChordalityVerdict::NotChordal(c) => {
                assert!(hole_holds(&g, &c));
                assert_eq!(c.len(), 6);
            }
            other => panic!("expected hole, got {other:?}"),
        }
    }

    #[test]
    fn disconnected_rejected() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(matches!(
            is_chordal(&g),
            Err(Error::Disconnected { components: 2 })
        ));
    }

    #[test]
    fn invalid_peo_rejected() {
        // path 0-1-2: eliminating 1 first leaves 0, 2 non-adjacent
        let g = Graph::path(3);
        assert!(matches!(
            Peo::new(&g, vec![1, 0, 2]),
            Err(Error::InvalidPeo { vertex: 1 })
        ));
        assert!(Peo::new(&g, vec![0, 1, 2]).is_ok());
    }

    #[test]
    fn two_chord_single_diagonal() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        let chord = find_two_chord(&g, &Cycle::new(vec![0, 1, 2, 3])).unwrap();
        assert_eq!(chord, (0, 2));
    }

    #[test]
    fn two_chord_in_complete_graph() {
        let g = Graph::complete(4);
        let (a, b) = find_two_chord(&g, &Cycle::new(vec![0, 1, 2, 3])).unwrap();
        assert!(matches!((a.min(b), a.max(b)), (0, 2) | (1, 3)));
    }

    #[test]
    fn two_chord_errors() {
        let g = Graph::complete(3);
        assert!(matches!(
            find_two_chord(&g, &Cycle::new(vec![0, 1, 2])),
            Err(Error::CycleTooShort(3))
        ));
        let hole = Graph::cycle(4);
        assert!(matches!(
            find_two_chord(&hole, &Cycle::new(vec![0, 1, 2, 3])),
            Err(Error::NotChordal(_))
        ));
        let k4 = Graph::complete(4);
        assert!(find_two_chord(&k4, &Cycle::new(vec![0, 1, 2, 2])).is_err());
    }
}
