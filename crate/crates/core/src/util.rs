//! Small helpers shared across modules: sorted-set operations on vertex
//! lists and a union-find.

use std::cmp::Ordering;

/// Intersection of two strictly increasing slices.
pub fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => i += 1,
            Ordering::Greater => j += 1,
            Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// `a ⊆ b` for strictly increasing slices.
pub fn is_subset_sorted(a: &[usize], b: &[usize]) -> bool {
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j == b.len() || b[j] != x {
            return false;
        }
        j += 1;
    }
    true
}

/// Union of two strictly increasing slices.
pub fn union_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Union-find with path halving and union by size.
#[derive(Clone, Debug)]
pub struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
    components: usize,
}

impl DisjointSets {
    pub fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
            size: vec![1; n],
            components: n,
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.components -= 1;
        true
    }

    pub fn components(&self) -> usize {
        self.components
    }
}

/// Shape of an edge set over `n` vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ForestShape {
    Tree,
    /// Acyclic but with this many components.
    Disconnected(usize),
    /// Closing this edge (by position in the input) creates a cycle.
    Cyclic(usize),
}

pub fn forest_shape(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> ForestShape {
    let mut dsu = DisjointSets::new(n);
    for (pos, (a, b)) in edges.into_iter().enumerate() {
        if !dsu.union(a, b) {
            return ForestShape::Cyclic(pos);
        }
    }
    match dsu.components() {
        0 | 1 => ForestShape::Tree,
        k => ForestShape::Disconnected(k),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorted_ops() {
        assert_eq!(intersect_sorted(&[1, 3, 5, 7], &[3, 4, 5]), vec![3, 5]);
        assert_eq!(union_sorted(&[1, 3], &[2, 3, 9]), vec![1, 2, 3, 9]);
        assert!(is_subset_sorted(&[], &[1]));
        assert!(is_subset_sorted(&[2, 4], &[1, 2, 3, 4]));
        assert!(!is_subset_sorted(&[2, 5], &[1, 2, 3, 4]));
    }

    #[test]
    fn forest_shapes() {
        assert_eq!(forest_shape(1, []), ForestShape::Tree);
        assert_eq!(forest_shape(3, [(0, 1), (1, 2)]), ForestShape::Tree);
        assert_eq!(forest_shape(3, [(0, 1)]), ForestShape::Disconnected(2));
        assert_eq!(
            forest_shape(3, [(0, 1), (1, 2), (2, 0)]),
            ForestShape::Cyclic(2)
        );
    }
}
