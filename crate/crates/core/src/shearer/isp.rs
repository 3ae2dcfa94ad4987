//! The signed independent set polynomial by explicit enumeration.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

use super::{ProbVector, Scalar};

/// Largest vertex set the enumeration accepts.
pub const ISP_LIMIT: usize = 20;

/// `Σ_{I independent} ∏_{w ∈ I} (−p_w)` over the whole graph.
pub fn isp<T: Scalar>(g: &Graph, p: &ProbVector<T>) -> Result<T> {
    let all: Vec<VertexId> = g.vertices().collect();
    isp_subset(g, p, &all)
}

/// The polynomial of the induced subgraph `G[w_set]`.
pub fn isp_subset<T: Scalar>(g: &Graph, p: &ProbVector<T>, w_set: &[VertexId]) -> Result<T> {
    p.check_len(g.vertex_count())?;
    if w_set.len() > ISP_LIMIT {
        return Err(Error::SizeGate {
            what: "independent set polynomial",
            n: w_set.len(),
            limit: ISP_LIMIT,
        });
    }
    let k = w_set.len();
    let conflicts: Vec<u32> = w_set
        .iter()
        .map(|&u| {
            w_set
                .iter()
                .enumerate()
                .filter(|&(_, &v)| g.has_edge(u, v))
                .fold(0u32, |m, (j, _)| m | 1 << j)
        })
        .collect();
    let weights: Vec<T> = w_set.iter().map(|&v| -p[v].clone()).collect();
    let mut total = T::zero();
    extend(0, 0, T::one(), k, &conflicts, &weights, &mut total);
    Ok(total)
}

/// `isp(G[W])` for every vertex mask `W`, via
/// `isp(W) = isp(W ∖ v) − p_v · isp(W ∖ N[v])` with `v` the lowest vertex
/// of `W`. Needs `|V| ≤` [`ISP_LIMIT`].
pub fn isp_table<T: Scalar>(g: &Graph, p: &ProbVector<T>) -> Result<Vec<T>> {
    let n = g.vertex_count();
    p.check_len(n)?;
    if n > ISP_LIMIT {
        return Err(Error::SizeGate {
            what: "independent set polynomial table",
            n,
            limit: ISP_LIMIT,
        });
    }
    let closed: Vec<usize> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(1usize << v, |m, &w| m | 1 << w))
        .collect();
    let mut table = vec![T::one(); 1 << n];
    for mask in 1usize..1 << n {
        let v = mask.trailing_zeros() as usize;
        let without = table[mask & !(1 << v)].clone();
        let outside = table[mask & !closed[v]].clone();
        table[mask] = without - p[v].clone() * outside;
    }
    Ok(table)
}

// Adds every independent set that agrees with `chosen` on positions `< i`.
fn extend<T: Scalar>(
    i: usize,
    chosen: u32,
    product: T,
    k: usize,
    conflicts: &[u32],
    weights: &[T],
    total: &mut T,
) {
    if i == k {
        *total = total.clone() + product;
        return;
    }
    if conflicts[i] & chosen == 0 {
        let with = product.clone() * weights[i].clone();
        extend(i + 1, chosen | 1 << i, with, k, conflicts, weights, total);
    }
    extend(i + 1, chosen, product, k, conflicts, weights, total);
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn small_examples() {
        let p = ProbVector::new(vec![q(3, 10)]).unwrap();
        assert_eq!(isp(&Graph::empty(1), &p).unwrap(), q(7, 10));

        let p = ProbVector::new(vec![q(1, 4), q(1, 4)]).unwrap();
        assert_eq!(isp(&Graph::path(2), &p).unwrap(), q(1, 2));

        let p = ProbVector::new(vec![q(1, 4); 3]).unwrap();
        assert_eq!(isp(&Graph::path(3), &p).unwrap(), q(5, 16));

        let p = ProbVector::new(vec![0.6, 0.6]).unwrap();
        assert!((isp(&Graph::path(2), &p).unwrap() + 0.2).abs() < 1e-15);
    }

    #[test]
    fn subsets_and_empty_set() {
        let g = Graph::path(3);
        let p = ProbVector::new(vec![q(1, 2), q(1, 3), q(1, 5)]).unwrap();
        assert_eq!(isp_subset(&g, &p, &[]).unwrap(), q(1, 1));
        // 0 and 2 are independent: (1 - 1/2)(1 - 1/5)
        assert_eq!(isp_subset(&g, &p, &[0, 2]).unwrap(), q(2, 5));
        assert_eq!(isp_subset(&g, &p, &[0, 1]).unwrap(), q(1, 6));
    }

    #[test]
    fn table_matches_enumeration() {
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4)]).unwrap();
        let p = ProbVector::new(vec![q(1, 2), q(1, 3), q(1, 7), q(2, 9), q(1, 4)]).unwrap();
        let table = isp_table(&g, &p).unwrap();
        for (mask, value) in table.iter().enumerate() {
            let w_set: Vec<VertexId> = (0..5).filter(|&v| mask >> v & 1 == 1).collect();
            assert_eq!(*value, isp_subset(&g, &p, &w_set).unwrap(), "mask {mask:b}");
        }
    }

    #[test]
    fn gate_and_dimension() {
        let g = Graph::empty(ISP_LIMIT + 1);
        let p = ProbVector::new(vec![0.1; ISP_LIMIT + 1]).unwrap();
        assert!(matches!(isp(&g, &p), Err(Error::SizeGate { .. })));
        let p = ProbVector::new(vec![0.1]).unwrap();
        assert!(matches!(isp(&Graph::path(2), &p), Err(Error::DimensionMismatch { .. })));
    }
}
