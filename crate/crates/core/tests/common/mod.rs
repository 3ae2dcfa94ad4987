//! Shared fixtures and brute-force oracles for the integration tests.
#![allow(dead_code)]

use chordal::generate::{connected_chordal_graphs, random_chordal};
use chordal::shearer::{p_from_c, CouplingVector, ProbVector, TreeOrder};
use chordal::{CliqueGraph, CliqueTree, Graph};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

/// Uniform rational in the open interval (0, 1) with denominator ≤ 64.
pub fn open_unit<R: Rng>(rng: &mut R) -> BigRational {
    let den = rng.random_range(2..=64i64);
    q(rng.random_range(1..den), den)
}

/// All connected chordal graphs with at most `max_exhaustive` vertices, then
/// `random` seeded graphs with 1..=`max_random` vertices.
pub fn corpus(max_exhaustive: usize, random: usize, max_random: usize, seed: u64) -> Vec<Graph> {
    let mut out: Vec<Graph> = (1..=max_exhaustive).flat_map(connected_chordal_graphs).collect();
    let mut r = rng(seed);
    for _ in 0..random {
        let n = r.random_range(1..=max_random);
        out.push(random_chordal(&mut r, n));
    }
    out
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut root = x;
    while parent[root] != root {
        root = parent[root];
    }
    parent[x] = root;
    root
}

/// Every spanning tree of the clique graph, by testing each
/// `(m − 1)`-subset of edges for acyclicity.
pub fn clique_graph_spanning_trees(cg: &CliqueGraph) -> Vec<CliqueTree> {
    let m = cg.clique_count();
    let e = cg.edge_count();
    let want = m - 1;
    let mut out = Vec::new();
    let mut pick: Vec<usize> = (0..want).collect();
    if want > e {
        return out;
    }
    loop {
        let mut parent: Vec<usize> = (0..m).collect();
        let acyclic = pick.iter().all(|&i| {
            let edge = cg.edge(i);
            let (a, b) = (find(&mut parent, edge.a), find(&mut parent, edge.b));
            parent[a] = b;
            a != b
        });
        if acyclic {
            out.push(CliqueTree::new(pick.clone()));
        }
        // next combination in lexicographic order
        let mut i = want;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if pick[i] < e - want + i {
                pick[i] += 1;
                for j in i + 1..want {
                    pick[j] = pick[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Tree order from a random clique tree (among the first 64 emitted), a
/// random root clique and a random tie-break permutation.
pub fn random_tree_order<R: Rng>(g: &Graph, rng: &mut R) -> chordal::shearer::TreeOrder {
    use rand::seq::SliceRandom;
    let lattice = std::sync::Arc::new(chordal::FamilyLattice::from_graph(g).unwrap());
    let trees: Vec<CliqueTree> = chordal::CliqueTreeEnumerator::new(lattice.clone()).take(64).collect();
    let t = &trees[rng.random_range(0..trees.len())];
    let cg = lattice.clique_graph();
    let root = rng.random_range(0..cg.clique_count());
    let mut tie: Vec<usize> = g.vertices().collect();
    tie.shuffle(rng);
    chordal::shearer::build_tree_order(g, cg, t, root, &tie).unwrap()
}

/// Mode 0: interior point. Mode 1: boundary point (some `c_v = 1`).
/// Mode 2: a boundary point nudged up or down at one vertex.
/// Mode 3: independent marginals in (0, 1/4), on either side.
pub fn straddling_p<R: Rng>(
    g: &Graph,
    o: &TreeOrder,
    rng: &mut R,
    mode: u8,
) -> ProbVector<BigRational> {
    let n = g.vertex_count();
    if mode == 3 {
        return ProbVector::new((0..n).map(|_| open_unit(rng) * q(1, 4)).collect()).unwrap();
    }
    let mut c: Vec<BigRational> = (0..n).map(|_| open_unit(rng)).collect();
    if mode >= 1 {
        c[rng.random_range(0..n)] = BigRational::one();
    }
    let mut p = p_from_c(g, o, &CouplingVector::new(c).unwrap()).unwrap().p.into_values();
    if mode == 2 {
        let v = rng.random_range(0..n);
        let delta = q(1, 1000);
        p[v] = if rng.random_bool(0.5) {
            (p[v].clone() + delta).min(BigRational::one())
        } else {
            (p[v].clone() - delta).max(BigRational::zero())
        };
    }
    ProbVector::new(p).unwrap()
}
