//! Solving `p_v = c_v ∏_{w ∈ N⁻(v)} (1 − c_w)` in both directions, and
//! membership in the region where Shearer's law exists.

use serde::Serialize;

use crate::cliques::CliqueId;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::lattice::FamilyLattice;
use crate::trees::first_clique_tree;

use super::isp::{isp_subset, ISP_LIMIT};
use super::order::{build_tree_order, TreeOrder};
use super::{CouplingVector, NotInRegion, ProbVector, Scalar};

fn check_order(g: &Graph, o: &TreeOrder) -> Result<()> {
    if o.vertex_count() != g.vertex_count() {
        return Err(Error::DimensionMismatch {
            expected: g.vertex_count(),
            found: o.vertex_count(),
        });
    }
    Ok(())
}

/// Tree order from the first clique tree, rooted at `root`, ties broken by
/// vertex id.
pub fn default_tree_order(g: &Graph, root: CliqueId) -> Result<TreeOrder> {
    let lattice = FamilyLattice::from_graph(g)?;
    let t = first_clique_tree(&lattice);
    let ids: Vec<VertexId> = g.vertices().collect();
    build_tree_order(g, lattice.clique_graph(), &t, root, &ids)
}

/// Solves for `c` along the linear extension of `o`.
///
/// A vertex whose lesser neighbours already have product zero gets
/// `c_v = 0` if `p_v = 0`; with `p_v > 0` it is outside the region.
pub fn c_from_p<T: Scalar>(g: &Graph, o: &TreeOrder, p: &ProbVector<T>) -> Result<CouplingVector<T>> {
    check_order(g, o)?;
    p.check_len(g.vertex_count())?;
    let mut c = vec![T::zero(); g.vertex_count()];
    for &v in o.linear_extension() {
        let denom = o
            .lesser_neighbours(g, v)
            .into_iter()
            .fold(T::one(), |acc, w| acc * (T::one() - c[w].clone()));
        if denom.is_zero() {
            if p[v].is_zero() {
                continue;
            }
            return Err(Error::NotInRegion(NotInRegion { vertex: v, value: None }));
        }
        let cv = p[v].clone() / denom;
        if cv > T::one() {
            return Err(Error::NotInRegion(NotInRegion {
                vertex: v,
                value: Some(cv.to_f64_lossy()),
            }));
        }
        c[v] = cv;
    }
    Ok(CouplingVector(c))
}

/// Marginals of a coupling vector, and whether the correspondence is
/// strict (every `c_v < 1`).
#[derive(Clone, Debug, PartialEq)]
pub struct PFromC<T> {
    pub p: ProbVector<T>,
    pub strict: bool,
}

pub fn p_from_c<T: Scalar>(g: &Graph, o: &TreeOrder, c: &CouplingVector<T>) -> Result<PFromC<T>> {
    check_order(g, o)?;
    c.check_len(g.vertex_count())?;
    let p = g
        .vertices()
        .map(|v| {
            o.lesser_neighbours(g, v)
                .into_iter()
                .fold(c[v].clone(), |acc, w| acc * (T::one() - c[w].clone()))
        })
        .collect();
    let strict = c.values().iter().all(|x| *x < T::one());
    Ok(PFromC {
        p: ProbVector(p),
        strict,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    StrictInterior,
    Boundary,
    Outside,
}

/// Verdict with its certificate: the coupling vector inside the region,
/// the first failing vertex outside it.
#[derive(Clone, Debug, PartialEq)]
pub struct RegionVerdict<T> {
    pub region: Region,
    pub coupling: Option<CouplingVector<T>>,
    pub obstruction: Option<NotInRegion>,
}

/// Region verdict through the coupling solver for a given order.
pub fn region_membership<T: Scalar>(g: &Graph, o: &TreeOrder, p: &ProbVector<T>) -> Result<RegionVerdict<T>> {
    match c_from_p(g, o, p) {
        Ok(c) => {
            let region = if c.values().iter().all(|x| *x < T::one()) {
                Region::StrictInterior
            } else {
                Region::Boundary
            };
            Ok(RegionVerdict {
                region,
                coupling: Some(c),
                obstruction: None,
            })
        }
        Err(Error::NotInRegion(obstruction)) => Ok(RegionVerdict {
            region: Region::Outside,
            coupling: None,
            obstruction: Some(obstruction),
        }),
        Err(e) => Err(e),
    }
}

/// [`region_membership`] with [`default_tree_order`] rooted at clique 0.
pub fn shearer_region_membership<T: Scalar>(g: &Graph, p: &ProbVector<T>) -> Result<RegionVerdict<T>> {
    let o = default_tree_order(g, 0)?;
    region_membership(g, &o, p)
}

/// Brute-force verdict: outside if some induced subgraph has negative
/// independent set polynomial, strictly inside if all are positive,
/// boundary otherwise. Exponential in `|V|`.
pub fn region_oracle<T: Scalar>(g: &Graph, p: &ProbVector<T>) -> Result<Region> {
    let n = g.vertex_count();
    p.check_len(n)?;
    if n > ISP_LIMIT {
        return Err(Error::SizeGate {
            what: "region oracle",
            n,
            limit: ISP_LIMIT,
        });
    }
    let mut all_positive = true;
    for mask in 1u32..(1 << n) {
        let w_set: Vec<VertexId> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let value = isp_subset(g, p, &w_set)?;
        if value < T::zero() {
            return Ok(Region::Outside);
        }
        if value.is_zero() {
            all_positive = false;
        }
    }
    Ok(if all_positive {
        Region::StrictInterior
    } else {
        Region::Boundary
    })
}

/// `∏_{v ∈ W} (1 − c_v)` for `c = c_from_p(p)`; a lower bound on the
/// probability that every vertex of `W` is 0 under any 1-dependent law
/// with marginals `p`. Requires strict correspondence.
pub fn lll_lower_bound<T: Scalar>(
    g: &Graph,
    o: &TreeOrder,
    p: &ProbVector<T>,
    w_set: &[VertexId],
) -> Result<T> {
    let c = c_from_p(g, o, p)?;
    if let Some(vertex) = (0..c.len()).find(|&v| c[v] >= T::one()) {
        return Err(Error::NotStrictlyInside { vertex });
    }
    let mut bound = T::one();
    for &v in w_set {
        if v >= c.len() {
            return Err(Error::InvalidVertex(v));
        }
        bound = bound * (T::one() - c[v].clone());
    }
    Ok(bound)
}
