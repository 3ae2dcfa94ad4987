//! Exact joint laws over `{0,1}^V` and the checks that identify
//! Shearer's law.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

use super::isp::isp_table;
use super::order::TreeOrder;
use super::{CouplingVector, ProbVector, Scalar};

/// Largest graph for which the full table is built.
pub const LAW_LIMIT: usize = 16;

fn gate(n: usize) -> Result<()> {
    if n > LAW_LIMIT {
        return Err(Error::SizeGate {
            what: "exact law",
            n,
            limit: LAW_LIMIT,
        });
    }
    Ok(())
}

fn vertices_of(mask: usize, n: usize) -> Vec<VertexId> {
    (0..n).filter(|&v| mask >> v & 1 == 1).collect()
}

/// Joint law of `X`, indexed by the vertex-id bitmask of `{v : X_v = 1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactLaw<T> {
    n: usize,
    linear: Vec<VertexId>,
    probs: Vec<T>,
}

impl<T: Scalar> ExactLaw<T> {
    /// `linear` fixes the bit order of the exported keys.
    pub fn new(linear: Vec<VertexId>, probs: Vec<T>) -> Result<Self> {
        let n = linear.len();
        gate(n)?;
        if probs.len() != 1 << n {
            return Err(Error::DimensionMismatch {
                expected: 1 << n,
                found: probs.len(),
            });
        }
        Ok(ExactLaw { n, linear, probs })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn linear_extension(&self) -> &[VertexId] {
        &self.linear
    }

    pub fn probs(&self) -> &[T] {
        &self.probs
    }

    /// Probability that exactly the vertices in `mask` are 1.
    pub fn prob(&self, mask: usize) -> &T {
        &self.probs[mask]
    }

    pub fn total(&self) -> T {
        self.probs.iter().cloned().fold(T::zero(), |a, b| a + b)
    }

    /// Bitstring of `mask`, one character per vertex in linear-extension order.
    pub fn key(&self, mask: usize) -> String {
        self.linear
            .iter()
            .map(|&v| if mask >> v & 1 == 1 { '1' } else { '0' })
            .collect()
    }

    /// Inverse of [`ExactLaw::key`].
    pub fn mask_of(&self, key: &str) -> Option<usize> {
        if key.len() != self.n {
            return None;
        }
        key.chars().zip(&self.linear).try_fold(0, |m, (ch, &v)| match ch {
            '1' => Some(m | 1 << v),
            '0' => Some(m),
            _ => None,
        })
    }

    /// Bitstring to probability, every outcome listed.
    pub fn export(&self) -> BTreeMap<String, String> {
        (0..self.probs.len())
            .map(|m| (self.key(m), self.probs[m].to_string()))
            .collect()
    }
}

/// Law of `X_v = Y_v ∏_{w ∈ N⁻(v)} (1 − Y_w)` with independent
/// `Y_v ~ Bernoulli(c_v)`, summed over all `2^|V|` outcomes of `Y`.
pub fn exact_block_factor_law<T: Scalar>(g: &Graph, o: &TreeOrder, c: &CouplingVector<T>) -> Result<ExactLaw<T>> {
    let n = g.vertex_count();
    gate(n)?;
    c.check_len(n)?;
    if o.vertex_count() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: o.vertex_count(),
        });
    }
    // weight[y] = ∏ c_v^{y_v} (1 − c_v)^{1 − y_v}, built one vertex at a time
    let mut weight = vec![T::one()];
    for v in 0..n {
        let on = c[v].clone();
        let off = T::one() - on.clone();
        let mut next: Vec<T> = weight.iter().map(|w| w.clone() * off.clone()).collect();
        next.extend(weight.iter().map(|w| w.clone() * on.clone()));
        weight = next;
    }
    let lesser: Vec<usize> = (0..n)
        .map(|v| o.lesser_neighbours(g, v).into_iter().fold(0, |m, w| m | 1 << w))
        .collect();
    let mut probs = vec![T::zero(); 1 << n];
    for (y, w) in weight.into_iter().enumerate() {
        let x = (0..n)
            .filter(|&v| y >> v & 1 == 1 && y & lesser[v] == 0)
            .fold(0, |m, v| m | 1 << v);
        probs[x] = probs[x].clone() + w;
    }
    ExactLaw::new(o.linear_extension().to_vec(), probs)
}

/// Independent Bernoulli(`p_v`) coordinates.
pub fn product_law<T: Scalar>(p: &ProbVector<T>, linear: Vec<VertexId>) -> Result<ExactLaw<T>> {
    let n = p.len();
    gate(n)?;
    let probs = (0..1usize << n)
        .map(|x| {
            (0..n).fold(T::one(), |acc, v| {
                if x >> v & 1 == 1 {
                    acc * p[v].clone()
                } else {
                    acc * (T::one() - p[v].clone())
                }
            })
        })
        .collect();
    ExactLaw::new(linear, probs)
}

/// Where a check attains its largest deviation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckWitness {
    Subset(Vec<VertexId>),
    Vertex(VertexId),
    Edge(VertexId, VertexId),
    /// `ones` is the assignment over `u ∪ w` whose probability does not factor.
    Split {
        u: Vec<VertexId>,
        w: Vec<VertexId>,
        ones: Vec<VertexId>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub passed: bool,
    pub max_deviation: f64,
    /// Set when the check fails.
    pub witness: Option<CheckWitness>,
}

struct Tracker<T> {
    tol: T,
    worst: Option<(T, CheckWitness)>,
}

impl<T: Scalar> Tracker<T> {
    fn new(tol: &T) -> Self {
        Tracker {
            tol: tol.clone(),
            worst: None,
        }
    }

    fn observe(&mut self, dev: T, witness: impl FnOnce() -> CheckWitness) {
        if self.worst.as_ref().is_none_or(|(w, _)| dev > *w) {
            self.worst = Some((dev, witness()));
        }
    }

    fn finish(self) -> CheckOutcome {
        match self.worst {
            None => CheckOutcome {
                passed: true,
                max_deviation: 0.0,
                witness: None,
            },
            Some((dev, witness)) => {
                let passed = dev <= self.tol;
                CheckOutcome {
                    passed,
                    max_deviation: dev.to_f64_lossy(),
                    witness: (!passed).then_some(witness),
                }
            }
        }
    }
}

/// The four defining properties of Shearer's law for `p`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ShearerReport {
    /// `P(X_W = 0) = isp(G[W], p)` for every `W ⊆ V`.
    pub avoidance: CheckOutcome,
    /// `P(X_v = 1) = p_v`.
    pub marginals: CheckOutcome,
    /// `P(X_u = X_v = 1) = 0` on every edge.
    pub edge_exclusion: CheckOutcome,
    /// `X_U` independent of `X_W` whenever `d(U, W) > 1`.
    pub one_dependence: CheckOutcome,
}

impl ShearerReport {
    pub fn checks(&self) -> [(&'static str, &CheckOutcome); 4] {
        [
            ("avoidance", &self.avoidance),
            ("marginals", &self.marginals),
            ("edge_exclusion", &self.edge_exclusion),
            ("one_dependence", &self.one_dependence),
        ]
    }

    pub fn passed(&self) -> bool {
        self.checks().iter().all(|(_, c)| c.passed)
    }
}

/// Runs all four checks with absolute tolerance `tol`.
///
/// 1-dependence is checked for every non-empty `U` against
/// `W = V ∖ N[U]`; independence from that largest admissible `W` implies
/// it for every subset. Cost grows like `4^|V|`.
pub fn verify_shearer_law<T: Scalar>(law: &ExactLaw<T>, g: &Graph, p: &ProbVector<T>, tol: &T) -> Result<ShearerReport> {
    let n = g.vertex_count();
    if law.vertex_count() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: law.vertex_count(),
        });
    }
    p.check_len(n)?;
    let full = (1usize << n) - 1;

    // subset[m] = P(X ⊆ m), superset[m] = P(X ⊇ m)
    let mut subset = law.probs.clone();
    let mut superset = law.probs.clone();
    for v in 0..n {
        for m in 0..=full {
            if m >> v & 1 == 1 {
                subset[m] = subset[m].clone() + subset[m ^ 1 << v].clone();
            } else {
                superset[m] = superset[m].clone() + superset[m | 1 << v].clone();
            }
        }
    }

    let isp = isp_table(g, p)?;
    let mut avoidance = Tracker::new(tol);
    for w in 0..=full {
        let dev = subset[full ^ w].abs_diff(&isp[w]);
        avoidance.observe(dev, || CheckWitness::Subset(vertices_of(w, n)));
    }

    let mut marginals = Tracker::new(tol);
    for v in 0..n {
        marginals.observe(superset[1 << v].abs_diff(&p[v]), || CheckWitness::Vertex(v));
    }

    let mut edges = Tracker::new(tol);
    for (u, v) in g.edges() {
        edges.observe(superset[1 << u | 1 << v].abs_diff(&T::zero()), || CheckWitness::Edge(u, v));
    }

    let closed: Vec<usize> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(1usize << v, |m, &w| m | 1 << w))
        .collect();
    let mut dependence = Tracker::new(tol);
    for u in 1..=full {
        let hood = (0..n).filter(|&v| u >> v & 1 == 1).fold(0, |m, v| m | closed[v]);
        let w = full & !hood;
        if w == 0 {
            continue;
        }
        let both = u | w;
        let mut joint = vec![T::zero(); 1 << n];
        for x in 0..=full {
            let a = x & both;
            joint[a] = joint[a].clone() + law.probs[x].clone();
        }
        let mut on_u = vec![T::zero(); 1 << n];
        let mut on_w = vec![T::zero(); 1 << n];
        let mut a = both;
        loop {
            on_u[a & u] = on_u[a & u].clone() + joint[a].clone();
            on_w[a & w] = on_w[a & w].clone() + joint[a].clone();
            if a == 0 {
                break;
            }
            a = (a - 1) & both;
        }
        let mut a = both;
        loop {
            let product = on_u[a & u].clone() * on_w[a & w].clone();
            dependence.observe(joint[a].abs_diff(&product), || CheckWitness::Split {
                u: vertices_of(u, n),
                w: vertices_of(w, n),
                ones: vertices_of(a, n),
            });
            if a == 0 {
                break;
            }
            a = (a - 1) & both;
        }
    }

    Ok(ShearerReport {
        avoidance: avoidance.finish(),
        marginals: marginals.finish(),
        edge_exclusion: edges.finish(),
        one_dependence: dependence.finish(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shearer::p_from_c;
    use num_rational::BigRational;
    use num_traits::Zero;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    fn zero() -> BigRational {
        BigRational::zero()
    }

    #[test]
    fn single_vertex_law() {
        let g = Graph::empty(1);
        let o = TreeOrder::total(&[0]).unwrap();
        let c = CouplingVector::new(vec![q(3, 10)]).unwrap();
        let law = exact_block_factor_law(&g, &o, &c).unwrap();
        assert_eq!(law.probs(), &[q(7, 10), q(3, 10)]);
    }

    #[test]
    fn edge_law() {
        let g = Graph::path(2);
        let o = TreeOrder::total(&[0, 1]).unwrap();
        let c = CouplingVector::new(vec![q(1, 2), q(1, 2)]).unwrap();
        let law = exact_block_factor_law(&g, &o, &c).unwrap();
        let exported = law.export();
        assert_eq!(exported["11"], "0");
        assert_eq!(exported["10"], "1/2");
        assert_eq!(exported["01"], "1/4");
        assert_eq!(exported["00"], "1/4");
        assert_eq!(law.total(), q(1, 1));
        assert_eq!(law.mask_of("01"), Some(2));
        assert_eq!(law.mask_of("0x"), None);
    }

    #[test]
    fn export_follows_linear_extension() {
        let g = Graph::path(2);
        let o = TreeOrder::total(&[1, 0]).unwrap();
        let c = CouplingVector::new(vec![q(1, 2), q(1, 2)]).unwrap();
        let law = exact_block_factor_law(&g, &o, &c).unwrap();
        // vertex 1 is now first and always wins when drawn
        assert_eq!(law.export()["10"], "1/2");
        assert_eq!(*law.prob(0b10), q(1, 2));
    }

    #[test]
    fn zero_coupling_is_point_mass() {
        let g = Graph::path(3);
        let o = TreeOrder::total(&[0, 2, 1]).unwrap();
        let c = CouplingVector::new(vec![zero(); 3]).unwrap();
        let law = exact_block_factor_law(&g, &o, &c).unwrap();
        assert_eq!(*law.prob(0), q(1, 1));
        assert_eq!(law.total(), q(1, 1));
    }

    #[test]
    fn block_factor_law_passes() {
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4)]).unwrap();
        let o = TreeOrder::total(&[4, 3, 0, 1, 2]).unwrap();
        let c = CouplingVector::new(vec![q(1, 3), q(1, 5), q(2, 7), q(1, 2), q(3, 4)]).unwrap();
        let law = exact_block_factor_law(&g, &o, &c).unwrap();
        let p = p_from_c(&g, &o, &c).unwrap().p;
        let report = verify_shearer_law(&law, &g, &p, &zero()).unwrap();
        assert!(report.passed(), "{report:?}");
        for (_, check) in report.checks() {
            assert_eq!(check.max_deviation, 0.0);
        }

        let lawf = exact_block_factor_law(&g, &o, &c.map(|x| x.to_f64_lossy())).unwrap();
        let pf = p.map(|x| x.to_f64_lossy());
        assert!(verify_shearer_law(&lawf, &g, &pf, &1e-12).unwrap().passed());
    }

    #[test]
    fn product_law_fails_edge_exclusion() {
        let g = Graph::path(2);
        let p = ProbVector::new(vec![q(1, 4), q(1, 4)]).unwrap();
        let law = product_law(&p, vec![0, 1]).unwrap();
        let report = verify_shearer_law(&law, &g, &p, &zero()).unwrap();
        assert!(report.marginals.passed);
        assert!(!report.edge_exclusion.passed);
        assert_eq!(report.edge_exclusion.max_deviation, 0.0625);
        assert_eq!(report.edge_exclusion.witness, Some(CheckWitness::Edge(0, 1)));
        assert!(!report.passed());
    }

    #[test]
    fn wrong_marginal_named() {
        let g = Graph::path(3);
        let o = TreeOrder::total(&[0, 2, 1]).unwrap();
        let c = CouplingVector::new(vec![q(1, 4), q(1, 3), q(1, 4)]).unwrap();
        let law = exact_block_factor_law(&g, &o, &c).unwrap();
        let mut p = p_from_c(&g, &o, &c).unwrap().p.into_values();
        p[2] = q(1, 5);
        let p = ProbVector::new(p).unwrap();
        let report = verify_shearer_law(&law, &g, &p, &zero()).unwrap();
        assert!(!report.marginals.passed);
        assert_eq!(report.marginals.witness, Some(CheckWitness::Vertex(2)));
        assert!(report.edge_exclusion.passed);
        assert!(report.one_dependence.passed);
    }

    #[test]
    fn dependent_law_fails_one_dependence() {
        // two isolated vertices that are always equal
        let g = Graph::empty(2);
        let law = ExactLaw::new(vec![0, 1], vec![q(1, 2), zero(), zero(), q(1, 2)]).unwrap();
        let p = ProbVector::new(vec![q(1, 2), q(1, 2)]).unwrap();
        let report = verify_shearer_law(&law, &g, &p, &zero()).unwrap();
        assert!(report.marginals.passed);
        assert!(!report.one_dependence.passed);
        assert_eq!(report.one_dependence.max_deviation, 0.25);
    }

    #[test]
    fn dimension_mismatch() {
        let law = ExactLaw::new(vec![0], vec![q(1, 2), q(1, 2)]).unwrap();
        let p = ProbVector::new(vec![q(1, 2), q(1, 2)]).unwrap();
        assert!(matches!(
            verify_shearer_law(&law, &Graph::path(2), &p, &zero()),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(ExactLaw::new(vec![0, 1], vec![q(1, 1)]).is_err());
    }
}
