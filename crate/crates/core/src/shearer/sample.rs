//! Seeded sampler for the block factor `X_v = Y_v ∏_{w ∈ N⁻(v)} (1 − Y_w)`.
//!
//! Generator: `ChaCha8Rng::seed_from_u64(seed)`. Each sample draws one
//! uniform `f64` in `[0, 1)` per vertex, in linear-extension order, and sets
//! `Y_v = (u < c_v)`. Successive samples continue the same stream.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

use super::order::TreeOrder;
use super::CouplingVector;

#[derive(Clone, Debug)]
pub struct BlockFactorSampler {
    linear: Vec<VertexId>,
    lesser: Vec<Vec<VertexId>>,
    c: Vec<f64>,
    rng: ChaCha8Rng,
}

impl BlockFactorSampler {
    pub fn new(g: &Graph, o: &TreeOrder, c: &CouplingVector<f64>, seed: u64) -> Result<Self> {
        let n = g.vertex_count();
        c.check_len(n)?;
        if o.vertex_count() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: o.vertex_count(),
            });
        }
        Ok(BlockFactorSampler {
            linear: o.linear_extension().to_vec(),
            lesser: (0..n).map(|v| o.lesser_neighbours(g, v)).collect(),
            c: c.values().to_vec(),
            rng: ChaCha8Rng::seed_from_u64(seed),
        })
    }

    /// Next `X`, indexed by vertex id.
    pub fn sample(&mut self) -> Vec<bool> {
        let mut y = vec![false; self.c.len()];
        for &v in &self.linear {
            y[v] = self.rng.random::<f64>() < self.c[v];
        }
        (0..y.len())
            .map(|v| y[v] && self.lesser[v].iter().all(|&w| !y[w]))
            .collect()
    }

    /// Next `X` as a vertex-id bitmask; needs at most 64 vertices.
    pub fn sample_mask(&mut self) -> u64 {
        assert!(self.c.len() <= 64, "bitmask samples need at most 64 vertices");
        self.sample()
            .iter()
            .enumerate()
            .filter(|(_, &x)| x)
            .fold(0, |m, (v, _)| m | 1 << v)
    }
}

/// The first sample of the stream for `seed`.
pub fn sample_block_factor(g: &Graph, o: &TreeOrder, c: &CouplingVector<f64>, seed: u64) -> Result<Vec<bool>> {
    Ok(BlockFactorSampler::new(g, o, c, seed)?.sample())
}
