//! Seeded random graph samplers: `G(n, p)` and the layered weighted model.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::graph::{Graph, VertexSet, WeightedGraph};
use crate::rng::{domain, pair_index, CounterRng};

pub const DEFAULT_BASE: f64 = 0.99;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GnpSpec {
    pub n: usize,
    pub p: f64,
    pub seed: u64,
}

impl GnpSpec {
    pub fn new(n: usize, p: f64, seed: u64) -> Result<Self> {
        let s = GnpSpec { n, p, seed };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.p) {
            return invalid(format!("edge probability {} not in [0,1]", self.p));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LayeredSpec {
    pub n: usize,
    #[serde(default = "default_base")]
    pub base: f64,
    pub seed: u64,
}

fn default_base() -> f64 {
    DEFAULT_BASE
}

impl LayeredSpec {
    pub fn new(n: usize, base: f64, seed: u64) -> Result<Self> {
        let s = LayeredSpec { n, base, seed };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.base > 0.0 && self.base < 1.0) {
            return invalid(format!("weight base {} not in (0,1)", self.base));
        }
        if self.n < 3 {
            return invalid(format!("layered model needs n >= 3 (so that floor(ln n) >= 1), got {}", self.n));
        }
        Ok(())
    }

    /// `floor(ln n)`.
    pub fn layer_count(&self) -> usize {
        (self.n as f64).ln().floor() as usize
    }

    /// Layer sizes: the first `n mod k` layers hold `ceil(n/k)` vertices,
    /// the rest `floor(n/k)`.
    pub fn layer_sizes(&self) -> Vec<usize> {
        let k = self.layer_count();
        let (q, r) = (self.n / k, self.n % k);
        (0..k).map(|i| if i < r { q + 1 } else { q }).collect()
    }

    /// Layer (1-based) of every vertex; layers are contiguous id ranges.
    pub fn layer_assignment(&self) -> Vec<u32> {
        self.layer_sizes()
            .iter()
            .enumerate()
            .flat_map(|(i, &sz)| std::iter::repeat_n(i as u32 + 1, sz))
            .collect()
    }
}

/// Samples `G(n, p)`: pair `{u, v}` is an edge iff the value at its pair
/// index in the seed's edge stream falls below `p`.
pub fn sample_gnp(spec: &GnpSpec) -> Result<Graph> {
    spec.validate()?;
    let rng = CounterRng::new(spec.seed, domain::GNP_EDGES);
    Ok(sample_pairs(spec.n, |u, v| rng.bernoulli_at(pair_index(u, v), spec.p)))
}

/// Samples the layered model: pair `{x, y}` is an edge with probability
/// `base^(layer(x) + layer(y))`.
pub fn sample_layered(spec: &LayeredSpec) -> Result<WeightedGraph> {
    spec.validate()?;
    let layers = spec.layer_assignment();
    let k = spec.layer_count();
    // prob[i + j] for layers i, j in 1..=k
    let prob: Vec<f64> = (0..=2 * k).map(|e| spec.base.powi(e as i32)).collect();
    let rng = CounterRng::new(spec.seed, domain::LAYERED_EDGES);
    let g = sample_pairs(spec.n, |u, v| {
        let e = (layers[u] + layers[v]) as usize;
        rng.bernoulli_at(pair_index(u, v), prob[e])
    });
    WeightedGraph::new(g, layers, spec.base)
}

fn sample_pairs(n: usize, mut edge: impl FnMut(usize, usize) -> bool) -> Graph {
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
    // Visiting u in increasing order keeps every list sorted.
    for v in 1..n {
        for u in 0..v {
            if edge(u, v) {
                adj[u].push(v as u32);
                adj[v].push(u as u32);
            }
        }
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    Graph::from_sorted_adjacency(adj)
}

/// Probability that `x` has exactly one neighbour in `s` when the edges at
/// `x` are resampled from the layered model:
/// `sum_{t in s} w_t w_x prod_{y in s, y != t} (1 - w_y w_x)`.
pub fn care_probability(wg: &WeightedGraph, x: usize, s: &VertexSet) -> Result<f64> {
    wg.graph().check_vertex(x)?;
    wg.graph().check_set(s)?;
    if s.contains(x) {
        return invalid(format!("vertex {x} belongs to the set"));
    }
    let wx = wg.weight(x);
    // (P[no neighbour so far], P[exactly one so far])
    let (_, one) = s.iter().fold((1.0f64, 0.0f64), |(none, one), y| {
        let q = wx * wg.weight(y);
        (none * (1.0 - q), one * (1.0 - q) + none * q)
    });
    Ok(one)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gnp_extremes() {
        let g = sample_gnp(&GnpSpec::new(20, 0.0, 3).unwrap()).unwrap();
        assert_eq!(g.edge_count(), 0);
        let g = sample_gnp(&GnpSpec::new(20, 1.0, 3).unwrap()).unwrap();
        assert_eq!(g, Graph::complete(20));
        assert!(GnpSpec::new(5, 1.5, 0).is_err());
        assert!(GnpSpec::new(5, -0.1, 0).is_err());
        assert_eq!(sample_gnp(&GnpSpec::new(0, 0.5, 3).unwrap()).unwrap().n(), 0);
    }

    #[test]
    fn layered_shape() {
        let spec = LayeredSpec::new(100, 0.99, 1).unwrap();
        assert_eq!(spec.layer_count(), 4);
        assert_eq!(spec.layer_sizes(), vec![25; 4]);
        let spec = LayeredSpec::new(10, 0.99, 1).unwrap();
        assert_eq!(spec.layer_sizes(), vec![5, 5]);
        let spec = LayeredSpec::new(23, 0.99, 1).unwrap();
        assert_eq!(spec.layer_count(), 3);
        assert_eq!(spec.layer_sizes(), vec![8, 8, 7]);
        assert!(LayeredSpec::new(2, 0.99, 1).is_err());
        assert!(LayeredSpec::new(10, 1.0, 1).is_err());
        let wg = sample_layered(&LayeredSpec::new(23, 0.99, 5).unwrap()).unwrap();
        assert_eq!(wg.layer_members(3), (16..23).collect::<Vec<_>>());
    }

    #[test]
    fn care_probability_examples() {
        let wg = WeightedGraph::new(Graph::edgeless(4), vec![1, 1, 1, 2], 0.99).unwrap();
        let empty = VertexSet::new(4);
        assert_eq!(care_probability(&wg, 0, &empty).unwrap(), 0.0);
        let single = VertexSet::from_members(4, [3]).unwrap();
        let expect = 0.99 * 0.99f64.powi(2);
        assert!((care_probability(&wg, 0, &single).unwrap() - expect).abs() < 1e-15);
        let pair = VertexSet::from_members(4, [1, 2]).unwrap();
        let got = care_probability(&wg, 0, &pair).unwrap();
        assert!((got - 2.0 * 0.9801 * (1.0 - 0.9801)).abs() < 1e-12);
        assert!((got - 0.03901).abs() < 5e-6);
        assert!(care_probability(&wg, 1, &pair).is_err());
    }
}
