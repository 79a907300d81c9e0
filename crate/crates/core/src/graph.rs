//! Simple undirected graphs on dense vertex ids `0..n` and the set operators
//! the rest of the crate is written in terms of.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Default vertex cap for [`max_independent_set_size`].
pub const DEFAULT_ALPHA_CAP: usize = 40;

/// A subset of `0..universe`, stored as a bitset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    universe: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn new(universe: usize) -> Self {
        VertexSet {
            universe,
            words: vec![0; universe.div_ceil(64)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = VertexSet::new(universe);
        for v in 0..universe {
            s.insert(v);
        }
        s
    }

    /// Builds a set from members, rejecting any member `>= universe`.
    pub fn from_members<I: IntoIterator<Item = usize>>(universe: usize, members: I) -> Result<Self> {
        let mut s = VertexSet::new(universe);
        for v in members {
            if v >= universe {
                return Err(Error::VertexOutOfRange { vertex: v, n: universe });
            }
            s.insert(v);
        }
        Ok(s)
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Panics if `v` is outside the universe.
    pub fn insert(&mut self, v: usize) -> bool {
        assert!(v < self.universe, "vertex {v} outside universe {}", self.universe);
        let (w, b) = (v / 64, v % 64);
        let was = self.words[w] >> b & 1 == 1;
        self.words[w] |= 1 << b;
        !was
    }

    pub fn remove(&mut self, v: usize) -> bool {
        if v >= self.universe {
            return false;
        }
        let (w, b) = (v / 64, v % 64);
        let was = self.words[w] >> b & 1 == 1;
        self.words[w] &= !(1 << b);
        was
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.universe && self.words[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * 64 + b)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    fn check_same_universe(&self, other: &VertexSet) {
        assert_eq!(self.universe, other.universe, "vertex sets over different universes");
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.check_same_universe(other);
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect();
        VertexSet { universe: self.universe, words }
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        self.check_same_universe(other);
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect();
        VertexSet { universe: self.universe, words }
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        self.check_same_universe(other);
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a & !b).collect();
        VertexSet { universe: self.universe, words }
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.check_same_universe(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.check_same_universe(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        self.check_same_universe(other);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// An immutable simple undirected graph on vertices `0..n`.
///
/// Neighbour lists are kept sorted, so every traversal visits vertices in
/// increasing id order.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<u32>>,
    m: usize,
}

impl Graph {
    pub fn edgeless(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], m: 0 }
    }

    /// Builds a graph from an edge list. Duplicate edges (in either
    /// orientation) are merged; self-loops and out-of-range endpoints are
    /// rejected.
    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Result<Self> {
        if n > u32::MAX as usize {
            return invalid(format!("vertex count {n} too large"));
        }
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return invalid(format!("self-loop at vertex {u}"));
            }
            adj[u].push(v as u32);
            adj[v].push(u as u32);
        }
        let mut m2 = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            m2 += list.len();
        }
        Ok(Graph { adj, m: m2 / 2 })
    }

    /// Builds a graph from neighbour lists that are already sorted,
    /// deduplicated, loop-free and symmetric.
    pub(crate) fn from_sorted_adjacency(adj: Vec<Vec<u32>>) -> Self {
        let m = adj.iter().map(Vec::len).sum::<usize>() / 2;
        debug_assert!(adj.iter().enumerate().all(|(u, l)| l.windows(2).all(|w| w[0] < w[1])
            && l.iter().all(|&v| v as usize != u)));
        Graph { adj, m }
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::from_edges(n, edges).expect("valid complete graph")
    }

    pub fn path(n: usize) -> Self {
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("valid path")
    }

    /// The cycle `0-1-...-(n-1)-0`; requires `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).expect("valid cycle")
    }

    /// The star with centre 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("valid star")
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Sorted neighbours of `v`. Panics if `v` is out of range.
    pub fn neighbors(&self, v: usize) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.adj[v].iter().map(|&u| u as usize)
    }

    pub fn is_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && v < self.n() && self.adj[u].binary_search(&(v as u32)).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            list.iter().map(|&v| v as usize).filter(move |&v| v > u).map(move |v| (u, v))
        })
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }

    pub fn check_set(&self, s: &VertexSet) -> Result<()> {
        if s.universe() != self.n() {
            return invalid(format!(
                "vertex set over universe {} used with graph on {} vertices",
                s.universe(),
                self.n()
            ));
        }
        Ok(())
    }

    /// Open neighbourhood as a set.
    pub fn neighborhood(&self, v: usize) -> Result<VertexSet> {
        self.check_vertex(v)?;
        let mut s = VertexSet::new(self.n());
        for u in self.neighbors(v) {
            s.insert(u);
        }
        Ok(s)
    }

    pub fn closed_neighborhood(&self, v: usize) -> Result<VertexSet> {
        let mut s = self.neighborhood(v)?;
        s.insert(v);
        Ok(s)
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.adj.iter().any(Vec::is_empty)
    }

    /// Subgraph induced by `keep`, relabelled densely in increasing id
    /// order. Also returns the original id of each new vertex.
    pub fn induced(&self, keep: &VertexSet) -> (Graph, Vec<usize>) {
        let old: Vec<usize> = keep.iter().filter(|&v| v < self.n()).collect();
        let mut new_id = vec![u32::MAX; self.n()];
        for (i, &v) in old.iter().enumerate() {
            new_id[v] = i as u32;
        }
        let adj = old
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter_map(|&u| Some(new_id[u as usize]).filter(|&x| x != u32::MAX))
                    .collect()
            })
            .collect();
        (Graph::from_sorted_adjacency(adj), old)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// `N[v] = N(v) ∪ {v}`.
pub fn closed_neighborhood(g: &Graph, v: usize) -> Result<VertexSet> {
    g.closed_neighborhood(v)
}

/// Vertices outside `s` with exactly one neighbour in `s`.
pub fn one_neighborhood(g: &Graph, s: &VertexSet) -> Result<VertexSet> {
    g.check_set(s)?;
    let mut hits = vec![0u8; g.n()];
    for x in s.iter() {
        for y in g.neighbors(x) {
            hits[y] = hits[y].saturating_add(1);
        }
    }
    let mut out = VertexSet::new(g.n());
    for (v, &h) in hits.iter().enumerate() {
        if h == 1 && !s.contains(v) {
            out.insert(v);
        }
    }
    Ok(out)
}

/// `V` minus the union of the closed neighbourhoods of members of `s`.
pub fn non_neighborhood(g: &Graph, s: &VertexSet) -> Result<VertexSet> {
    g.check_set(s)?;
    let mut out = VertexSet::full(g.n());
    for x in s.iter() {
        out.remove(x);
        for y in g.neighbors(x) {
            out.remove(y);
        }
    }
    Ok(out)
}

pub fn is_independent(g: &Graph, s: &VertexSet) -> Result<bool> {
    g.check_set(s)?;
    Ok(s.iter().all(|x| g.neighbors(x).all(|y| !s.contains(y))))
}

/// Result of the minimum-degree elimination.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Degeneracy {
    /// Largest minimum degree over non-empty subgraphs; `0` for `n = 0`.
    pub degeneracy: usize,
    /// Vertices in the order they were removed.
    pub elimination_order: Vec<usize>,
}

/// Repeatedly removes a vertex of minimum remaining degree (smallest id on
/// ties). The degeneracy is the largest degree seen at removal time.
pub fn degeneracy(g: &Graph) -> Degeneracy {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut heap: BinaryHeap<Reverse<(usize, usize)>> = (0..n).map(|v| Reverse((deg[v], v))).collect();
    let mut order = Vec::with_capacity(n);
    let mut d = 0;
    while let Some(Reverse((dv, v))) = heap.pop() {
        if removed[v] || dv != deg[v] {
            continue;
        }
        removed[v] = true;
        d = d.max(dv);
        order.push(v);
        for u in g.neighbors(v) {
            if !removed[u] {
                deg[u] -= 1;
                heap.push(Reverse((deg[u], u)));
            }
        }
    }
    Degeneracy { degeneracy: d, elimination_order: order }
}

/// First-fit proper colouring visiting vertices in `order`; colours are
/// `0, 1, ...`. Vertices missing from `order` keep colour `u32::MAX`.
pub fn greedy_color_in_order(g: &Graph, order: &[usize]) -> Vec<u32> {
    let mut color = vec![u32::MAX; g.n()];
    let mut taken: Vec<bool> = Vec::new();
    for &v in order {
        taken.clear();
        taken.resize(g.degree(v) + 1, false);
        for u in g.neighbors(v) {
            let c = color[u] as usize;
            if c < taken.len() {
                taken[c] = true;
            }
        }
        let c = taken.iter().position(|&t| !t).unwrap_or(taken.len());
        color[v] = c as u32;
    }
    color
}

/// Proper colouring with at most `d + 1` colours: greedy along the reverse
/// elimination order.
pub fn degeneracy_coloring(g: &Graph) -> (Degeneracy, Vec<u32>) {
    let deg = degeneracy(g);
    let rev: Vec<usize> = deg.elimination_order.iter().rev().copied().collect();
    let colors = greedy_color_in_order(g, &rev);
    (deg, colors)
}

/// Exact independence number with the default cap of
/// [`DEFAULT_ALPHA_CAP`] vertices.
pub fn max_independent_set_size(g: &Graph) -> Result<usize> {
    max_independent_set_size_with_cap(g, DEFAULT_ALPHA_CAP)
}

/// Exact independence number by branch and bound. `cap` may not exceed 64.
pub fn max_independent_set_size_with_cap(g: &Graph, cap: usize) -> Result<usize> {
    let n = g.n();
    if n > cap || n > 64 {
        return Err(Error::CapExceeded {
            what: "exact independence number".into(),
            estimate: n as u128,
            cap: cap.min(64) as u128,
        });
    }
    let nbr: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).fold(0u64, |acc, u| acc | 1 << u))
        .collect();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut best = 0;
    mis_branch(&nbr, all, 0, &mut best);
    Ok(best)
}

fn mis_branch(nbr: &[u64], mut cand: u64, mut size: usize, best: &mut usize) {
    // Vertices with no candidate neighbours always belong to some optimum.
    loop {
        let mut changed = false;
        let mut rest = cand;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if nbr[v] & cand == 0 {
                cand &= !(1 << v);
                size += 1;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    if cand == 0 {
        *best = (*best).max(size);
        return;
    }
    if size + cand.count_ones() as usize <= *best {
        return;
    }
    // Branch on a maximum-degree candidate (smallest id on ties).
    let mut pick = 0;
    let mut pick_deg = 0;
    let mut rest = cand;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let d = (nbr[v] & cand).count_ones();
        if d > pick_deg {
            pick = v;
            pick_deg = d;
        }
    }
    mis_branch(nbr, cand & !(1 << pick) & !nbr[pick], size + 1, best);
    mis_branch(nbr, cand & !(1 << pick), size, best);
}

/// Greedy maximal independent set (minimum remaining degree first,
/// smallest id on ties). A lower bound on the independence number.
pub fn greedy_independent_set(g: &Graph) -> VertexSet {
    let n = g.n();
    let mut alive = vec![true; n];
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut heap: BinaryHeap<Reverse<(usize, usize)>> = (0..n).map(|v| Reverse((deg[v], v))).collect();
    let mut out = VertexSet::new(n);
    let kill = |x: usize, alive: &mut Vec<bool>, deg: &mut Vec<usize>, heap: &mut BinaryHeap<_>| {
        alive[x] = false;
        for y in g.neighbors(x) {
            if alive[y] {
                deg[y] -= 1;
                heap.push(Reverse((deg[y], y)));
            }
        }
    };
    while let Some(Reverse((dv, v))) = heap.pop() {
        if !alive[v] || dv != deg[v] {
            continue;
        }
        out.insert(v);
        let nbrs: Vec<usize> = g.neighbors(v).filter(|&u| alive[u]).collect();
        kill(v, &mut alive, &mut deg, &mut heap);
        for u in nbrs {
            if alive[u] {
                kill(u, &mut alive, &mut deg, &mut heap);
            }
        }
    }
    out
}

/// A graph whose vertices carry layer indices `1..=k`; vertex `x` has weight
/// `base^layer(x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedGraph {
    graph: Graph,
    layer_of: Vec<u32>,
    base: f64,
}

impl WeightedGraph {
    pub fn new(graph: Graph, layer_of: Vec<u32>, base: f64) -> Result<Self> {
        if layer_of.len() != graph.n() {
            return invalid(format!(
                "{} layer entries for {} vertices",
                layer_of.len(),
                graph.n()
            ));
        }
        if !(base > 0.0 && base < 1.0) {
            return invalid(format!("weight base {base} not in (0,1)"));
        }
        if layer_of.iter().any(|&l| l == 0) {
            return invalid("layer indices start at 1");
        }
        Ok(WeightedGraph { graph, layer_of, base })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn base(&self) -> f64 {
        self.base
    }

    pub fn layer_of(&self, v: usize) -> u32 {
        self.layer_of[v]
    }

    pub fn layers(&self) -> &[u32] {
        &self.layer_of
    }

    pub fn layer_count(&self) -> u32 {
        self.layer_of.iter().copied().max().unwrap_or(0)
    }

    /// Members of layer `i` in increasing order.
    pub fn layer_members(&self, i: u32) -> Vec<usize> {
        (0..self.graph.n()).filter(|&v| self.layer_of[v] == i).collect()
    }

    pub fn weight(&self, v: usize) -> f64 {
        self.base.powi(self.layer_of[v] as i32)
    }
}

/// `w(S)`, the sum of member weights.
pub fn set_weight(wg: &WeightedGraph, s: &VertexSet) -> Result<f64> {
    wg.graph().check_set(s)?;
    Ok(s.iter().map(|v| wg.weight(v)).sum())
}
