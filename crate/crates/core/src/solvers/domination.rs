use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::verify::{is_conflict_free, is_dominating, Coloring};

/// Default bound on search nodes before `exact_domination` refuses.
pub const DEFAULT_DOM_NODE_BUDGET: u64 = 2_000_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Domination {
    /// The domination number, or `size_cap + 1` when it exceeds the cap.
    pub value: usize,
    pub exceeds_cap: bool,
    /// A minimum dominating set (absent when the cap was exceeded).
    pub witness: Option<Vec<usize>>,
    pub nodes: u64,
}

/// Smallest dominating set. With `size_cap`, only decides whether the
/// domination number is at most the cap.
pub fn exact_domination(g: &Graph, size_cap: Option<usize>) -> Result<Domination> {
    exact_domination_with_budget(g, size_cap, DEFAULT_DOM_NODE_BUDGET)
}

/// Iterative deepening over the target size with branch and bound. At each
/// node the undominated vertex with fewest admissible dominators is
/// branched on; siblings already tried are excluded from later branches, so
/// every candidate set is visited at most once. A node is cut when the
/// fractional bound `sum_u 1 / max_{v in N[u]} |N[v] ∩ U|` over the
/// undominated set `U` exceeds the remaining budget.
pub fn exact_domination_with_budget(g: &Graph, size_cap: Option<usize>, node_budget: u64) -> Result<Domination> {
    let n = g.n();
    let greedy = greedy_dominating_set(g);
    let mut search = DomSearch::new(g, node_budget);
    let top = size_cap.map_or(greedy.len(), |c| c.min(greedy.len()));
    let root_undom = search.full.clone();
    let lower = if n == 0 { 0 } else { search.fractional_bound(&root_undom, &search.full.clone()).max(1) };
    for k in lower..=top {
        if k == greedy.len() {
            break;
        }
        let mut picked = Vec::new();
        let all = search.full.clone();
        if search.dfs(&root_undom, &all, k, &mut picked)? {
            picked.sort_unstable();
            return Ok(Domination { value: picked.len(), exceeds_cap: false, witness: Some(picked), nodes: search.nodes });
        }
    }
    if greedy.len() <= top {
        return Ok(Domination {
            value: greedy.len(),
            exceeds_cap: false,
            witness: Some(greedy.to_vec()),
            nodes: search.nodes,
        });
    }
    let cap = size_cap.expect("search without cap always reaches the greedy size");
    Ok(Domination { value: cap + 1, exceeds_cap: true, witness: None, nodes: search.nodes })
}

struct DomSearch {
    n: usize,
    /// closed neighbourhoods as bit rows
    rows: Vec<Vec<u64>>,
    full: Vec<u64>,
    nodes: u64,
    budget: u64,
}

fn bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            (w != 0).then(|| {
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                i * 64 + b
            })
        })
    })
}

fn and_count(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as usize).sum()
}

impl DomSearch {
    fn new(g: &Graph, budget: u64) -> Self {
        let n = g.n();
        let rows = (0..n).map(|v| g.closed_neighborhood(v).unwrap().words().to_vec()).collect();
        let full = VertexSet::full(n).words().to_vec();
        DomSearch { n, rows, full, nodes: 0, budget }
    }

    /// `ceil` of the fractional lower bound on picks needed to dominate
    /// `undom` using `allowed`, or `usize::MAX` if some vertex cannot be
    /// dominated at all.
    fn fractional_bound(&self, undom: &[u64], allowed: &[u64]) -> usize {
        let cover: Vec<usize> = (0..self.n)
            .map(|v| if allowed[v / 64] >> (v % 64) & 1 == 1 { and_count(&self.rows[v], undom) } else { 0 })
            .collect();
        let mut total = 0.0;
        for u in bits(undom) {
            let best = bits(&self.rows[u]).map(|v| cover[v]).max().unwrap_or(0);
            if best == 0 {
                return usize::MAX;
            }
            total += 1.0 / best as f64;
        }
        (total - 1e-9).ceil().max(0.0) as usize
    }

    fn dfs(&mut self, undom: &[u64], allowed: &[u64], left: usize, picked: &mut Vec<usize>) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::CapExceeded {
                what: format!("exact domination search (deciding size {})", picked.len() + left),
                estimate: self.nodes as u128,
                cap: self.budget as u128,
            });
        }
        if undom.iter().all(|&w| w == 0) {
            return Ok(true);
        }
        if left == 0 {
            return Ok(false);
        }
        if left == 1 {
            let mut common = allowed.to_vec();
            for u in bits(undom) {
                for (c, r) in common.iter_mut().zip(&self.rows[u]) {
                    *c &= r;
                }
            }
            if let Some(v) = bits(&common).next() {
                picked.push(v);
                return Ok(true);
            }
            return Ok(false);
        }

        let cover: Vec<usize> = (0..self.n)
            .map(|v| if allowed[v / 64] >> (v % 64) & 1 == 1 { and_count(&self.rows[v], undom) } else { 0 })
            .collect();
        let mut total = 0.0;
        let mut branch = (usize::MAX, 0);
        for u in bits(undom) {
            let mut best = 0;
            let mut options = 0;
            for v in bits(&self.rows[u]) {
                if cover[v] > 0 {
                    options += 1;
                    best = best.max(cover[v]);
                }
            }
            if options == 0 {
                return Ok(false);
            }
            total += 1.0 / best as f64;
            if options < branch.0 {
                branch = (options, u);
            }
        }
        if total > left as f64 + 1e-9 {
            return Ok(false);
        }

        let u = branch.1;
        let mut cands: Vec<usize> = bits(&self.rows[u]).filter(|&v| cover[v] > 0).collect();
        cands.sort_by_key(|&v| (std::cmp::Reverse(cover[v]), v));
        let mut allowed = allowed.to_vec();
        for v in cands {
            allowed[v / 64] &= !(1 << (v % 64));
            let next: Vec<u64> = undom.iter().zip(&self.rows[v]).map(|(a, r)| a & !r).collect();
            picked.push(v);
            if self.dfs(&next, &allowed, left - 1, picked)? {
                return Ok(true);
            }
            picked.pop();
        }
        Ok(false)
    }
}

/// Repeatedly picks the vertex dominating the most undominated vertices
/// (smallest id on ties).
pub fn greedy_dominating_set(g: &Graph) -> VertexSet {
    let n = g.n();
    let mut undominated = vec![true; n];
    let mut left = n;
    let mut out = VertexSet::new(n);
    while left > 0 {
        let gain = |v: usize| {
            usize::from(undominated[v]) + g.neighbors(v).filter(|&u| undominated[u]).count()
        };
        let best = (0..n).max_by_key(|&v| (gain(v), std::cmp::Reverse(v))).unwrap();
        out.insert(best);
        for u in std::iter::once(best).chain(g.neighbors(best)) {
            if undominated[u] {
                undominated[u] = false;
                left -= 1;
            }
        }
    }
    out
}

/// Colours the members of a dominating set `s` with distinct colours
/// `1..=|s|` and every other vertex with colour 0.
pub fn domination_coloring(g: &Graph, s: &VertexSet) -> Result<Coloring> {
    if !is_dominating(g, s)? {
        return invalid("vertex set is not dominating");
    }
    let mut colors = vec![0u32; g.n()];
    for (i, v) in s.iter().enumerate() {
        colors[v] = i as u32 + 1;
    }
    let c = Coloring::new(colors);
    debug_assert!(is_conflict_free(g, &c, false).unwrap().is_ok());
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        assert_eq!(exact_domination(&Graph::complete(6), None).unwrap().value, 1);
        assert_eq!(exact_domination(&Graph::star(4), None).unwrap().value, 1);
        assert_eq!(exact_domination(&Graph::cycle(5), None).unwrap().value, 2);
        assert_eq!(exact_domination(&Graph::edgeless(4), None).unwrap().value, 4);
        assert_eq!(exact_domination(&Graph::edgeless(0), None).unwrap().value, 0);
        assert_eq!(exact_domination(&Graph::path(7), None).unwrap().value, 3);
    }

    #[test]
    fn size_cap() {
        let d = exact_domination(&Graph::edgeless(5), Some(2)).unwrap();
        assert!(d.exceeds_cap);
        assert_eq!(d.value, 3);
        let d = exact_domination(&Graph::cycle(9), Some(3)).unwrap();
        assert!(!d.exceeds_cap);
        assert_eq!(d.value, 3);
    }

    #[test]
    fn witness_dominates() {
        let g = Graph::cycle(11);
        let d = exact_domination(&g, None).unwrap();
        assert_eq!(d.value, 4);
        let s = VertexSet::from_members(11, d.witness.unwrap()).unwrap();
        assert!(is_dominating(&g, &s).unwrap());
    }

    #[test]
    fn budget_refusal() {
        let g = crate::models::sample_gnp(&crate::models::GnpSpec::new(60, 0.1, 1).unwrap()).unwrap();
        assert!(matches!(
            exact_domination_with_budget(&g, None, 3),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn domination_coloring_examples() {
        let k3 = Graph::complete(3);
        let s = VertexSet::from_members(3, [0]).unwrap();
        let c = domination_coloring(&k3, &s).unwrap();
        assert_eq!(c.colors(), &[1, 0, 0]);
        assert!(is_conflict_free(&k3, &c, false).unwrap().is_ok());

        let c5 = Graph::cycle(5);
        let s = VertexSet::from_members(5, [0, 2]).unwrap();
        let c = domination_coloring(&c5, &s).unwrap();
        assert_eq!(c.distinct_colors(), 3);
        assert!(is_conflict_free(&c5, &c, false).unwrap().is_ok());

        let all = VertexSet::full(4);
        let c = domination_coloring(&Graph::path(4), &all).unwrap();
        assert_eq!(c.colors(), &[1, 2, 3, 4]);

        assert!(domination_coloring(&c5, &VertexSet::from_members(5, [0]).unwrap()).is_err());
    }
}
