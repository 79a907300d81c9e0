use crate::error::{Error, Result};
use crate::graph::{degeneracy, Graph};
use crate::verify::Coloring;

pub const DEFAULT_CF_MAX_N: usize = 16;

/// Conflict-free chromatic number and an optimal colouring (colours
/// `0..r`, no filler), for graphs up to [`DEFAULT_CF_MAX_N`] vertices.
pub fn exact_cf_chromatic(g: &Graph) -> Result<(usize, Coloring)> {
    exact_cf_chromatic_with_cap(g, DEFAULT_CF_MAX_N)
}

/// The empty graph on zero vertices has `r = 0`.
///
/// Iterative deepening on `r`. Vertices are coloured core-first (reverse
/// degeneracy elimination order) and colour `c` may only be opened once
/// colours `0..c` are in use. A vertex is checked as soon as its whole
/// closed neighbourhood is coloured.
pub fn exact_cf_chromatic_with_cap(g: &Graph, cap: usize) -> Result<(usize, Coloring)> {
    let n = g.n();
    if n > cap || n > 32 {
        return Err(Error::CapExceeded {
            what: "exact conflict-free chromatic number".into(),
            estimate: n as u128,
            cap: cap.min(32) as u128,
        });
    }
    if n == 0 {
        return Ok((0, Coloring::new(Vec::new())));
    }
    let search = CfSearch::new(g);
    let lower = if g.edge_count() > 0 { 2 } else { 1 };
    for r in lower..=n {
        if let Some(colors) = search.solve(r) {
            return Ok((r, Coloring::new(colors)));
        }
    }
    unreachable!("a rainbow colouring is always conflict-free")
}

struct CfSearch {
    n: usize,
    order: Vec<usize>,
    /// closed neighbourhoods, indexed by vertex
    closed: Vec<Vec<usize>>,
    /// vertices whose closed neighbourhood is complete after step `t`
    checks: Vec<Vec<usize>>,
}

impl CfSearch {
    fn new(g: &Graph) -> Self {
        let n = g.n();
        let order: Vec<usize> = degeneracy(g).elimination_order.into_iter().rev().collect();
        let mut pos = vec![0; n];
        for (t, &v) in order.iter().enumerate() {
            pos[v] = t;
        }
        let closed: Vec<Vec<usize>> = (0..n)
            .map(|v| std::iter::once(v).chain(g.neighbors(v)).collect())
            .collect();
        let mut checks = vec![Vec::new(); n];
        for w in 0..n {
            let last = closed[w].iter().map(|&u| pos[u]).max().unwrap();
            checks[last].push(w);
        }
        CfSearch { n, order, closed, checks }
    }

    fn solve(&self, r: usize) -> Option<Vec<u32>> {
        let mut colors = vec![u32::MAX; self.n];
        if self.dfs(0, 0, r, &mut colors) {
            Some(colors)
        } else {
            None
        }
    }

    fn dfs(&self, t: usize, used: usize, r: usize, colors: &mut [u32]) -> bool {
        if t == self.n {
            return true;
        }
        let v = self.order[t];
        for c in 0..r.min(used + 1) {
            colors[v] = c as u32;
            if self.checks[t].iter().all(|&w| self.has_unique(w, colors))
                && self.dfs(t + 1, used.max(c + 1), r, colors)
            {
                return true;
            }
        }
        colors[v] = u32::MAX;
        false
    }

    fn has_unique(&self, w: usize, colors: &[u32]) -> bool {
        let mut count = [0u8; 33];
        for &u in &self.closed[w] {
            count[colors[u] as usize] += 1;
        }
        self.closed[w].iter().any(|&u| count[colors[u] as usize] == 1)
    }
}
