use crate::error::{Error, Result};
use crate::graph::{degeneracy_coloring, Graph};

pub const DEFAULT_CHI_MAX_N: usize = 16;

pub fn exact_chromatic(g: &Graph) -> Result<usize> {
    exact_chromatic_with_cap(g, DEFAULT_CHI_MAX_N)
}

/// Proper chromatic number by backtracking: colours are opened in order,
/// vertices visited core-first, and the degeneracy colouring supplies the
/// starting upper bound.
pub fn exact_chromatic_with_cap(g: &Graph, cap: usize) -> Result<usize> {
    let n = g.n();
    if n > cap {
        return Err(Error::CapExceeded {
            what: "exact chromatic number".into(),
            estimate: n as u128,
            cap: cap as u128,
        });
    }
    if n == 0 {
        return Ok(0);
    }
    let (deg, greedy) = degeneracy_coloring(g);
    let upper = greedy.iter().max().map_or(0, |&c| c as usize + 1);
    let order: Vec<usize> = deg.elimination_order.into_iter().rev().collect();
    let lower = if g.edge_count() > 0 { 2 } else { 1 };
    for r in lower..upper {
        let mut colors = vec![u32::MAX; n];
        if proper_dfs(g, &order, 0, 0, r, &mut colors) {
            return Ok(r);
        }
    }
    Ok(upper)
}

fn proper_dfs(g: &Graph, order: &[usize], t: usize, used: usize, r: usize, colors: &mut [u32]) -> bool {
    if t == order.len() {
        return true;
    }
    let v = order[t];
    for c in 0..r.min(used + 1) {
        if g.neighbors(v).any(|u| colors[u] == c as u32) {
            continue;
        }
        colors[v] = c as u32;
        if proper_dfs(g, order, t + 1, used.max(c + 1), r, colors) {
            return true;
        }
    }
    colors[v] = u32::MAX;
    false
}
