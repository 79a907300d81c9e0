use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::verify::SetFamily;

pub const DEFAULT_CF_PRIME_MAX_N: usize = 10;

pub fn exact_cf_prime(g: &Graph) -> Result<(usize, SetFamily)> {
    exact_cf_prime_with_cap(g, DEFAULT_CF_PRIME_MAX_N)
}

/// Smallest family of (possibly overlapping) vertex subsets such that every
/// open neighbourhood meets some member in exactly one vertex.
///
/// Each of the `2^n` subsets is reduced to the set of vertices it serves;
/// subsets whose service set is contained in another's are dropped, and
/// among equal service sets the first subset in numeric (bitmask) order is
/// kept. The remaining set cover is solved by iterative deepening.
pub fn exact_cf_prime_with_cap(g: &Graph, cap: usize) -> Result<(usize, SetFamily)> {
    let n = g.n();
    if n > cap || n > 20 {
        return Err(Error::CapExceeded {
            what: "exact covering-family search".into(),
            estimate: 1u128 << n.min(127),
            cap: 1u128 << cap.min(20),
        });
    }
    if let Some(v) = (0..n).find(|&v| g.degree(v) == 0) {
        return Err(Error::Infeasible(format!(
            "vertex {v} is isolated, so no finite family covers it"
        )));
    }
    if n == 0 {
        return Ok((0, SetFamily::empty()));
    }
    let nbr: Vec<u32> = (0..n).map(|v| g.neighbors(v).fold(0u32, |m, u| m | 1 << u)).collect();
    let full: u32 = (1 << n) - 1;

    let mut best_subset: Vec<Option<u32>> = vec![None; 1 << n];
    for f in 1..=full {
        let serves = (0..n).filter(|&x| (nbr[x] & f).count_ones() == 1).fold(0u32, |m, x| m | 1 << x);
        if serves != 0 && best_subset[serves as usize].is_none() {
            best_subset[serves as usize] = Some(f);
        }
    }
    let present: Vec<u32> = (1..=full).filter(|&s| best_subset[s as usize].is_some()).collect();
    let maximal: Vec<u32> = present
        .iter()
        .copied()
        .filter(|&s| !present.iter().any(|&t| t != s && t & s == s))
        .collect();

    let mut chosen = Vec::new();
    for k in 1..=n {
        if cover_dfs(&maximal, full, 0, k, &mut chosen) {
            let mut sets: Vec<u32> = chosen.iter().map(|&s| best_subset[s as usize].unwrap()).collect();
            sets.sort_unstable();
            let fam = sets
                .into_iter()
                .map(|f| VertexSet::from_members(n, (0..n).filter(|&v| f >> v & 1 == 1)))
                .collect::<Result<Vec<_>>>()?;
            return Ok((k, SetFamily::new(fam)));
        }
    }
    unreachable!("one singleton neighbour per vertex always covers")
}

fn cover_dfs(options: &[u32], full: u32, covered: u32, left: usize, chosen: &mut Vec<u32>) -> bool {
    if covered == full {
        return true;
    }
    if left == 0 {
        return false;
    }
    let uncovered = full & !covered;
    let gain = options.iter().map(|&s| (s & uncovered).count_ones()).max().unwrap_or(0);
    if (gain as usize) * left < uncovered.count_ones() as usize {
        return false;
    }
    // branch on the uncovered vertex with the fewest serving options
    let x = (0..32)
        .filter(|&x| uncovered >> x & 1 == 1)
        .min_by_key(|&x| options.iter().filter(|&&s| s >> x & 1 == 1).count())
        .unwrap();
    for &s in options.iter().filter(|&&s| s >> x & 1 == 1) {
        chosen.push(s);
        if cover_dfs(options, full, covered | s, left - 1, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}
