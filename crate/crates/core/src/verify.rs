//! Decision procedures for conflict-free colourings and the set-system
//! properties used to bound the conflict-free chromatic number from below.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::graph::{non_neighborhood, Graph, VertexSet};

/// Default cap on the number of candidate families/patterns an exhaustive
/// search may visit.
pub const DEFAULT_SEARCH_CAP: u128 = 100_000_000;

/// A total vertex colouring. One colour may be designated as filler: filler
/// vertices never count as the unique colour of a neighbourhood when
/// verification is asked to respect it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    colors: Vec<u32>,
    filler: Option<u32>,
}

impl Coloring {
    pub fn new(colors: Vec<u32>) -> Self {
        Coloring { colors, filler: None }
    }

    pub fn with_filler(colors: Vec<u32>, filler: Option<u32>) -> Self {
        Coloring { colors, filler }
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> u32 {
        self.colors[v]
    }

    pub fn filler(&self) -> Option<u32> {
        self.filler
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Number of distinct colours that actually occur.
    pub fn distinct_colors(&self) -> usize {
        let mut c = self.colors.clone();
        c.sort_unstable();
        c.dedup();
        c.len()
    }

    /// Applies `f` to every colour id, filler included.
    pub fn relabel(&self, f: impl Fn(u32) -> u32) -> Coloring {
        Coloring {
            colors: self.colors.iter().map(|&c| f(c)).collect(),
            filler: self.filler.map(&f),
        }
    }

    /// Colour classes in increasing colour order, as `(colour, members)`.
    pub fn classes(&self) -> Vec<(u32, VertexSet)> {
        let mut ids: Vec<u32> = self.colors.clone();
        ids.sort_unstable();
        ids.dedup();
        ids.into_iter()
            .map(|c| {
                let members = (0..self.len()).filter(|&v| self.colors[v] == c);
                (c, VertexSet::from_members(self.len(), members).unwrap())
            })
            .collect()
    }

    fn check_total(&self, g: &Graph) -> Result<()> {
        if self.colors.len() != g.n() {
            return invalid(format!(
                "colouring covers {} vertices, graph has {}",
                self.colors.len(),
                g.n()
            ));
        }
        Ok(())
    }
}

/// An ordered list of vertex sets over one universe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFamily {
    sets: Vec<VertexSet>,
}

impl SetFamily {
    pub fn new(sets: Vec<VertexSet>) -> Self {
        SetFamily { sets }
    }

    pub fn empty() -> Self {
        SetFamily { sets: Vec::new() }
    }

    pub fn sets(&self) -> &[VertexSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Union of all members; `None` for the empty family.
    pub fn union(&self) -> Option<VertexSet> {
        let mut it = self.sets.iter();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, s| acc.union(s)))
    }

    pub fn is_pairwise_disjoint(&self) -> bool {
        self.sets
            .iter()
            .enumerate()
            .all(|(i, a)| self.sets[i + 1..].iter().all(|b| a.is_disjoint(b)))
    }

    fn check_universe(&self, g: &Graph) -> Result<()> {
        self.sets.iter().try_for_each(|s| g.check_set(s))
    }
}

/// Parameters of the `(k, f)`-spoiling property.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpoilSpec {
    pub k: usize,
    pub f: usize,
}

impl SpoilSpec {
    pub fn new(k: usize, f: usize) -> Result<Self> {
        if f == 0 {
            return invalid("spoiling threshold f must be at least 1");
        }
        Ok(SpoilSpec { k, f })
    }
}

/// Outcome of a conflict-free check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum CfVerdict {
    Ok,
    Violation { vertex: usize, explanation: String },
}

impl CfVerdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, CfVerdict::Ok)
    }
}

/// Checks that every closed neighbourhood contains a vertex whose colour
/// occurs there exactly once. With `respect_filler`, vertices of the
/// colouring's filler colour never serve as that witness. Isolated vertices
/// always pass. The first violating vertex (smallest id) is reported.
pub fn is_conflict_free(g: &Graph, c: &Coloring, respect_filler: bool) -> Result<CfVerdict> {
    c.check_total(g)?;
    let banned = if respect_filler { c.filler() } else { None };
    let max_color = c.colors().iter().copied().max().unwrap_or(0) as usize;
    let mut count = vec![0u32; max_color + 1];
    for x in 0..g.n() {
        if g.degree(x) == 0 {
            continue;
        }
        let closed = || std::iter::once(x).chain(g.neighbors(x));
        for y in closed() {
            count[c.color(y) as usize] += 1;
        }
        let ok = closed().any(|y| {
            let col = c.color(y);
            count[col as usize] == 1 && Some(col) != banned
        });
        if !ok {
            let mut seen: Vec<u32> = closed().map(|y| c.color(y)).collect();
            seen.sort_unstable();
            let explanation = describe_neighborhood(&seen, banned);
            for y in closed() {
                count[c.color(y) as usize] = 0;
            }
            return Ok(CfVerdict::Violation { vertex: x, explanation });
        }
        for y in closed() {
            count[c.color(y) as usize] = 0;
        }
    }
    Ok(CfVerdict::Ok)
}

/// All vertices whose closed neighbourhood lacks an admissible unique
/// colour, in increasing order.
pub fn conflict_free_violations(g: &Graph, c: &Coloring, respect_filler: bool) -> Result<Vec<usize>> {
    c.check_total(g)?;
    let banned = if respect_filler { c.filler() } else { None };
    let mut out = Vec::new();
    for x in (0..g.n()).filter(|&x| g.degree(x) > 0) {
        let w = unique_color_witnesses(g, c, x)?;
        if !w.iter().any(|y| Some(c.color(y)) != banned) {
            out.push(x);
        }
    }
    Ok(out)
}

fn describe_neighborhood(sorted_colors: &[u32], banned: Option<u32>) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < sorted_colors.len() {
        let c = sorted_colors[i];
        let j = sorted_colors[i..].iter().take_while(|&&x| x == c).count();
        parts.push(format!("{c}x{j}"));
        i += j;
    }
    let mut s = format!("no unique colour in closed neighbourhood (colour multiplicities: {})", parts.join(", "));
    if let Some(f) = banned {
        s.push_str(&format!("; filler colour {f} cannot be the witness"));
    }
    s
}

/// Members of `N[v]` whose colour occurs exactly once in `N[v]`.
pub fn unique_color_witnesses(g: &Graph, c: &Coloring, v: usize) -> Result<VertexSet> {
    c.check_total(g)?;
    let closed = g.closed_neighborhood(v)?;
    let mut out = VertexSet::new(g.n());
    for y in closed.iter() {
        let col = c.color(y);
        if closed.iter().filter(|&z| c.color(z) == col).count() == 1 {
            out.insert(y);
        }
    }
    Ok(out)
}

/// Every vertex is in `s` or adjacent to a member of `s`.
pub fn is_dominating(g: &Graph, s: &VertexSet) -> Result<bool> {
    Ok(non_neighborhood(g, s)?.is_empty())
}

fn spoils_set(g: &Graph, x: usize, a: &VertexSet, f: usize) -> bool {
    let hits = g.neighbors(x).filter(|&y| a.contains(y)).count();
    if a.len() == f {
        hits >= 2
    } else {
        hits != 1
    }
}

/// Whether `x` is an `f`-spoiler of `fam`: `|N(x) ∩ A| != 1` for every
/// member, and `>= 2` for members of size exactly `f`.
pub fn is_spoiler(g: &Graph, x: usize, fam: &SetFamily, f: usize) -> Result<bool> {
    g.check_vertex(x)?;
    fam.check_universe(g)?;
    if f == 0 {
        return invalid("spoiling threshold f must be at least 1");
    }
    if fam.sets().iter().any(|a| a.contains(x)) {
        return invalid(format!("vertex {x} lies inside the family"));
    }
    if !fam.is_pairwise_disjoint() {
        return invalid("family members overlap");
    }
    if let Some(a) = fam.sets().iter().find(|a| a.len() > f) {
        return invalid(format!("family member of size {} exceeds f = {f}", a.len()));
    }
    Ok(fam.sets().iter().all(|a| spoils_set(g, x, a, f)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpoilingVerdict {
    Spoiling,
    /// A family of at most `k` disjoint nonempty sets nobody spoils. Any
    /// remaining slots are filled with empty sets.
    Unspoiled(SetFamily),
}

impl SpoilingVerdict {
    pub fn is_spoiling(&self) -> bool {
        matches!(self, SpoilingVerdict::Spoiling)
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc.saturating_mul((n - i) as u128) / (i as u128 + 1))
}

/// Upper bound on the number of families `is_kf_spoiling` may visit.
pub fn spoiling_search_cost(n: usize, spec: SpoilSpec) -> u128 {
    let sets: u128 = (1..=spec.f.min(n)).map(|i| binomial(n, i)).sum();
    (0..=spec.k).fold(0u128, |acc, j| acc.saturating_add(binomial_u128(sets, j)))
}

fn binomial_u128(n: u128, k: usize) -> u128 {
    if (k as u128) > n {
        return 0;
    }
    (0..k as u128).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

pub fn is_kf_spoiling(g: &Graph, spec: SpoilSpec) -> Result<SpoilingVerdict> {
    is_kf_spoiling_with_cap(g, spec, DEFAULT_SEARCH_CAP)
}

/// Decides `(k, f)`-spoiling exhaustively.
///
/// Families are enumerated canonically (members as increasing sets, the
/// member list increasing in the same order) by depth-first search. The
/// state carries the vertices still able to spoil the prefix; once it runs
/// empty the prefix is an unspoiled family, since adding sets can only shrink
/// the spoiler pool. Families with fewer than `k` nonempty members stand for
/// themselves padded with empty sets, which every vertex spoils.
pub fn is_kf_spoiling_with_cap(g: &Graph, spec: SpoilSpec, cap: u128) -> Result<SpoilingVerdict> {
    if spec.f == 0 {
        return invalid("spoiling threshold f must be at least 1");
    }
    let n = g.n();
    let cost = spoiling_search_cost(n, spec);
    if cost > cap {
        return Err(Error::CapExceeded {
            what: format!("(k={}, f={}) spoiling search on {n} vertices", spec.k, spec.f),
            estimate: cost,
            cap,
        });
    }
    // All candidate sets of size 1..=f, in canonical order.
    let mut candidates: Vec<Vec<usize>> = Vec::new();
    let mut cur = Vec::new();
    enumerate_subsets(n, spec.f, 0, &mut cur, &mut candidates);
    candidates.sort();
    let sets: Vec<VertexSet> = candidates
        .iter()
        .map(|m| VertexSet::from_members(n, m.iter().copied()).unwrap())
        .collect();

    // With k = 0 the only family is the empty one: any vertex spoils it, but
    // there must be one, so the edgeless 0-vertex graph is not spoiling.
    let pool = VertexSet::full(n);
    let mut chosen = Vec::new();
    let used = VertexSet::new(n);
    if pool.is_empty() {
        return Ok(SpoilingVerdict::Unspoiled(SetFamily::empty()));
    }
    if let Some(w) = spoil_dfs(g, spec, &sets, 0, &pool, &used, &mut chosen) {
        return Ok(SpoilingVerdict::Unspoiled(SetFamily::new(w.iter().map(|&i| sets[i].clone()).collect())));
    }
    Ok(SpoilingVerdict::Spoiling)
}

fn enumerate_subsets(n: usize, max: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    for v in start..n {
        cur.push(v);
        out.push(cur.clone());
        if cur.len() < max {
            enumerate_subsets(n, max, v + 1, cur, out);
        }
        cur.pop();
    }
}

fn spoil_dfs(
    g: &Graph,
    spec: SpoilSpec,
    sets: &[VertexSet],
    from: usize,
    pool: &VertexSet,
    used: &VertexSet,
    chosen: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    if chosen.len() == spec.k {
        return None;
    }
    for i in from..sets.len() {
        let a = &sets[i];
        if !a.is_disjoint(used) {
            continue;
        }
        let mut next_pool = pool.difference(a);
        for x in pool.iter() {
            if next_pool.contains(x) && !spoils_set(g, x, a, spec.f) {
                next_pool.remove(x);
            }
        }
        chosen.push(i);
        if next_pool.is_empty() {
            return Some(chosen.clone());
        }
        let next_used = used.union(a);
        if let Some(w) = spoil_dfs(g, spec, sets, i + 1, &next_pool, &next_used, chosen) {
            return Some(w);
        }
        chosen.pop();
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UniversalVerdict {
    Universal,
    /// `A` with `|A| <= k` and `B ⊆ A` such that no vertex outside `A` has
    /// `N(x) ∩ A = B`.
    Missing { a: VertexSet, b: VertexSet },
}

impl UniversalVerdict {
    pub fn is_universal(&self) -> bool {
        matches!(self, UniversalVerdict::Universal)
    }
}

pub fn universal_search_cost(n: usize, k: usize) -> u128 {
    (0..=k.min(n))
        .map(|i| binomial(n, i).saturating_mul(1u128 << i.min(100)).saturating_mul(n.max(1) as u128))
        .fold(0u128, u128::saturating_add)
}

pub fn is_k_universal(g: &Graph, k: usize) -> Result<UniversalVerdict> {
    is_k_universal_with_cap(g, k, DEFAULT_SEARCH_CAP)
}

/// Decides `k`-universality. Sets `A` are visited by size, then
/// lexicographically; the first `A` missing a pattern is reported with its
/// smallest missing `B` (patterns ordered by bitmask over the members of `A`).
pub fn is_k_universal_with_cap(g: &Graph, k: usize, cap: u128) -> Result<UniversalVerdict> {
    let n = g.n();
    let cost = universal_search_cost(n, k);
    if cost > cap || k.min(n) > 24 {
        return Err(Error::CapExceeded {
            what: format!("{k}-universality search on {n} vertices"),
            estimate: cost,
            cap,
        });
    }
    for size in 0..=k.min(n) {
        let mut members = Vec::new();
        let mut result = None;
        for_each_combination(n, size, 0, &mut members, &mut |a| {
            result = missing_pattern(g, a);
            result.is_none()
        });
        if let Some((a, b)) = result {
            return Ok(UniversalVerdict::Missing {
                a: VertexSet::from_members(n, a)?,
                b: VertexSet::from_members(n, b)?,
            });
        }
    }
    Ok(UniversalVerdict::Universal)
}

/// Calls `visit` on each `size`-subset of `start..n` in lexicographic order
/// until it returns `false`.
fn for_each_combination(
    n: usize,
    size: usize,
    start: usize,
    cur: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    if cur.len() == size {
        return visit(cur);
    }
    for v in start..n {
        if n - v < size - cur.len() {
            break;
        }
        cur.push(v);
        let go_on = for_each_combination(n, size, v + 1, cur, visit);
        cur.pop();
        if !go_on {
            return false;
        }
    }
    true
}

fn missing_pattern(g: &Graph, a: &[usize]) -> Option<(Vec<usize>, Vec<usize>)> {
    let mut realized = vec![false; 1 << a.len()];
    let mut left = realized.len();
    for x in 0..g.n() {
        if a.contains(&x) {
            continue;
        }
        let pat = a
            .iter()
            .enumerate()
            .filter(|&(_, &y)| g.is_edge(x, y))
            .fold(0usize, |acc, (i, _)| acc | 1 << i);
        if !realized[pat] {
            realized[pat] = true;
            left -= 1;
            if left == 0 {
                return None;
            }
        }
    }
    let pat = realized.iter().position(|&r| !r)?;
    let b = a.iter().enumerate().filter(|&(i, _)| pat >> i & 1 == 1).map(|(_, &y)| y).collect();
    Some((a.to_vec(), b))
}

/// Which neighbourhood `is_cover_family` intersects with.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NeighborhoodMode {
    /// `N(x)`.
    #[default]
    Open,
    /// `N[x]`.
    Closed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum CoverVerdict {
    Ok,
    Uncovered { vertex: usize },
}

impl CoverVerdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, CoverVerdict::Ok)
    }
}

/// Checks that every vertex `x` has a family member `F` with
/// `|N(x) ∩ F| = 1` (or `N[x]` in closed mode). Members may overlap.
pub fn is_cover_family(g: &Graph, fam: &SetFamily, mode: NeighborhoodMode) -> Result<CoverVerdict> {
    fam.check_universe(g)?;
    for x in 0..g.n() {
        let covered = fam.sets().iter().any(|f| {
            let open = g.neighbors(x).filter(|&y| f.contains(y)).count();
            let hits = match mode {
                NeighborhoodMode::Open => open,
                NeighborhoodMode::Closed => open + usize::from(f.contains(x)),
            };
            hits == 1
        });
        if !covered {
            return Ok(CoverVerdict::Uncovered { vertex: x });
        }
    }
    Ok(CoverVerdict::Ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, m: &[usize]) -> VertexSet {
        VertexSet::from_members(n, m.iter().copied()).unwrap()
    }

    fn fam(n: usize, sets: &[&[usize]]) -> SetFamily {
        SetFamily::new(sets.iter().map(|s| set(n, s)).collect())
    }

    #[test]
    fn conflict_free_examples() {
        let k5 = Graph::complete(5);
        assert!(is_conflict_free(&k5, &Coloring::new(vec![1, 2, 2, 2, 2]), false).unwrap().is_ok());
        let empty = Graph::edgeless(5);
        assert!(is_conflict_free(&empty, &Coloring::new(vec![1; 5]), false).unwrap().is_ok());
        let v = is_conflict_free(&Graph::path(3), &Coloring::new(vec![1; 3]), false).unwrap();
        // Vertex 0 already fails: N[0] = {0, 1} is monochromatic.
        assert!(matches!(v, CfVerdict::Violation { vertex: 0, .. }));
        assert!(is_conflict_free(&k5, &Coloring::new(vec![1; 4]), false).is_err());
    }

    #[test]
    fn path_violations_listed() {
        let c = Coloring::new(vec![1; 3]);
        let all = conflict_free_violations(&Graph::path(3), &c, false).unwrap();
        assert_eq!(all, vec![0, 1, 2]);
        // Under (2,1,2,1), N[1] = {0,1,2,3} and N[3] = {1,3} have no unique
        // colour; the leaves 0 and 2 see colour 1 once.
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (1, 3)]).unwrap();
        let c = Coloring::new(vec![2, 1, 2, 1]);
        assert_eq!(conflict_free_violations(&g, &c, false).unwrap(), vec![1, 3]);
        assert!(matches!(
            is_conflict_free(&g, &c, false).unwrap(),
            CfVerdict::Violation { vertex: 1, .. }
        ));
    }

    #[test]
    fn filler_cannot_witness() {
        // K2 coloured (0, 1) with filler 0: vertex 1 still sees colour 1 once.
        let g = Graph::complete(2);
        let c = Coloring::with_filler(vec![0, 1], Some(0));
        assert!(is_conflict_free(&g, &c, true).unwrap().is_ok());
        // Star with filler centre and leaves coloured 1: leaves are fine
        // (colour 1 unique in N[leaf]), the centre sees 0 once and 1 thrice.
        let g = Graph::star(3);
        let c = Coloring::with_filler(vec![0, 1, 1, 1], Some(0));
        assert!(is_conflict_free(&g, &c, false).unwrap().is_ok());
        assert!(matches!(
            is_conflict_free(&g, &c, true).unwrap(),
            CfVerdict::Violation { vertex: 0, .. }
        ));
    }

    #[test]
    fn isolated_vertices_always_pass() {
        let g = Graph::edgeless(1);
        let c = Coloring::with_filler(vec![0], Some(0));
        assert!(is_conflict_free(&g, &c, true).unwrap().is_ok());
        assert!(conflict_free_violations(&g, &c, true).unwrap().is_empty());
    }

    #[test]
    fn witnesses() {
        let k3 = Graph::complete(3);
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(unique_color_witnesses(&g, &Coloring::new(vec![1, 1, 1]), 2).unwrap().to_vec(), vec![2]);
        assert_eq!(unique_color_witnesses(&k3, &Coloring::new(vec![1, 1, 2]), 0).unwrap().to_vec(), vec![2]);
        assert!(unique_color_witnesses(&k3, &Coloring::new(vec![1, 1, 1]), 0).unwrap().is_empty());
    }

    #[test]
    fn domination_examples() {
        assert!(is_dominating(&Graph::complete(4), &set(4, &[0])).unwrap());
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert!(!is_dominating(&g, &set(3, &[0, 1])).unwrap());
        assert!(is_dominating(&Graph::cycle(5), &set(5, &[0, 2])).unwrap());
        assert!(!is_dominating(&Graph::cycle(5), &set(5, &[0])).unwrap());
    }

    #[test]
    fn spoiler_examples() {
        let k3 = Graph::complete(3);
        assert!(is_spoiler(&k3, 2, &SetFamily::empty(), 2).unwrap());
        assert!(!is_spoiler(&k3, 2, &fam(3, &[&[0]]), 2).unwrap());
        assert!(is_spoiler(&Graph::cycle(4), 0, &fam(4, &[&[1, 3]]), 2).unwrap());
        // errors: x inside, overlap, oversized
        assert!(is_spoiler(&k3, 0, &fam(3, &[&[0]]), 2).is_err());
        assert!(is_spoiler(&Graph::complete(4), 3, &fam(4, &[&[0, 1], &[1, 2]]), 2).is_err());
        assert!(is_spoiler(&Graph::complete(4), 3, &fam(4, &[&[0, 1, 2]]), 2).is_err());
    }

    #[test]
    fn kf_spoiling_examples() {
        for g in [Graph::complete(4), Graph::cycle(5), Graph::edgeless(3)] {
            assert!(is_kf_spoiling(&g, SpoilSpec::new(0, 3).unwrap()).unwrap().is_spoiling());
        }
        match is_kf_spoiling(&Graph::complete(4), SpoilSpec::new(1, 1).unwrap()).unwrap() {
            SpoilingVerdict::Unspoiled(w) => assert_eq!(w, fam(4, &[&[0]])),
            v => panic!("unexpected {v:?}"),
        }
        assert!(SpoilSpec::new(1, 0).is_err());
        assert!(!is_kf_spoiling(&Graph::edgeless(0), SpoilSpec::new(0, 1).unwrap()).unwrap().is_spoiling());
    }

    #[test]
    fn spoiling_cap_refuses() {
        let g = Graph::edgeless(30);
        let err = is_kf_spoiling_with_cap(&g, SpoilSpec::new(3, 3).unwrap(), 1000).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { .. }));
    }

    #[test]
    fn universal_examples() {
        assert!(is_k_universal(&Graph::complete(3), 0).unwrap().is_universal());
        assert!(!is_k_universal(&Graph::edgeless(0), 0).unwrap().is_universal());
        match is_k_universal(&Graph::complete(3), 1).unwrap() {
            UniversalVerdict::Missing { a, b } => {
                assert_eq!(a.to_vec(), vec![0]);
                assert!(b.is_empty());
            }
            v => panic!("unexpected {v:?}"),
        }
        match is_k_universal(&Graph::edgeless(3), 1).unwrap() {
            UniversalVerdict::Missing { a, b } => {
                assert_eq!(a.to_vec(), vec![0]);
                assert_eq!(b.to_vec(), vec![0]);
            }
            v => panic!("unexpected {v:?}"),
        }
    }

    #[test]
    fn cover_examples() {
        let k2 = Graph::complete(2);
        assert_eq!(
            is_cover_family(&k2, &fam(2, &[&[0]]), NeighborhoodMode::Open).unwrap(),
            CoverVerdict::Uncovered { vertex: 0 }
        );
        assert!(is_cover_family(&k2, &fam(2, &[&[0], &[1]]), NeighborhoodMode::Open).unwrap().is_ok());
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(
            is_cover_family(&g, &fam(3, &[&[0], &[1], &[2], &[0, 1, 2]]), NeighborhoodMode::Open).unwrap(),
            CoverVerdict::Uncovered { vertex: 2 }
        );
        // Closed mode: {0} alone covers both ends of K2.
        assert!(is_cover_family(&k2, &fam(2, &[&[0]]), NeighborhoodMode::Closed).unwrap().is_ok());
    }
}
