//! Brute-force oracles and a small isomorphism-free graph enumerator,
//! written independently of the library's search code.

#![allow(dead_code)]

use std::collections::BTreeSet;

use cfchroma::Graph;

/// Adjacency as bitmasks.
pub fn masks(g: &Graph) -> Vec<u32> {
    (0..g.n()).map(|v| g.neighbors(v).fold(0, |m, u| m | 1 << u)).collect()
}

fn from_masks(adj: &[u32]) -> Graph {
    let n = adj.len();
    let edges: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).filter(move |&v| adj[u] >> v & 1 == 1).map(move |v| (u, v))).collect();
    Graph::from_edges(n, edges).unwrap()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn rec(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(k + 1, p, out);
            p.swap(k, i);
        }
    }
    rec(0, &mut p, &mut out);
    out
}

/// Smallest upper-triangle bit code over all relabellings.
fn canonical_code(adj: &[u32], perms: &[Vec<usize>]) -> u64 {
    let n = adj.len();
    let edges: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).filter(move |&v| adj[u] >> v & 1 == 1).map(move |v| (u, v))).collect();
    perms
        .iter()
        .map(|p| {
            edges.iter().fold(0u64, |code, &(u, v)| {
                let (a, b) = if p[u] < p[v] { (p[u], p[v]) } else { (p[v], p[u]) };
                code | 1 << (b * (b - 1) / 2 + a)
            })
        })
        .min()
        .unwrap_or(0)
}

/// One representative of every isomorphism class of graphs on `n`
/// vertices, built by attaching a new vertex to every class on `n - 1`.
pub fn nonisomorphic_graphs(n: usize) -> Vec<Graph> {
    let mut level: Vec<Vec<u32>> = vec![Vec::new()];
    for k in 1..=n {
        let perms = permutations(k);
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for adj in &level {
            for nb in 0u32..1 << (k - 1) {
                let mut a: Vec<u32> = adj.clone();
                for (u, m) in a.iter_mut().enumerate() {
                    if nb >> u & 1 == 1 {
                        *m |= 1 << (k - 1);
                    }
                }
                a.push(nb);
                if seen.insert(canonical_code(&a, &perms)) {
                    next.push(a);
                }
            }
        }
        level = next;
    }
    level.iter().map(|a| from_masks(a)).collect()
}

pub fn is_connected(g: &Graph) -> bool {
    if g.n() == 0 {
        return true;
    }
    let mut seen = vec![false; g.n()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for u in g.neighbors(v) {
            if !seen[u] {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Every colouring with colours `0..r`, checked against the definition.
pub fn naive_cf_number(g: &Graph) -> usize {
    let n = g.n();
    if n == 0 {
        return 0;
    }
    let closed: Vec<Vec<usize>> = (0..n).map(|v| std::iter::once(v).chain(g.neighbors(v)).collect()).collect();
    for r in 1..=n {
        let total = r.pow(n as u32);
        for code in 0..total {
            let mut c = vec![0; n];
            let mut x = code;
            for slot in c.iter_mut() {
                *slot = x % r;
                x /= r;
            }
            let ok = closed.iter().all(|nb| nb.iter().any(|&u| nb.iter().filter(|&&w| c[w] == c[u]).count() == 1));
            if ok {
                return r;
            }
        }
    }
    unreachable!()
}

pub fn naive_chromatic(g: &Graph) -> usize {
    let n = g.n();
    if n == 0 {
        return 0;
    }
    for r in 1..=n {
        for code in 0..r.pow(n as u32) {
            let mut c = vec![0; n];
            let mut x = code;
            for slot in c.iter_mut() {
                *slot = x % r;
                x /= r;
            }
            if g.edges().all(|(u, v)| c[u] != c[v]) {
                return r;
            }
        }
    }
    unreachable!()
}

pub fn naive_domination(g: &Graph) -> usize {
    let adj = masks(g);
    let n = g.n();
    let full: u32 = if n == 0 { 0 } else { (1 << n) - 1 };
    (0u32..1 << n)
        .filter(|&s| {
            let dom = (0..n).filter(|&v| s >> v & 1 == 1).fold(s, |d, v| d | adj[v]);
            dom == full
        })
        .map(|s| s.count_ones() as usize)
        .min()
        .unwrap()
}

pub fn naive_alpha(g: &Graph) -> usize {
    let adj = masks(g);
    let n = g.n();
    (0u32..1 << n)
        .filter(|&s| (0..n).all(|v| s >> v & 1 == 0 || adj[v] & s == 0))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap()
}

/// Largest minimum degree over all nonempty induced subgraphs.
pub fn naive_degeneracy(g: &Graph) -> usize {
    let adj = masks(g);
    let n = g.n();
    (1u32..1 << n)
        .map(|s| {
            (0..n)
                .filter(|&v| s >> v & 1 == 1)
                .map(|v| (adj[v] & s).count_ones() as usize)
                .min()
                .unwrap()
        })
        .max()
        .unwrap_or(0)
}

/// Smallest family of subsets covering every open neighbourhood exactly
/// once, by trying all families of size 1, 2, ... (isolated-vertex-free
/// graphs only).
pub fn naive_cf_prime(g: &Graph) -> usize {
    let adj = masks(g);
    let n = g.n();
    let full: u32 = (1 << n) - 1;
    let serves: Vec<u32> = (0u32..1 << n)
        .map(|f| (0..n).filter(|&x| (adj[x] & f).count_ones() == 1).fold(0, |m, x| m | 1 << x))
        .collect();
    let distinct: BTreeSet<u32> = serves.into_iter().collect();
    let options: Vec<u32> = distinct.into_iter().collect();
    fn search(opts: &[u32], covered: u32, full: u32, left: usize, from: usize) -> bool {
        if covered == full {
            return true;
        }
        left > 0 && (from..opts.len()).any(|i| search(opts, covered | opts[i], full, left - 1, i + 1))
    }
    (1..=n).find(|&k| search(&options, 0, full, k, 0)).unwrap()
}

/// All labelled graphs on `n` vertices.
pub fn labelled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u64..1 << pairs.len()).map(move |code| {
        let edges = pairs.iter().enumerate().filter(|(i, _)| code >> i & 1 == 1).map(|(_, &e)| e);
        Graph::from_edges(n, edges).unwrap()
    })
}
