use std::collections::BTreeSet;

use cfchroma::graph::{degeneracy_coloring, set_weight, VertexSet, WeightedGraph};
use cfchroma::io::{parse_edge_format, read_coloring_str, read_graph_str, write_coloring_json, write_edge_format, write_graph_json};
use cfchroma::models::{care_probability, sample_gnp, sample_layered, GnpSpec, LayeredSpec};
use cfchroma::rng::CounterRng;
use cfchroma::solvers::{algorithm_cfc, exact_cf_chromatic, CfcParams};
use cfchroma::verify::{is_conflict_free, Coloring};
use cfchroma::Graph;
use proptest::prelude::*;
use rand::Rng;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        prop::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut i = 0;
            for v in 1..n {
                for u in 0..v {
                    if bits[i] {
                        edges.push((u, v));
                    }
                    i += 1;
                }
            }
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

fn members(universe: usize) -> impl Strategy<Value = BTreeSet<usize>> {
    prop::collection::btree_set(0..universe, 0..=universe)
}

proptest! {
    #[test]
    fn vertex_set_ops_match_btreeset(a in members(150), b in members(150)) {
        let sa = VertexSet::from_members(150, a.iter().copied()).unwrap();
        let sb = VertexSet::from_members(150, b.iter().copied()).unwrap();
        let model = |s: BTreeSet<usize>| s.into_iter().collect::<Vec<_>>();
        prop_assert_eq!(sa.union(&sb).to_vec(), model(a.union(&b).copied().collect()));
        prop_assert_eq!(sa.intersection(&sb).to_vec(), model(a.intersection(&b).copied().collect()));
        prop_assert_eq!(sa.difference(&sb).to_vec(), model(a.difference(&b).copied().collect()));
        prop_assert_eq!(sa.is_disjoint(&sb), a.is_disjoint(&b));
        prop_assert_eq!(sa.is_subset(&sb), a.is_subset(&b));
        prop_assert_eq!(sa.intersection_len(&sb), a.intersection(&b).count());
        prop_assert_eq!(sa.len(), a.len());
    }

    #[test]
    fn conflict_freeness_survives_injective_relabelling(
        g in graph_strategy(9),
        seed in any::<u64>(),
        shift in 1u32..1000,
    ) {
        let rng = CounterRng::new(seed, 1);
        let colors: Vec<u32> = (0..g.n()).map(|v| (rng.u64_at(v as u64) % 3) as u32).collect();
        let c = Coloring::new(colors);
        let before = is_conflict_free(&g, &c, false).unwrap().is_ok();
        let after = is_conflict_free(&g, &c.relabel(|x| 7 * x + shift), false).unwrap().is_ok();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn exact_witness_is_conflict_free(g in graph_strategy(9)) {
        let (r, c) = exact_cf_chromatic(&g).unwrap();
        prop_assert!(is_conflict_free(&g, &c, false).unwrap().is_ok());
        prop_assert_eq!(c.distinct_colors(), r);
    }

    #[test]
    fn degeneracy_colouring_is_proper(g in graph_strategy(30)) {
        let (d, colors) = degeneracy_coloring(&g);
        for (u, v) in g.edges() {
            prop_assert_ne!(colors[u], colors[v]);
        }
        prop_assert!(colors.iter().all(|&c| (c as usize) <= d.degeneracy));
    }

    #[test]
    fn set_weight_is_additive(layers in prop::collection::vec(1u32..6, 1..60), split in any::<u64>()) {
        let n = layers.len();
        let wg = WeightedGraph::new(Graph::edgeless(n), layers, 0.99).unwrap();
        let rng = CounterRng::new(split, 2);
        let mut a = VertexSet::new(n);
        let mut b = VertexSet::new(n);
        for v in 0..n {
            match rng.u64_at(v as u64) % 3 {
                0 => { a.insert(v); }
                1 => { b.insert(v); }
                _ => {}
            }
        }
        let total = set_weight(&wg, &a.union(&b)).unwrap();
        let parts = set_weight(&wg, &a).unwrap() + set_weight(&wg, &b).unwrap();
        prop_assert!((total - parts).abs() < 1e-9);
    }

    #[test]
    fn samplers_are_reproducible(n in 0usize..80, p in 0.0f64..=1.0, seed in any::<u64>()) {
        let spec = GnpSpec::new(n, p, seed).unwrap();
        prop_assert_eq!(sample_gnp(&spec).unwrap(), sample_gnp(&spec).unwrap());
        if n >= 3 {
            let spec = LayeredSpec::new(n, 0.99, seed).unwrap();
            prop_assert_eq!(sample_layered(&spec).unwrap(), sample_layered(&spec).unwrap());
        }
    }

    #[test]
    fn edge_format_and_json_round_trip(g in graph_strategy(25)) {
        prop_assert_eq!(&parse_edge_format(&write_edge_format(&g)).unwrap(), &g);
        prop_assert_eq!(&read_graph_str(&write_graph_json(&g)).unwrap(), &g);
        prop_assert_eq!(&read_graph_str(&write_edge_format(&g)).unwrap(), &g);
    }

    #[test]
    fn coloring_json_round_trip(colors in prop::collection::vec(0u32..50, 0..40), filler in prop::option::of(0u32..50)) {
        let c = Coloring::with_filler(colors, filler);
        prop_assert_eq!(read_coloring_str(&write_coloring_json(&c)).unwrap(), c);
    }

    #[test]
    fn greedy_round_colouring_is_conflict_free(n in 1usize..400, p in 0.005f64..0.95, seed in any::<u64>(), k in 0.5f64..20.0) {
        let g = sample_gnp(&GnpSpec::new(n, p, seed).unwrap()).unwrap();
        let params = CfcParams { big_k: k, ..CfcParams::new(p) };
        let (c, trace) = algorithm_cfc(&g, &params).unwrap();
        prop_assert!(is_conflict_free(&g, &c, true).unwrap().is_ok());
        prop_assert_eq!(trace.colors_used, trace.identity_count());
        prop_assert!(trace.distinct_colors <= trace.colors_used);
    }
}

#[test]
fn care_probability_matches_monte_carlo() {
    let wg = sample_layered(&LayeredSpec::new(400, 0.99, 17).unwrap()).unwrap();
    let mut rng = CounterRng::new(99, 3).stream();
    for (x, size) in [(0usize, 1usize), (5, 2), (399, 3), (200, 8)] {
        let mut s = VertexSet::new(400);
        while s.len() < size {
            let y = rng.random_range(0..400);
            if y != x {
                s.insert(y);
            }
        }
        let p = care_probability(&wg, x, &s).unwrap();
        let trials = 200_000;
        let wx = wg.weight(x);
        let hits = (0..trials)
            .filter(|_| s.iter().filter(|&y| rng.random::<f64>() < wx * wg.weight(y)).count() == 1)
            .count();
        let freq = hits as f64 / trials as f64;
        let sigma = (p * (1.0 - p) / trials as f64).sqrt();
        assert!((freq - p).abs() <= 4.0 * sigma, "x={x} |S|={size}: exact {p}, observed {freq}");
    }
}
