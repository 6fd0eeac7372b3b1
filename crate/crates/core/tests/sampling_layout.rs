mod common;

use netrepo_core::generators::chung_lu;
use netrepo_core::layout::{compute_layout, Point, DEFAULT_ITERATIONS};
use netrepo_core::rng::seeded;
use netrepo_core::sampler::{
    budget, sample, sample_edge, sample_induced_edge, sample_induced_edge_budget, sample_node,
    Sample, SampleConfig, SampleMethod,
};
use netrepo_core::stats::compute_all;
use netrepo_core::Graph;

use common::{clique, gnp, mean_sd, star};

fn assert_subgraph(g: &Graph, s: &Sample, induced: bool) {
    let map = &s.node_map;
    assert!(map.windows(2).all(|w| w[0] < w[1]));
    for (u, v) in s.graph.edges() {
        assert!(g.has_edge(map[u as usize], map[v as usize]));
    }
    if induced {
        for i in 0..map.len() {
            for j in i + 1..map.len() {
                assert_eq!(
                    g.has_edge(map[i], map[j]),
                    s.graph.has_edge(i as u32, j as u32)
                );
            }
        }
    }
}

#[test]
fn full_fraction_returns_the_graph() {
    let g = gnp(80, 0.1, 1);
    for method in [SampleMethod::Node, SampleMethod::Edge, SampleMethod::InducedEdge] {
        let s = sample(&g, &SampleConfig { method, fraction: 1.0, seed: 3 }).unwrap();
        assert_eq!(s.graph.edge_count(), g.edge_count(), "{method:?}");
    }
    let s = sample_node(&g, 1.0, 0).unwrap();
    assert_eq!(s.graph, g);
}

#[test]
fn node_sample_of_clique_is_clique() {
    let s = sample_node(&clique(10), 0.5, 7).unwrap();
    assert_eq!(s.graph, clique(5));
}

#[test]
fn edge_sample_of_star_keeps_center() {
    for seed in 0..20 {
        let s = sample_edge(&star(9), 0.2, seed).unwrap();
        assert!(s.graph.edge_count() >= 1);
        assert_eq!(s.node_map[0], 0);
        assert_eq!(s.graph.degree(0), s.graph.edge_count());
    }
}

#[test]
fn induction_closes_triangle() {
    let (g, _) = Graph::from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)]);
    let mut hit = 0;
    for seed in 0..50 {
        let s = sample_induced_edge_budget(&g, 3, seed);
        assert_eq!(s.node_map.len(), 3);
        if s.node_map == [0, 1, 2] {
            assert_eq!(s.graph.edge_count(), 3);
            hit += 1;
        }
    }
    assert!(hit > 0);
}

#[test]
fn budgets_are_exact() {
    assert_eq!(budget(10, 0.3), 3);
    assert_eq!(budget(500, 0.2), 100);
    assert_eq!(budget(7, 0.01), 1);
    let g = gnp(150, 0.01, 5);
    for phi in [0.05, 0.2, 0.5, 0.9] {
        for seed in 0..10 {
            let want = budget(150, phi);
            assert_eq!(sample_node(&g, phi, seed).unwrap().node_map.len(), want);
            assert_eq!(sample_induced_edge(&g, phi, seed).unwrap().node_map.len(), want);
        }
    }
    assert!(sample_node(&g, 0.0, 0).is_err());
    assert!(sample_node(&g, 1.5, 0).is_err());
}

#[test]
fn samples_are_subgraphs_and_induced_variants_are_complete() {
    for seed in 0..20 {
        let g = gnp(200, 0.03, seed);
        assert_subgraph(&g, &sample_node(&g, 0.3, seed).unwrap(), true);
        assert_subgraph(&g, &sample_induced_edge(&g, 0.3, seed).unwrap(), true);
        assert_subgraph(&g, &sample_edge(&g, 0.3, seed).unwrap(), false);
    }
}

/// Exact mean and variance of the induced edge count for a uniform
/// `k`-subset of nodes, from pair, wedge and disjoint-pair inclusion odds.
fn node_sample_edge_moments(g: &Graph, k: usize) -> (f64, f64) {
    let (n, k) = (g.node_count() as f64, k as f64);
    let m = g.edge_count() as f64;
    let p2 = k * (k - 1.0) / (n * (n - 1.0));
    let p3 = p2 * (k - 2.0) / (n - 2.0);
    let p4 = p3 * (k - 3.0) / (n - 3.0);
    let wedges: f64 = g.degrees().iter().map(|&d| (d * d.saturating_sub(1) / 2) as f64).sum();
    let disjoint = m * (m - 1.0) / 2.0 - wedges;
    let var = m * p2 * (1.0 - p2) + 2.0 * (wedges * (p3 - p2 * p2) + disjoint * (p4 - p2 * p2));
    (m * p2, var)
}

#[test]
fn node_sample_edge_count_is_phi_squared_m() {
    let g = gnp(500, 0.02, 42);
    let phi = 0.2;
    let runs = 200;
    let counts: Vec<f64> = (0..runs)
        .map(|s| sample_node(&g, phi, s).unwrap().graph.edge_count() as f64)
        .collect();
    let (mean, _) = mean_sd(&counts);
    let (exact, var) = node_sample_edge_moments(&g, budget(500, phi));
    let se = (var / runs as f64).sqrt();
    let target = phi * phi * g.edge_count() as f64;
    assert!((mean - target).abs() <= 3.0 * se, "{mean} vs {target}");
    assert!((mean - exact).abs() <= 3.0 * se, "{mean} vs {exact}");
}

#[test]
fn edge_sampling_favors_high_degree() {
    let weights: Vec<f64> = (0..400).map(|i| 1.0 + 20.0 * (i as f64 / 400.0).powi(2)).collect();
    let g = chung_lu(&weights, &mut seeded(6));
    let mean_degree = |s: &Sample| {
        s.node_map.iter().map(|&v| g.degree(v) as f64).sum::<f64>() / s.node_map.len() as f64
    };
    let (mut by_edge, mut by_node) = (0.0, 0.0);
    for seed in 0..100 {
        let e = sample_edge(&g, 0.1, seed).unwrap();
        let phi = e.node_map.len() as f64 / g.node_count() as f64;
        let n = sample_node(&g, phi, seed).unwrap();
        assert_eq!(n.node_map.len(), e.node_map.len());
        by_edge += mean_degree(&e);
        by_node += mean_degree(&n);
    }
    assert!(by_edge > by_node, "{by_edge} vs {by_node}");
}

#[test]
fn induced_edge_sampling_preserves_clustering() {
    let g = gnp(500, 0.02, 42);
    let avg_cc = |s: &Sample| compute_all(&s.graph).0.avg_clustering;
    let (mut induced, mut node) = (0.0, 0.0);
    for seed in 0..200 {
        induced += avg_cc(&sample_induced_edge(&g, 0.2, seed).unwrap());
        node += avg_cc(&sample_node(&g, 0.2, seed).unwrap());
    }
    assert!(induced >= node, "{induced} vs {node}");
}

#[test]
fn samplers_are_deterministic() {
    let g = gnp(300, 0.02, 8);
    for method in [SampleMethod::Node, SampleMethod::Edge, SampleMethod::InducedEdge] {
        let cfg = SampleConfig { method, fraction: 0.25, seed: 99 };
        assert_eq!(sample(&g, &cfg).unwrap(), sample(&g, &cfg).unwrap());
    }
}

fn dist(a: Point, b: Point) -> f64 {
    ((a.x - b.x).powi(2) + (a.y - b.y).powi(2)).sqrt()
}

#[test]
fn single_node_sits_at_origin() {
    assert_eq!(compute_layout(&Graph::empty(1), 3, 50), vec![Point { x: 0.0, y: 0.0 }]);
}

#[test]
fn components_get_disjoint_boxes() {
    let mut pairs: Vec<(u32, u32)> = (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v))).collect();
    pairs.extend((5..11).map(|v| (v, v + 1)));
    let (g, _) = Graph::from_edges(12, pairs);
    let pos = compute_layout(&g, 1, DEFAULT_ITERATIONS);
    let bbox = |r: std::ops::Range<usize>| {
        let xs = r.clone().map(|i| pos[i].x);
        let ys = r.map(|i| pos[i].y);
        (
            xs.clone().fold(f64::INFINITY, f64::min),
            xs.fold(f64::NEG_INFINITY, f64::max),
            ys.clone().fold(f64::INFINITY, f64::min),
            ys.fold(f64::NEG_INFINITY, f64::max),
        )
    };
    let a = bbox(0..5);
    let b = bbox(5..12);
    let overlap = a.0 <= b.1 && b.0 <= a.1 && a.2 <= b.3 && b.2 <= a.3;
    assert!(!overlap, "{a:?} {b:?}");
}

#[test]
fn path_endpoints_end_up_farthest_apart() {
    let (path, _) = Graph::from_edges(10, (0..9).map(|v| (v, v + 1)));
    let mut good = 0;
    for seed in 0..100 {
        let pos = compute_layout(&path, seed, DEFAULT_ITERATIONS);
        let mut best = (0.0, (0, 0));
        for i in 0..10 {
            for j in i + 1..10 {
                let d = dist(pos[i], pos[j]);
                if d > best.0 {
                    best = (d, (i, j));
                }
            }
        }
        if best.1 == (0, 9) {
            good += 1;
        }
    }
    assert!(good >= 90, "{good}/100");
}

#[test]
fn layout_is_deterministic_and_finite() {
    let g = gnp(600, 0.005, 2);
    let a = compute_layout(&g, 5, 60);
    assert_eq!(a, compute_layout(&g, 5, 60));
    assert!(a.iter().all(|p| p.x.is_finite() && p.y.is_finite()));
}
