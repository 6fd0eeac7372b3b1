//! Generator contracts and Monte Carlo checks against closed-form expectations.

mod common;

use netrepo_core::generators::{
    block_chung_lu, chung_lu, compose, erdos_renyi, intra_block_fraction, pattern,
    preferential_attachment, GeneratorConfig, Model, PatternSpec, PatternType, Wiring,
};
use netrepo_core::rng::seeded;
use netrepo_core::stats::{compute_all, distribution};
use netrepo_core::Graph;

use common::{clique, gnp, mean_sd};

fn within_3_sigma(samples: &[f64], expected: f64) -> bool {
    let (mean, sd) = mean_sd(samples);
    let se = sd / (samples.len() as f64).sqrt();
    (mean - expected).abs() <= 3.0 * se
}

#[test]
fn er_edge_count_is_binomial() {
    let pairs = 200.0 * 199.0 / 2.0;
    let p = 0.05;
    let m: Vec<f64> = (0..500)
        .map(|s| erdos_renyi(200, p, &mut seeded(s)).edge_count() as f64)
        .collect();
    let (mean, sd) = mean_sd(&m);
    let sigma_mean = (pairs * p * (1.0 - p) / 500.0).sqrt();
    assert!((mean - 995.0).abs() <= 3.0 * sigma_mean, "mean {mean}");
    // sample variance of 500 draws sits well within 20% of the binomial variance
    let var = pairs * p * (1.0 - p);
    assert!((sd * sd / var - 1.0).abs() < 0.2, "variance {} vs {var}", sd * sd);
}

#[test]
fn chung_lu_with_equal_weights_matches_er() {
    let n = 200;
    let c = 10.0;
    let p = c * c / (c * n as f64);
    assert!((p - 0.05).abs() < 1e-12);
    let weights = vec![c; n];
    let m: Vec<f64> = (0..500)
        .map(|s| chung_lu(&weights, &mut seeded(s)).edge_count() as f64)
        .collect();
    let sigma_mean = (19900.0 * p * (1.0 - p) / 500.0).sqrt();
    let (mean, _) = mean_sd(&m);
    assert!((mean - 995.0).abs() <= 3.0 * sigma_mean, "mean {mean}");
}

#[test]
fn chung_lu_preserves_expected_degrees() {
    let base = gnp(200, 0.05, 3);
    let weights: Vec<f64> = base.degrees().into_iter().map(|d| d as f64).collect();
    let total: f64 = weights.iter().sum();
    let wmax = weights.iter().cloned().fold(0.0, f64::max);
    assert!(wmax * wmax <= total, "unclamped regime");
    let runs = 500;
    let mut per_node = vec![Vec::with_capacity(runs); weights.len()];
    for s in 0..runs {
        let g = chung_lu(&weights, &mut seeded(s as u64));
        for (v, d) in g.degrees().into_iter().enumerate() {
            per_node[v].push(d as f64);
        }
    }
    for (v, samples) in per_node.iter().enumerate() {
        assert!(within_3_sigma(samples, weights[v]), "node {v} w={}", weights[v]);
    }
}

#[test]
fn chung_lu_zero_weights_give_empty_graph() {
    let g = chung_lu(&[0.0, 0.0, 0.0], &mut seeded(1));
    assert_eq!((g.node_count(), g.edge_count()), (3, 0));
}

/// Expected (intra, total) edge counts from the model's pair probabilities.
fn block_expectation(blocks: &[Vec<f64>], mu: f64) -> (f64, f64) {
    let total: f64 = blocks.iter().flatten().sum();
    let mut nodes = Vec::new();
    for (b, w) in blocks.iter().enumerate() {
        let block_total: f64 = w.iter().sum();
        nodes.extend(w.iter().map(|&x| (b, x, block_total)));
    }
    let (mut intra, mut all) = (0.0, 0.0);
    for i in 0..nodes.len() {
        for j in i + 1..nodes.len() {
            let (bi, wi, si) = nodes[i];
            let (bj, wj, _) = nodes[j];
            let global = mu * wi * wj / total;
            let p = if bi == bj {
                ((1.0 - mu) * wi * wj / si + global).min(1.0)
            } else {
                global.min(1.0)
            };
            all += p;
            if bi == bj {
                intra += p;
            }
        }
    }
    (intra, all)
}

fn equal_blocks(count: usize, size: usize, w: f64) -> Vec<Vec<f64>> {
    vec![vec![w; size]; count]
}

#[test]
fn block_chung_lu_intra_fraction_matches_closed_form() {
    let blocks = equal_blocks(4, 50, 8.0);
    let sizes = vec![50; 4];
    for mu in [0.0, 0.5, 1.0] {
        let (intra, all) = block_expectation(&blocks, mu);
        let expected = intra / all;
        let fractions: Vec<f64> = (0..300)
            .map(|s| intra_block_fraction(&block_chung_lu(&blocks, mu, &mut seeded(s)), &sizes))
            .collect();
        assert!(within_3_sigma(&fractions, expected), "mu {mu}: expected {expected}");
    }
}

#[test]
fn block_chung_lu_low_mixing_is_mostly_intra_block() {
    let blocks = equal_blocks(4, 50, 8.0);
    let fractions: Vec<f64> = (0..100)
        .map(|s| intra_block_fraction(&block_chung_lu(&blocks, 0.1, &mut seeded(s)), &[50; 4]))
        .collect();
    let (mean, _) = mean_sd(&fractions);
    assert!(mean >= 0.7, "{mean}");
}

#[test]
fn block_chung_lu_expected_intra_fraction_is_monotone() {
    let blocks = vec![vec![3.0; 30], vec![6.0; 60], vec![12.0; 20]];
    let fractions: Vec<f64> = [0.0, 0.25, 0.5, 0.75, 1.0]
        .iter()
        .map(|&mu| {
            let (intra, all) = block_expectation(&blocks, mu);
            intra / all
        })
        .collect();
    assert!(fractions.windows(2).all(|w| w[0] >= w[1]), "{fractions:?}");
}

#[test]
fn block_chung_lu_full_mixing_matches_chung_lu_edge_count() {
    let blocks = vec![vec![5.0; 40], vec![9.0; 60]];
    let flat: Vec<f64> = blocks.iter().flatten().copied().collect();
    let block_m: Vec<f64> = (0..500)
        .map(|s| block_chung_lu(&blocks, 1.0, &mut seeded(s)).edge_count() as f64)
        .collect();
    let cl_m: Vec<f64> = (0..500)
        .map(|s| chung_lu(&flat, &mut seeded(10_000 + s)).edge_count() as f64)
        .collect();
    let (ma, sa) = mean_sd(&block_m);
    let (mb, sb) = mean_sd(&cl_m);
    let se = (sa * sa / 500.0 + sb * sb / 500.0).sqrt();
    assert!((ma - mb).abs() <= 3.0 * se, "{ma} vs {mb}");
}

#[test]
fn preferential_attachment_edge_count_and_tree() {
    let g = preferential_attachment(100, 1, 2, &mut seeded(4));
    assert_eq!(g.edge_count(), 99);
    assert_eq!(g.connected_components().1, 1);
    let g = preferential_attachment(500, 3, 4, &mut seeded(4));
    assert_eq!(g.edge_count(), 6 + (500 - 4) * 3);
}

#[test]
fn preferential_attachment_rejects_too_few_nodes() {
    let cfg = GeneratorConfig::new(
        Model::PreferentialAttachment {
            n: 5,
            m_attach: 4,
            seed_clique_size: None,
        },
        0,
    );
    assert!(cfg.generate().is_err());
}

#[test]
fn preferential_attachment_has_heavy_tail() {
    let g = preferential_attachment(2000, 3, 4, &mut seeded(12));
    let (_, table) = compute_all(&g);
    let d = distribution(&table, "degree").unwrap();
    let pts: Vec<(f64, f64)> = d
        .values
        .iter()
        .zip(&d.ccdf)
        .filter(|(&x, _)| x >= 10.0)
        .map(|(&x, &y)| (x.ln(), y.ln()))
        .collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let slope = sxy / sxx;
    assert!((-2.5..=-1.5).contains(&slope), "slope {slope}");
}

#[test]
fn pattern_edge_counts_are_exact() {
    for size in 3..12 {
        assert_eq!(pattern(PatternType::Clique, size).unwrap().edge_count(), size * (size - 1) / 2);
        assert_eq!(pattern(PatternType::Star, size).unwrap().edge_count(), size - 1);
        assert_eq!(pattern(PatternType::Cycle, size).unwrap().edge_count(), size);
        assert_eq!(pattern(PatternType::Chain, size).unwrap().edge_count(), size - 1);
        assert_eq!(pattern(PatternType::Node, size).unwrap().edge_count(), 0);
    }
    assert_eq!(pattern(PatternType::Edge, 2).unwrap().edge_count(), 1);
    assert_eq!(pattern(PatternType::Star, 6).unwrap().degrees(), vec![5, 1, 1, 1, 1, 1]);
    assert_eq!(pattern(PatternType::Cycle, 3).unwrap(), clique(3));
    assert!(pattern(PatternType::Cycle, 2).is_err());
    assert!(pattern(PatternType::Clique, 1).is_err());
}

#[test]
fn compose_bridge_and_disjoint() {
    let base = clique(3);
    let star = [PatternSpec {
        pattern: PatternType::Star,
        size: 4,
        count: 1,
    }];
    let g = compose(&base, &star, Wiring::Bridge, &mut seeded(1)).unwrap();
    assert_eq!((g.node_count(), g.edge_count()), (7, 7));
    assert_eq!(g.connected_components().1, 1);
    assert!(g.edges().take(3).eq(base.edges()));

    let cycle = [PatternSpec {
        pattern: PatternType::Cycle,
        size: 4,
        count: 1,
    }];
    let g = compose(&base, &cycle, Wiring::Disjoint, &mut seeded(1)).unwrap();
    assert_eq!(g.connected_components().1, 2);
    assert!(compose(&Graph::empty(0), &cycle, Wiring::Bridge, &mut seeded(1)).is_err());
}

#[test]
fn hybrid_keeps_injected_clique_triangles() {
    let cfg: GeneratorConfig = serde_json::from_str(
        r#"{"kind":"hybrid","seed":5,
            "base":{"kind":"erdos_renyi","n":100,"p":0.05},
            "patterns":[{"pattern":"clique","size":6,"count":5}]}"#,
    )
    .unwrap();
    let g = cfg.generate().unwrap();
    assert_eq!(g.node_count(), 130);
    let (stats, _) = compute_all(&g);
    assert!(stats.total_triangles >= 100, "{}", stats.total_triangles);
}

#[test]
fn identical_config_gives_identical_dump() {
    let configs = [
        r#"{"kind":"erdos_renyi","n":300,"p":0.03,"rng_seed":9}"#,
        r#"{"kind":"preferential_attachment","n":300,"m_attach":2,"rng_seed":9}"#,
        r#"{"kind":"chung_lu","weights":[1,2,3,4,5,6,7,8],"rng_seed":9}"#,
        r#"{"kind":"block_chung_lu","weights":[[4,4,4,4],[2,2,2]],"mu":0.3,"rng_seed":9}"#,
        r#"{"kind":"pattern","patterns":[{"pattern":"cycle","size":5,"count":3}],"rng_seed":9}"#,
    ];
    for text in configs {
        let cfg: GeneratorConfig = serde_json::from_str(text).unwrap();
        let a = cfg.generate().unwrap().to_edge_list();
        let b = cfg.generate().unwrap().to_edge_list();
        assert_eq!(a, b, "{text}");
        let round: GeneratorConfig =
            serde_json::from_str(&serde_json::to_string(&cfg).unwrap()).unwrap();
        assert_eq!(round, cfg);
    }
}

#[test]
fn invalid_parameters_are_rejected() {
    let bad = [
        r#"{"kind":"erdos_renyi","n":10,"p":1.5}"#,
        r#"{"kind":"block_chung_lu","weights":[[1,1]],"mu":-0.1}"#,
        r#"{"kind":"chung_lu","weights":[1,-1]}"#,
        r#"{"kind":"pattern","patterns":[{"pattern":"star","size":1}]}"#,
    ];
    for text in bad {
        let cfg: GeneratorConfig = serde_json::from_str(text).unwrap();
        assert!(cfg.validate().is_err(), "{text}");
    }
    let warn: GeneratorConfig =
        serde_json::from_str(r#"{"kind":"chung_lu","weights":[10,10,1]}"#).unwrap();
    assert_eq!(warn.validate().unwrap().len(), 1);
}
