#![allow(dead_code)]

use netrepo_core::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

/// Pair-by-pair G(n, p), independent of the library generators.
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha20Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut pairs = Vec::new();
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if rng.random::<f64>() < p {
                pairs.push((u, v));
            }
        }
    }
    Graph::from_edges(n, pairs).0
}

pub fn clique_pairs(offset: u32, n: u32) -> Vec<(u32, u32)> {
    (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u + offset, v + offset)))
        .collect()
}

pub fn clique(n: u32) -> Graph {
    Graph::from_edges(n as usize, clique_pairs(0, n)).0
}

pub fn star(leaves: u32) -> Graph {
    Graph::from_edges(leaves as usize + 1, (1..=leaves).map(|i| (0, i))).0
}

/// Two K5s (nodes 0..5 and 5..10) joined by the edge 4-5.
pub fn two_k5_bridge() -> Graph {
    let mut pairs = clique_pairs(0, 5);
    pairs.extend(clique_pairs(5, 5));
    pairs.push((4, 5));
    Graph::from_edges(10, pairs).0
}

pub fn mean_sd(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}
