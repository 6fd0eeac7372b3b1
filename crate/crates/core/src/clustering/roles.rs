//! Role discovery: recursive structural features clustered with k-means.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{compress, LabelKind, NodeLabeling};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::{seeded, GraphRng};
use crate::stats::NodeStatsTable;

const BASE: usize = 6;
const MAX_ITERATIONS: usize = 100;
const AUTO_K: std::ops::RangeInclusive<usize> = 2..=8;

pub const FEATURE_NAMES: [&str; 3 * BASE] = [
    "degree",
    "triangles",
    "local_clustering",
    "kcore",
    "mean_neighbor_degree",
    "max_neighbor_degree",
    "nbr_mean_degree",
    "nbr_mean_triangles",
    "nbr_mean_local_clustering",
    "nbr_mean_kcore",
    "nbr_mean_mean_neighbor_degree",
    "nbr_mean_max_neighbor_degree",
    "nbr_sum_degree",
    "nbr_sum_triangles",
    "nbr_sum_local_clustering",
    "nbr_sum_kcore",
    "nbr_sum_mean_neighbor_degree",
    "nbr_sum_max_neighbor_degree",
];

/// Row-major `rows x FEATURE_NAMES.len()` matrix of standardized features.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<f64>,
}

impl FeatureMatrix {
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
}

/// Six base features per node plus the mean and sum of each over the node's
/// neighbors, every column standardized to zero mean and unit variance.
/// Constant columns become all zeros.
pub fn extract_role_features(g: &Graph, stats: &NodeStatsTable) -> FeatureMatrix {
    let n = g.node_count();
    let cols = 3 * BASE;
    let mut data = vec![0.0; n * cols];

    for v in g.nodes() {
        let i = v as usize;
        let nbrs = g.neighbors(v);
        let (sum_deg, max_deg) = nbrs.iter().fold((0.0, 0.0f64), |(s, m), &u| {
            let d = g.degree(u) as f64;
            (s + d, m.max(d))
        });
        let row = &mut data[i * cols..i * cols + BASE];
        row[0] = stats.degree[i] as f64;
        row[1] = stats.triangles[i] as f64;
        row[2] = stats.local_clustering[i];
        row[3] = stats.kcore[i] as f64;
        row[4] = if nbrs.is_empty() { 0.0 } else { sum_deg / nbrs.len() as f64 };
        row[5] = max_deg;
    }
    for v in g.nodes() {
        let i = v as usize;
        let nbrs = g.neighbors(v);
        let mut sums = [0.0; BASE];
        for &u in nbrs {
            let base = u as usize * cols;
            for (s, x) in sums.iter_mut().zip(&data[base..base + BASE]) {
                *s += x;
            }
        }
        for f in 0..BASE {
            data[i * cols + BASE + f] = if nbrs.is_empty() {
                0.0
            } else {
                sums[f] / nbrs.len() as f64
            };
            data[i * cols + 2 * BASE + f] = sums[f];
        }
    }

    for c in 0..cols {
        let first = if n > 0 { data[c] } else { 0.0 };
        if (0..n).all(|i| data[i * cols + c] == first) {
            (0..n).for_each(|i| data[i * cols + c] = 0.0);
            continue;
        }
        let mean = (0..n).map(|i| data[i * cols + c]).sum::<f64>() / n as f64;
        let var = (0..n)
            .map(|i| (data[i * cols + c] - mean).powi(2))
            .sum::<f64>()
            / n as f64;
        let sd = var.sqrt();
        for i in 0..n {
            data[i * cols + c] = (data[i * cols + c] - mean) / sd;
        }
    }
    FeatureMatrix { rows: n, cols, data }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RoleCount {
    Fixed(usize),
    /// k in `2..=8` with the largest relative drop in within-cluster sum of
    /// squares, `(W(k-1) - W(k)) / W(k-1)`; smallest k on ties.
    Auto,
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn nearest(row: &[f64], centers: &[Vec<f64>]) -> (usize, f64) {
    let mut best = (0, f64::INFINITY);
    for (j, c) in centers.iter().enumerate() {
        let d = sq_dist(row, c);
        if d < best.1 {
            best = (j, d);
        }
    }
    best
}

/// k-means++ seeding. Stops early when every row coincides with a center.
fn seed_centers(x: &FeatureMatrix, k: usize, rng: &mut GraphRng) -> Vec<Vec<f64>> {
    let mut centers = vec![x.row(rng.random_range(0..x.rows)).to_vec()];
    let mut dist: Vec<f64> = (0..x.rows).map(|i| sq_dist(x.row(i), &centers[0])).collect();
    while centers.len() < k {
        let total: f64 = dist.iter().sum();
        if total <= 0.0 {
            break;
        }
        let target = rng.random::<f64>() * total;
        let mut acc = 0.0;
        let mut pick = None;
        for (i, &d) in dist.iter().enumerate() {
            acc += d;
            if d > 0.0 && acc > target {
                pick = Some(i);
                break;
            }
        }
        // rounding can leave `acc` just below `target`; take the last candidate
        let pick = pick.unwrap_or_else(|| dist.iter().rposition(|&d| d > 0.0).expect("total > 0"));
        let c = x.row(pick).to_vec();
        for (i, d) in dist.iter_mut().enumerate() {
            *d = d.min(sq_dist(x.row(i), &c));
        }
        centers.push(c);
    }
    centers
}

/// Lloyd iterations; returns labels and the within-cluster sum of squares.
fn kmeans(x: &FeatureMatrix, k: usize, seed: u64) -> (Vec<u32>, f64) {
    let mut rng = seeded(seed);
    let mut centers = seed_centers(x, k, &mut rng);
    let mut labels = vec![u32::MAX; x.rows];
    for _ in 0..MAX_ITERATIONS {
        let mut changed = false;
        for (i, l) in labels.iter_mut().enumerate() {
            let (j, _) = nearest(x.row(i), &centers);
            if *l != j as u32 {
                *l = j as u32;
                changed = true;
            }
        }
        if !changed {
            break;
        }
        let mut sums = vec![vec![0.0; x.cols]; centers.len()];
        let mut sizes = vec![0usize; centers.len()];
        for (i, &l) in labels.iter().enumerate() {
            sizes[l as usize] += 1;
            for (s, v) in sums[l as usize].iter_mut().zip(x.row(i)) {
                *s += v;
            }
        }
        for ((c, s), &size) in centers.iter_mut().zip(sums).zip(&sizes) {
            if size > 0 {
                *c = s.into_iter().map(|v| v / size as f64).collect();
            }
        }
    }
    let wss = (0..x.rows)
        .map(|i| sq_dist(x.row(i), &centers[labels[i] as usize]))
        .sum();
    (labels, wss)
}

fn total_ss(x: &FeatureMatrix) -> f64 {
    let mut mean = vec![0.0; x.cols];
    for i in 0..x.rows {
        for (m, v) in mean.iter_mut().zip(x.row(i)) {
            *m += v;
        }
    }
    mean.iter_mut().for_each(|m| *m /= x.rows as f64);
    (0..x.rows).map(|i| sq_dist(x.row(i), &mean)).sum()
}

/// Clusters feature rows into roles with seeded k-means.
///
/// Roles are numbered by ascending mean of the first feature column
/// (standardized degree). Identical rows always land in the same role. The
/// returned `k` can be lower than requested when there are fewer distinct
/// rows than clusters.
pub fn discover_roles(x: &FeatureMatrix, k: RoleCount, seed: u64) -> Result<NodeLabeling> {
    let n = x.rows;
    let labels = match k {
        RoleCount::Fixed(k) => {
            if k == 0 || n < k {
                return Err(Error::TooFewNodes { n, k });
            }
            kmeans(x, k, seed).0
        }
        RoleCount::Auto => {
            if n == 0 {
                return Err(Error::NoNodes);
            }
            let hi = (*AUTO_K.end()).min(n);
            let mut runs = vec![kmeans(x, 1, seed)];
            for k in 2..=hi {
                runs.push(kmeans(x, k, seed));
            }
            let mut best = (1usize, f64::NEG_INFINITY);
            for k in (*AUTO_K.start()..=hi).filter(|&k| k >= 2) {
                let prev = runs[k - 2].1;
                let drop = if prev > 0.0 { (prev - runs[k - 1].1) / prev } else { 0.0 };
                if drop > best.1 {
                    best = (k, drop);
                }
            }
            runs.swap_remove(best.0 - 1).0
        }
    };
    Ok(order_roles(x, labels))
}

fn order_roles(x: &FeatureMatrix, mut labels: Vec<u32>) -> NodeLabeling {
    let k = compress(&mut labels);
    let mut sum = vec![0.0; k];
    let mut size = vec![0usize; k];
    for (i, &l) in labels.iter().enumerate() {
        sum[l as usize] += x.row(i).first().copied().unwrap_or(0.0);
        size[l as usize] += 1;
    }
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| {
        (sum[a] / size[a] as f64)
            .total_cmp(&(sum[b] / size[b] as f64))
            .then(a.cmp(&b))
    });
    let mut rank = vec![0u32; k];
    for (r, &c) in order.iter().enumerate() {
        rank[c] = r as u32;
    }
    labels.iter_mut().for_each(|l| *l = rank[*l as usize]);

    let tss = total_ss(x);
    let mut centers = vec![vec![0.0; x.cols]; k];
    for (i, &l) in labels.iter().enumerate() {
        for (c, v) in centers[l as usize].iter_mut().zip(x.row(i)) {
            *c += v;
        }
    }
    let mut counts = vec![0usize; k];
    labels.iter().for_each(|&l| counts[l as usize] += 1);
    for (c, &cnt) in centers.iter_mut().zip(&counts) {
        c.iter_mut().for_each(|v| *v /= cnt as f64);
    }
    let wss: f64 = labels
        .iter()
        .enumerate()
        .map(|(i, &l)| sq_dist(x.row(i), &centers[l as usize]))
        .sum();
    NodeLabeling {
        kind: LabelKind::Role,
        k,
        labels,
        quality: Some(if tss > 0.0 { wss / tss } else { 0.0 }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::compute_all;

    fn features(g: &Graph) -> FeatureMatrix {
        let (_, t) = compute_all(g);
        extract_role_features(g, &t)
    }

    fn star(leaves: u32) -> Graph {
        Graph::from_edges(0, (1..=leaves).map(|i| (0, i))).0
    }

    #[test]
    fn star_center_differs_from_identical_leaves() {
        let x = features(&star(5));
        assert_eq!(x.cols, 18);
        assert_ne!(x.row(0), x.row(1));
        for i in 2..6 {
            assert_eq!(x.row(1), x.row(i));
        }
    }

    #[test]
    fn clique_rows_identical_and_zero() {
        let pairs: Vec<_> = (0..4u32)
            .flat_map(|u| (u + 1..4).map(move |v| (u, v)))
            .collect();
        let x = features(&Graph::from_edges(4, pairs).0);
        assert!(x.data.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn standardized_columns() {
        let x = features(&star(9));
        for c in 0..x.cols {
            let col: Vec<f64> = (0..x.rows).map(|i| x.row(i)[c]).collect();
            let mean = col.iter().sum::<f64>() / col.len() as f64;
            assert!(mean.abs() < 1e-12);
        }
    }

    #[test]
    fn star_center_gets_its_own_role() {
        let l = discover_roles(&features(&star(9)), RoleCount::Fixed(2), 5).unwrap();
        assert_eq!(l.k, 2);
        assert!(l.labels[1..].iter().all(|&r| r == l.labels[1]));
        assert_ne!(l.labels[0], l.labels[1]);
        // roles ordered by degree: the center is the high-degree role
        assert_eq!(l.labels[0], 1);
    }

    #[test]
    fn identical_rows_collapse_for_any_k() {
        let mut pairs = Vec::new();
        for b in 0..3u32 {
            for u in 0..4 {
                for v in u + 1..4 {
                    pairs.push((4 * b + u, 4 * b + v));
                }
            }
        }
        let x = features(&Graph::from_edges(12, pairs).0);
        for k in 1..=5 {
            let l = discover_roles(&x, RoleCount::Fixed(k), 1).unwrap();
            assert_eq!(l.k, 1);
        }
    }

    #[test]
    fn too_few_nodes() {
        let x = features(&star(2));
        assert!(matches!(
            discover_roles(&x, RoleCount::Fixed(4), 0),
            Err(Error::TooFewNodes { n: 3, k: 4 })
        ));
    }
}
