use rand::seq::SliceRandom;

use super::{compress, LabelKind, NodeLabeling};
use crate::graph::Graph;
use crate::rng::seeded;
use crate::stats::edge_support;

pub const MAX_SWEEPS: usize = 100;

/// Asynchronous label propagation.
///
/// Every node starts in its own community. Each sweep visits the nodes in a
/// fresh seeded random order and moves each one to the label with the largest
/// vote among its neighbors, smallest label on ties. A neighbor's vote is
/// `1 + t`, where `t` is the number of triangles through the connecting edge,
/// so an edge bridging two dense groups cannot outvote edges inside them.
/// Stops after a sweep without changes or after [`MAX_SWEEPS`].
pub fn detect_communities(g: &Graph, seed: u64) -> NodeLabeling {
    let n = g.node_count();
    let mut rng = seeded(seed);
    let mut labels: Vec<u32> = (0..n as u32).collect();
    let mut order: Vec<u32> = (0..n as u32).collect();
    let support = edge_support(g);
    let mut counts = vec![0u64; n];
    let mut touched: Vec<u32> = Vec::new();

    for _ in 0..MAX_SWEEPS {
        order.shuffle(&mut rng);
        let mut changed = false;
        for &v in &order {
            let nbrs = g.neighbors(v);
            if nbrs.is_empty() {
                continue;
            }
            for (&u, slot) in nbrs.iter().zip(g.slots(v)) {
                let l = labels[u as usize];
                if counts[l as usize] == 0 {
                    touched.push(l);
                }
                counts[l as usize] += 1 + support[slot] as u64;
            }
            let mut best = (0u64, u32::MAX);
            for &l in &touched {
                let c = counts[l as usize];
                if c > best.0 || (c == best.0 && l < best.1) {
                    best = (c, l);
                }
                counts[l as usize] = 0;
            }
            touched.clear();
            if labels[v as usize] != best.1 {
                labels[v as usize] = best.1;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    let k = compress(&mut labels);
    let quality = modularity(g, &labels);
    NodeLabeling {
        kind: LabelKind::Community,
        k,
        labels,
        quality,
    }
}

/// Newman modularity `sum_c [ e_c / m - (d_c / 2m)^2 ]`; `None` without edges.
pub fn modularity(g: &Graph, labels: &[u32]) -> Option<f64> {
    let m = g.edge_count();
    if m == 0 {
        return None;
    }
    let k = labels.iter().map(|&l| l as usize + 1).max().unwrap_or(0);
    let mut intra = vec![0u64; k];
    let mut degree = vec![0u64; k];
    for v in g.nodes() {
        degree[labels[v as usize] as usize] += g.degree(v) as u64;
    }
    for (u, v) in g.edges() {
        if labels[u as usize] == labels[v as usize] {
            intra[labels[u as usize] as usize] += 1;
        }
    }
    let m = m as f64;
    Some(
        intra
            .iter()
            .zip(&degree)
            .map(|(&e, &d)| e as f64 / m - (d as f64 / (2.0 * m)).powi(2))
            .sum(),
    )
}
