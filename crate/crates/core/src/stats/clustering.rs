//! Clustering coefficients and degree assortativity.

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq)]
pub struct Clustering {
    pub local: Vec<f64>,
    pub average: f64,
    /// Transitivity: `3 * triangles / wedges`.
    pub global: f64,
}

#[inline]
pub fn wedges(degree: usize) -> u64 {
    let d = degree as u64;
    d * d.saturating_sub(1) / 2
}

/// Local clustering is 0 for nodes with fewer than two neighbors.
pub fn clustering_coefficients(g: &Graph, triangles: &[u64]) -> Clustering {
    let n = g.node_count();
    let mut local = Vec::with_capacity(n);
    let mut total_wedges: u128 = 0;
    let mut closed: u128 = 0;
    for v in g.nodes() {
        let w = wedges(g.degree(v));
        let t = triangles[v as usize];
        total_wedges += w as u128;
        closed += t as u128;
        local.push(if w > 0 { t as f64 / w as f64 } else { 0.0 });
    }
    // sequential sum: result must not depend on the worker count
    let average = if n == 0 {
        0.0
    } else {
        local.iter().sum::<f64>() / n as f64
    };
    let global = if total_wedges == 0 {
        0.0
    } else {
        closed as f64 / total_wedges as f64
    };
    Clustering {
        local,
        average,
        global,
    }
}

/// Pearson correlation of endpoint degrees over both orientations of every
/// edge. `None` when there are no edges or the endpoint degrees have zero
/// variance (regular graphs).
pub fn assortativity(g: &Graph) -> Option<f64> {
    let m = g.edge_count() as i128;
    if m == 0 {
        return None;
    }
    // Sums over the 2m oriented endpoints, kept exact in integers.
    let mut sum_x: i128 = 0;
    let mut sum_xx: i128 = 0;
    let mut sum_xy: i128 = 0;
    for v in g.nodes() {
        let d = g.degree(v) as i128;
        sum_x += d * d;
        sum_xx += d * d * d;
    }
    for (u, v) in g.edges() {
        sum_xy += 2 * g.degree(u) as i128 * g.degree(v) as i128;
    }
    let count = 2 * m;
    let var = count * sum_xx - sum_x * sum_x;
    if var == 0 {
        return None;
    }
    let cov = count * sum_xy - sum_x * sum_x;
    Some((cov as f64 / var as f64).clamp(-1.0, 1.0))
}
