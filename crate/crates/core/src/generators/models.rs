//! Model-based random graph generators.

use rand::Rng;

use crate::graph::{Graph, NodeId};
use crate::rng::GraphRng;

/// Uniform draw in `(0, 1]`, safe to take the logarithm of.
#[inline]
fn open_unit(rng: &mut GraphRng) -> f64 {
    1.0 - rng.random::<f64>()
}

/// Number of failures before the next success of a Bernoulli(`p`) sequence.
#[inline]
fn geometric_skip(rng: &mut GraphRng, log_q: f64) -> u64 {
    let skip = (open_unit(rng).ln() / log_q).floor();
    if skip.is_finite() && skip < u64::MAX as f64 {
        skip as u64
    } else {
        u64::MAX
    }
}

/// G(n, p): every unordered pair is an edge independently with probability
/// `p`. Non-edges are skipped geometrically, so the expected work is `O(n + m)`.
pub fn erdos_renyi(n: usize, p: f64, rng: &mut GraphRng) -> Graph {
    if n < 2 || p <= 0.0 {
        return Graph::empty(n);
    }
    if p >= 1.0 {
        let pairs: Vec<_> = (0..n as NodeId)
            .flat_map(|u| (u + 1..n as NodeId).map(move |v| (u, v)))
            .collect();
        return Graph::from_sorted_pairs(n, &pairs);
    }
    let log_q = (1.0 - p).ln();
    let mut pairs = Vec::new();
    // Walk the lower triangle row by row: pair (w, v) with w < v.
    let (mut v, mut w) = (1u64, 0u64);
    let n = n as u64;
    let mut first = true;
    while v < n {
        let skip = geometric_skip(rng, log_q);
        w = if first { skip } else { w.saturating_add(1).saturating_add(skip) };
        first = false;
        while w >= v && v < n {
            w -= v;
            v += 1;
        }
        if v < n {
            pairs.push((w as NodeId, v as NodeId));
        }
    }
    Graph::from_edges(n as usize, pairs).0
}

/// Preferential attachment grown from a clique on `seed_clique` nodes. Each
/// new node links to `m_attach` distinct existing nodes drawn proportionally
/// to degree; repeated picks are rejected and redrawn.
pub fn preferential_attachment(
    n: usize,
    m_attach: usize,
    seed_clique: usize,
    rng: &mut GraphRng,
) -> Graph {
    debug_assert!(m_attach >= 1 && seed_clique > m_attach && n > seed_clique);
    let mut pairs: Vec<(NodeId, NodeId)> = Vec::new();
    let mut endpoints: Vec<NodeId> = Vec::new();
    for u in 0..seed_clique as NodeId {
        for v in u + 1..seed_clique as NodeId {
            pairs.push((u, v));
            endpoints.push(u);
            endpoints.push(v);
        }
    }
    let mut targets: Vec<NodeId> = Vec::with_capacity(m_attach);
    for v in seed_clique as NodeId..n as NodeId {
        targets.clear();
        while targets.len() < m_attach {
            let t = endpoints[rng.random_range(0..endpoints.len())];
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for &t in &targets {
            pairs.push((t, v));
            endpoints.push(t);
            endpoints.push(v);
        }
    }
    Graph::from_edges(n, pairs).0
}

/// Nodes with their weights, heaviest first; ties keep id order.
fn by_weight_desc(nodes: impl IntoIterator<Item = (NodeId, f64)>) -> Vec<(NodeId, f64)> {
    let mut v: Vec<_> = nodes.into_iter().collect();
    v.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    v
}

/// Emits each pair `(i, j)` with probability `min(1, scale * w_i * w_j)`.
///
/// With `right == None` the pairs are the unordered pairs within `left`;
/// otherwise every pair across `left x right`. Both lists must be sorted by
/// descending weight, which makes the probability along a row non-increasing
/// and lets absent pairs be skipped geometrically.
fn product_pairs(
    left: &[(NodeId, f64)],
    right: Option<&[(NodeId, f64)]>,
    scale: f64,
    rng: &mut GraphRng,
    out: &mut Vec<(NodeId, NodeId)>,
) {
    if scale <= 0.0 {
        return;
    }
    for (i, &(u, wu)) in left.iter().enumerate() {
        let row = match right {
            Some(r) => r,
            None => &left[i + 1..],
        };
        let prob = |k: usize| (scale * wu * row[k].1).min(1.0);
        let mut k = 0usize;
        if row.is_empty() {
            continue;
        }
        let mut p = prob(0);
        while k < row.len() && p > 0.0 {
            if p < 1.0 {
                let skip = geometric_skip(rng, (1.0 - p).ln());
                k = k.saturating_add(usize::try_from(skip).unwrap_or(usize::MAX));
            }
            if k < row.len() {
                let q = prob(k);
                if rng.random::<f64>() < q / p {
                    out.push((u, row[k].0));
                }
                p = q;
                k += 1;
            }
        }
    }
}

/// Chung–Lu: pair `(i, j)` is an edge with probability
/// `min(1, w_i * w_j / sum(w))`.
pub fn chung_lu(weights: &[f64], rng: &mut GraphRng) -> Graph {
    let n = weights.len();
    let total: f64 = weights.iter().sum();
    if total <= 0.0 {
        return Graph::empty(n);
    }
    let sorted = by_weight_desc(weights.iter().enumerate().map(|(i, &w)| (i as NodeId, w)));
    let mut pairs = Vec::new();
    product_pairs(&sorted, None, 1.0 / total, rng, &mut pairs);
    Graph::from_edges(n, pairs).0
}

/// Whether every Chung–Lu probability is below 1 (no clamping happens).
pub fn chung_lu_feasible(weights: &[f64]) -> bool {
    let total: f64 = weights.iter().sum();
    let max = weights.iter().copied().fold(0.0, f64::max);
    max * max <= total
}

/// Block Chung–Lu.
///
/// Nodes are numbered block by block. Each node spends a `1 - mu` share of its
/// weight inside its own block and a `mu` share globally, giving
///
/// ```text
/// P(i ~ j) = min(1, (1 - mu) w_i w_j / S_b + mu w_i w_j / S)   same block b
/// P(i ~ j) = min(1, mu w_i w_j / S)                              different blocks
/// ```
///
/// with `S_b` the weight of block `b` and `S` the total weight. Unclamped,
/// the expected degree of node `i` is `w_i` for every `mu`. `mu = 1` and a
/// single block both reduce to plain Chung–Lu.
pub fn block_chung_lu(block_weights: &[Vec<f64>], mu: f64, rng: &mut GraphRng) -> Graph {
    let n: usize = block_weights.iter().map(Vec::len).sum();
    let total: f64 = block_weights.iter().flatten().sum();
    if total <= 0.0 {
        return Graph::empty(n);
    }
    let mut blocks = Vec::with_capacity(block_weights.len());
    let mut next = 0 as NodeId;
    for w in block_weights {
        let ids = next..next + w.len() as NodeId;
        next += w.len() as NodeId;
        let block_total: f64 = w.iter().sum();
        blocks.push((by_weight_desc(ids.zip(w.iter().copied())), block_total));
    }

    let mut pairs = Vec::new();
    for (sorted, block_total) in &blocks {
        let local = if *block_total > 0.0 {
            (1.0 - mu) / block_total
        } else {
            0.0
        };
        product_pairs(sorted, None, local + mu / total, rng, &mut pairs);
    }
    for a in 0..blocks.len() {
        for b in a + 1..blocks.len() {
            product_pairs(&blocks[a].0, Some(&blocks[b].0), mu / total, rng, &mut pairs);
        }
    }
    Graph::from_edges(n, pairs).0
}

/// Fraction of edges whose endpoints share a block, for consecutive blocks of
/// the given sizes. 0 for an edgeless graph.
pub fn intra_block_fraction(g: &Graph, block_sizes: &[usize]) -> f64 {
    let mut block_of = Vec::with_capacity(g.node_count());
    for (b, &size) in block_sizes.iter().enumerate() {
        block_of.extend(std::iter::repeat_n(b, size));
    }
    if g.edge_count() == 0 {
        return 0.0;
    }
    let intra = g
        .edges()
        .filter(|&(u, v)| block_of.get(u as usize) == block_of.get(v as usize))
        .count();
    intra as f64 / g.edge_count() as f64
}
