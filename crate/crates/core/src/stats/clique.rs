//! Greedy lower bound on the maximum clique size.
//!
//! Search is confined to the max-core subgraph: a clique of size `k` lives in
//! the `(k - 1)`-core, so the densest core is where large cliques are. Seeds
//! are the max-core nodes with the highest degree; from each seed, candidates
//! are scanned by descending degree (ties by id) and kept when adjacent to
//! every member so far.

use crate::graph::{Graph, NodeId};

pub const METHOD: &str = "greedy_max_core";

const MAX_SEEDS: usize = 64;

pub fn max_clique_lower_bound(g: &Graph, core: &[u32], max_core: u32) -> u32 {
    if g.edge_count() == 0 {
        return if g.node_count() > 0 { 1 } else { 0 };
    }
    let rank = |v: NodeId| (std::cmp::Reverse(g.degree(v)), v);
    let mut seeds: Vec<NodeId> = g.nodes().filter(|&v| core[v as usize] == max_core).collect();
    seeds.sort_unstable_by_key(|&v| rank(v));
    seeds.truncate(MAX_SEEDS);

    let mut best = 2u32;
    let mut clique = Vec::new();
    for &s in &seeds {
        let mut candidates: Vec<NodeId> = g
            .neighbors(s)
            .iter()
            .copied()
            .filter(|&v| core[v as usize] == max_core)
            .collect();
        if (candidates.len() as u32) < best {
            continue;
        }
        candidates.sort_unstable_by_key(|&v| rank(v));
        clique.clear();
        clique.push(s);
        for &c in &candidates {
            if clique.iter().all(|&m| g.has_edge(m, c)) {
                clique.push(c);
            }
        }
        best = best.max(clique.len() as u32);
        if best == max_core + 1 {
            break;
        }
    }
    best
}
