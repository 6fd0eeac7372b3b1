//! Graph sampling for bounded-size summaries and views of large graphs.
//!
//! Every sampler returns the sampled graph with local ids plus the map from
//! local id to original id. Local ids follow ascending original id.

use rand::seq::index;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::rng::seeded;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleMethod {
    Node,
    Edge,
    InducedEdge,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleConfig {
    pub method: SampleMethod,
    pub fraction: f64,
    #[serde(default)]
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub graph: Graph,
    /// `node_map[local] = original`.
    pub node_map: Vec<NodeId>,
}

impl Sample {
    fn induced(g: &Graph, mut nodes: Vec<NodeId>) -> Self {
        nodes.sort_unstable();
        Sample {
            graph: g.induced_subgraph(&nodes),
            node_map: nodes,
        }
    }
}

fn check_fraction(phi: f64) -> Result<()> {
    if phi > 0.0 && phi <= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidFraction(phi))
    }
}

/// `min(ceil(phi * total), total)`, tolerant of products that land a few
/// ulps above an integer.
pub fn budget(total: usize, phi: f64) -> usize {
    (((phi * total as f64) - 1e-9).ceil().max(0.0) as usize).min(total)
}

pub fn sample(g: &Graph, config: &SampleConfig) -> Result<Sample> {
    match config.method {
        SampleMethod::Node => sample_node(g, config.fraction, config.seed),
        SampleMethod::Edge => sample_edge(g, config.fraction, config.seed),
        SampleMethod::InducedEdge => sample_induced_edge(g, config.fraction, config.seed),
    }
}

/// Uniform node sample of size `ceil(phi * n)` and its induced subgraph.
pub fn sample_node(g: &Graph, phi: f64, seed: u64) -> Result<Sample> {
    check_fraction(phi)?;
    let n = g.node_count();
    if n == 0 {
        return Err(Error::NoNodes);
    }
    let mut rng = seeded(seed);
    let picked = index::sample(&mut rng, n, budget(n, phi));
    Ok(Sample::induced(
        g,
        picked.into_iter().map(|i| i as NodeId).collect(),
    ))
}

/// Uniform sample of `ceil(phi * m)` edges; nodes are their endpoints.
pub fn sample_edge(g: &Graph, phi: f64, seed: u64) -> Result<Sample> {
    check_fraction(phi)?;
    let m = g.edge_count();
    if m == 0 {
        return Err(Error::NoEdges);
    }
    let edges: Vec<(NodeId, NodeId)> = g.edges().collect();
    let mut rng = seeded(seed);
    let mut picked = index::sample(&mut rng, m, budget(m, phi)).into_vec();
    picked.sort_unstable();

    let mut nodes: Vec<NodeId> = picked
        .iter()
        .flat_map(|&e| [edges[e].0, edges[e].1])
        .collect();
    nodes.sort_unstable();
    nodes.dedup();
    let mut local = vec![NodeId::MAX; g.node_count()];
    for (i, &v) in nodes.iter().enumerate() {
        local[v as usize] = i as NodeId;
    }
    let pairs = picked
        .iter()
        .map(|&e| (local[edges[e].0 as usize], local[edges[e].1 as usize]));
    Ok(Sample {
        graph: Graph::from_edges(nodes.len(), pairs).0,
        node_map: nodes,
    })
}

/// Totally induced edge sampling with a node budget of `ceil(phi * n)`.
pub fn sample_induced_edge(g: &Graph, phi: f64, seed: u64) -> Result<Sample> {
    check_fraction(phi)?;
    if g.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    Ok(sample_induced_edge_budget(g, budget(g.node_count(), phi), seed))
}

/// Draws edges uniformly without replacement, collecting their endpoints until
/// exactly `node_budget` nodes are held, then induces every original edge among
/// them. If the edges run out first, the remaining budget is filled with
/// uniformly chosen unsampled nodes.
pub fn sample_induced_edge_budget(g: &Graph, node_budget: usize, seed: u64) -> Sample {
    let n = g.node_count();
    let node_budget = node_budget.min(n);
    let edges: Vec<(NodeId, NodeId)> = g.edges().collect();
    let mut order: Vec<u32> = (0..edges.len() as u32).collect();
    let mut rng = seeded(seed);
    let mut taken = vec![false; n];
    let mut nodes = Vec::with_capacity(node_budget);

    let mut i = 0;
    while nodes.len() < node_budget && i < order.len() {
        let j = rng.random_range(i..order.len());
        order.swap(i, j);
        let (u, v) = edges[order[i] as usize];
        i += 1;
        for w in [u, v] {
            if nodes.len() < node_budget && !taken[w as usize] {
                taken[w as usize] = true;
                nodes.push(w);
            }
        }
    }
    if nodes.len() < node_budget {
        let rest: Vec<NodeId> = (0..n as NodeId).filter(|&v| !taken[v as usize]).collect();
        let extra = index::sample(&mut rng, rest.len(), node_budget - nodes.len());
        nodes.extend(extra.into_iter().map(|k| rest[k]));
    }
    Sample::induced(g, nodes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn clique(n: u32) -> Graph {
        let pairs: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Graph::from_edges(n as usize, pairs).0
    }

    #[test]
    fn full_fraction_returns_whole_graph() {
        let g = clique(6);
        for s in [
            sample_node(&g, 1.0, 3).unwrap(),
            sample_edge(&g, 1.0, 3).unwrap(),
            sample_induced_edge(&g, 1.0, 3).unwrap(),
        ] {
            assert_eq!(s.graph, g);
            assert_eq!(s.node_map, (0..6).collect::<Vec<_>>());
        }
    }

    #[test]
    fn half_of_k10_is_k5() {
        let s = sample_node(&clique(10), 0.5, 8).unwrap();
        assert_eq!(s.graph, clique(5));
    }

    #[test]
    fn star_edge_samples_keep_center() {
        let (g, _) = Graph::from_edges(0, (1..=9).map(|i| (0, i)));
        for seed in 0..20 {
            let s = sample_edge(&g, 0.2, seed).unwrap();
            assert_eq!(s.node_map[0], 0);
            assert_eq!(s.graph.edge_count(), 2);
            assert!(s.graph.edges().all(|(u, _)| u == 0));
        }
    }

    #[test]
    fn induction_closes_triangle() {
        // triangle 0-1-2 with pendant 3 on node 0
        let (g, _) = Graph::from_edges(0, [(0, 1), (1, 2), (0, 2), (0, 3)]);
        for seed in 0..50 {
            let s = sample_induced_edge_budget(&g, 3, seed);
            if s.node_map == [0, 1, 2] {
                assert_eq!(s.graph.edge_count(), 3);
            }
            assert_eq!(s.node_map.len(), 3);
        }
    }

    #[test]
    fn budget_filled_from_isolated_nodes() {
        let (g, _) = Graph::from_edges(10, [(0, 1)]);
        let s = sample_induced_edge_budget(&g, 5, 1);
        assert_eq!(s.node_map.len(), 5);
        assert!(s.node_map.contains(&0) && s.node_map.contains(&1));
    }

    #[test]
    fn invalid_inputs() {
        let g = clique(3);
        assert!(matches!(sample_node(&g, 0.0, 1), Err(Error::InvalidFraction(_))));
        assert!(matches!(sample_node(&g, 1.5, 1), Err(Error::InvalidFraction(_))));
        assert!(matches!(sample_edge(&Graph::empty(3), 0.5, 1), Err(Error::NoEdges)));
        assert!(matches!(sample_node(&Graph::empty(0), 0.5, 1), Err(Error::NoNodes)));
    }

    #[test]
    fn budget_rounding() {
        assert_eq!(budget(500, 0.2), 100);
        assert_eq!(budget(10, 0.01), 1);
        assert_eq!(budget(7, 1.0), 7);
        assert_eq!(budget(3, 0.5), 2);
    }
}
