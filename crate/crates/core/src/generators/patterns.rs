//! Canonical subgraph patterns and their composition into larger graphs.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::rng::GraphRng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PatternType {
    Node,
    Edge,
    Clique,
    Star,
    Cycle,
    Chain,
}

impl PatternType {
    pub fn min_size(self) -> usize {
        match self {
            PatternType::Node => 1,
            PatternType::Edge | PatternType::Clique | PatternType::Star | PatternType::Chain => 2,
            PatternType::Cycle => 3,
        }
    }

    /// Edge count of the pattern on `size` nodes.
    pub fn edge_count(self, size: usize) -> usize {
        match self {
            PatternType::Node => 0,
            PatternType::Edge => 1,
            PatternType::Clique => size * (size - 1) / 2,
            PatternType::Star | PatternType::Chain => size - 1,
            PatternType::Cycle => size,
        }
    }

    pub fn check_size(self, size: usize) -> Result<()> {
        if size < self.min_size() {
            return Err(Error::InvalidConfig(format!(
                "{self:?} pattern needs size >= {}, got {size}",
                self.min_size()
            )));
        }
        if self == PatternType::Edge && size != 2 {
            return Err(Error::InvalidConfig(format!(
                "edge pattern has exactly 2 nodes, got {size}"
            )));
        }
        Ok(())
    }

    fn pairs(self, size: usize) -> Vec<(NodeId, NodeId)> {
        let s = size as NodeId;
        match self {
            PatternType::Node => Vec::new(),
            PatternType::Edge => vec![(0, 1)],
            PatternType::Clique => (0..s)
                .flat_map(|u| (u + 1..s).map(move |v| (u, v)))
                .collect(),
            PatternType::Star => (1..s).map(|v| (0, v)).collect(),
            PatternType::Chain => (1..s).map(|v| (v - 1, v)).collect(),
            PatternType::Cycle => (1..s).map(|v| (v - 1, v)).chain([(0, s - 1)]).collect(),
        }
    }
}

/// `count` copies of one pattern.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternSpec {
    pub pattern: PatternType,
    pub size: usize,
    #[serde(default = "one")]
    pub count: usize,
}

fn one() -> usize {
    1
}

/// How injected patterns attach to the graph they join.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Wiring {
    /// One edge per pattern instance, from a uniform pattern node to a
    /// uniform node of the base graph.
    #[default]
    Bridge,
    Disjoint,
}

/// The exact canonical pattern: star node 0 is the center, chain and cycle
/// run `0 - 1 - ... - (size - 1)`.
pub fn pattern(kind: PatternType, size: usize) -> Result<Graph> {
    kind.check_size(size)?;
    Ok(Graph::from_sorted_pairs(size, &{
        let mut p = kind.pairs(size);
        p.sort_unstable();
        p
    }))
}

/// Disjoint union of `base` and every pattern instance, appended in order
/// after the base ids. With [`Wiring::Bridge`] each instance gets one bridge
/// edge to the base.
pub fn compose(
    base: &Graph,
    patterns: &[PatternSpec],
    wiring: Wiring,
    rng: &mut GraphRng,
) -> Result<Graph> {
    for spec in patterns {
        spec.pattern.check_size(spec.size)?;
    }
    let base_n = base.node_count();
    let instances: usize = patterns.iter().map(|s| s.count).sum();
    if wiring == Wiring::Bridge && base_n == 0 && instances > 0 {
        return Err(Error::InvalidConfig(
            "bridge wiring needs a non-empty base graph".into(),
        ));
    }
    let mut pairs: Vec<(NodeId, NodeId)> = base.edges().collect();
    let mut offset = base_n as NodeId;
    for spec in patterns {
        let local = spec.pattern.pairs(spec.size);
        for _ in 0..spec.count {
            pairs.extend(local.iter().map(|&(u, v)| (u + offset, v + offset)));
            if wiring == Wiring::Bridge {
                let from = offset + rng.random_range(0..spec.size) as NodeId;
                let to = rng.random_range(0..base_n) as NodeId;
                pairs.push((to, from));
            }
            offset += spec.size as NodeId;
        }
    }
    Ok(Graph::from_edges(offset as usize, pairs).0)
}

/// Graph made only of patterns: the first instance is the base and the rest
/// are composed onto it.
pub fn pattern_graph(patterns: &[PatternSpec], wiring: Wiring, rng: &mut GraphRng) -> Result<Graph> {
    let Some(first) = patterns.iter().position(|s| s.count > 0) else {
        return Ok(Graph::empty(0));
    };
    let spec = &patterns[first];
    let base = pattern(spec.pattern, spec.size)?;
    let mut rest = patterns[first..].to_vec();
    rest[0].count -= 1;
    compose(&base, &rest, wiring, rng)
}
