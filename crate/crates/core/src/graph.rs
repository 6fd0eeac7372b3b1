//! Compact immutable adjacency representation.
//!
//! A [`Graph`] is always undirected and simple: self-loops are dropped and
//! duplicate or reciprocal edges merged when it is built. Neighbor lists are
//! stored in CSR form and sorted ascending so that triangle counting can use
//! merge intersection.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::edgelist::EdgeListFile;

pub type NodeId = u32;

/// Counts of edges removed while normalizing raw input into a simple graph.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizationReport {
    pub input_edges: usize,
    pub self_loops_dropped: usize,
    pub duplicates_merged: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<NodeId>,
}

impl Default for Graph {
    fn default() -> Self {
        Self::empty(0)
    }
}

impl Graph {
    /// Graph with `n` isolated nodes.
    pub fn empty(n: usize) -> Self {
        Self {
            offsets: vec![0; n + 1],
            targets: Vec::new(),
        }
    }

    /// Builds a simple undirected graph on `n` nodes from arbitrary pairs.
    ///
    /// Node count grows to cover every endpoint that appears in `edges`.
    pub fn from_edges<I>(n: usize, edges: I) -> (Self, NormalizationReport)
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let mut report = NormalizationReport::default();
        let mut n = n;
        let mut pairs: Vec<(NodeId, NodeId)> = Vec::new();
        for (u, v) in edges {
            report.input_edges += 1;
            n = n.max(u as usize + 1).max(v as usize + 1);
            if u == v {
                report.self_loops_dropped += 1;
                continue;
            }
            pairs.push(if u < v { (u, v) } else { (v, u) });
        }
        pairs.sort_unstable();
        let before = pairs.len();
        pairs.dedup();
        report.duplicates_merged = before - pairs.len();
        (Self::from_sorted_pairs(n, &pairs), report)
    }

    /// Builds from canonical pairs: `u < v`, sorted ascending, no duplicates.
    pub(crate) fn from_sorted_pairs(n: usize, pairs: &[(NodeId, NodeId)]) -> Self {
        debug_assert!(pairs.windows(2).all(|w| w[0] < w[1]));
        let mut degree = vec![0usize; n];
        for &(u, v) in pairs {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        let mut acc = 0;
        for d in &degree {
            acc += d;
            offsets.push(acc);
        }
        let mut cursor = offsets[..n].to_vec();
        let mut targets = vec![0 as NodeId; acc];
        // Pairs are sorted by (u, v), so both endpoint lists fill in ascending order.
        for &(u, v) in pairs {
            targets[cursor[u as usize]] = v;
            cursor[u as usize] += 1;
            targets[cursor[v as usize]] = u;
            cursor[v as usize] += 1;
        }
        Self { offsets, targets }
    }

    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.node_count() == 0
    }

    #[inline]
    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        let v = v as usize;
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Positions of `v`'s neighbors in the flat adjacency array, for data
    /// aligned per directed edge slot.
    #[inline]
    pub fn slots(&self, v: NodeId) -> std::ops::Range<usize> {
        self.offsets[v as usize]..self.offsets[v as usize + 1]
    }

    /// Slot of `v` in the neighbor list of `u`.
    #[inline]
    pub fn slot(&self, u: NodeId, v: NodeId) -> Option<usize> {
        self.neighbors(u)
            .binary_search(&v)
            .ok()
            .map(|i| self.offsets[u as usize] + i)
    }

    /// Total number of directed adjacency slots, `2m`.
    pub fn slot_count(&self) -> usize {
        self.targets.len()
    }

    #[inline]
    pub fn degree(&self, v: NodeId) -> usize {
        let v = v as usize;
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.offsets.windows(2).map(|w| w[1] - w[0]).collect()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        0..self.node_count() as NodeId
    }

    #[inline]
    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        let (a, b) = if self.degree(u) <= self.degree(v) {
            (u, v)
        } else {
            (v, u)
        };
        self.neighbors(a).binary_search(&b).is_ok()
    }

    /// Each undirected edge once as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.nodes().flat_map(move |u| {
            let nbrs = self.neighbors(u);
            let start = nbrs.partition_point(|&v| v <= u);
            nbrs[start..].iter().map(move |&v| (u, v))
        })
    }

    /// Subgraph induced by `nodes`, relabelled `0..nodes.len()` in the given order.
    pub fn induced_subgraph(&self, nodes: &[NodeId]) -> Graph {
        let mut local = vec![NodeId::MAX; self.node_count()];
        for (i, &v) in nodes.iter().enumerate() {
            local[v as usize] = i as NodeId;
        }
        let mut pairs = Vec::new();
        for (i, &v) in nodes.iter().enumerate() {
            for &w in self.neighbors(v) {
                let j = local[w as usize];
                if j != NodeId::MAX && (i as NodeId) < j {
                    pairs.push((i as NodeId, j));
                }
            }
        }
        pairs.sort_unstable();
        Graph::from_sorted_pairs(nodes.len(), &pairs)
    }

    /// Canonical text dump: a `#nodes N` header, then one `u v` line per edge
    /// with `u < v`, sorted ascending.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::with_capacity(16 + self.edge_count() * 12);
        let _ = writeln!(out, "#nodes {}", self.node_count());
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    /// Component id per node (dense, numbered by smallest member) and the
    /// number of components.
    pub fn connected_components(&self) -> (Vec<u32>, usize) {
        let n = self.node_count();
        let mut comp = vec![u32::MAX; n];
        let mut count = 0u32;
        let mut queue = VecDeque::new();
        for s in 0..n {
            if comp[s] != u32::MAX {
                continue;
            }
            comp[s] = count;
            queue.push_back(s as NodeId);
            while let Some(u) = queue.pop_front() {
                for &v in self.neighbors(u) {
                    if comp[v as usize] == u32::MAX {
                        comp[v as usize] = count;
                        queue.push_back(v);
                    }
                }
            }
            count += 1;
        }
        (comp, count as usize)
    }
}

/// Normalizes a parsed edge list into a [`Graph`].
pub fn build_graph(raw: &EdgeListFile) -> (Graph, NormalizationReport) {
    Graph::from_edges(raw.node_count(), raw.edges.iter().copied())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_report_counts_loops_and_duplicates() {
        let (g, report) = Graph::from_edges(0, [(0, 1), (1, 0), (1, 1)]);
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(report.self_loops_dropped, 1);
        assert_eq!(report.duplicates_merged, 1);
    }

    #[test]
    fn empty_input_gives_empty_graph() {
        let (g, report) = Graph::from_edges(0, []);
        assert_eq!(g.node_count(), 0);
        assert_eq!(g.edge_count(), 0);
        assert_eq!(report, NormalizationReport::default());
        assert_eq!(g.connected_components().1, 0);
    }

    #[test]
    fn neighbor_lists_are_sorted_and_symmetric() {
        let (g, _) = Graph::from_edges(0, [(3, 0), (2, 0), (0, 1), (2, 3)]);
        assert_eq!(g.neighbors(0), &[1, 2, 3]);
        assert_eq!(g.neighbors(3), &[0, 2]);
        for (u, v) in g.edges() {
            assert!(g.has_edge(v, u));
        }
    }

    #[test]
    fn two_triangles_have_two_components() {
        let (g, _) = Graph::from_edges(0, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]);
        let (comp, count) = g.connected_components();
        assert_eq!(count, 2);
        assert_eq!(comp, vec![0, 0, 0, 1, 1, 1]);
    }

    #[test]
    fn dump_keeps_isolated_nodes() {
        let (g, _) = Graph::from_edges(5, [(1, 0)]);
        assert_eq!(g.to_edge_list(), "#nodes 5\n0 1\n");
    }

    #[test]
    fn induced_subgraph_of_clique_is_clique() {
        let pairs: Vec<_> = (0..6u32)
            .flat_map(|u| (u + 1..6).map(move |v| (u, v)))
            .collect();
        let (g, _) = Graph::from_edges(6, pairs);
        let sub = g.induced_subgraph(&[5, 1, 3]);
        assert_eq!(sub.edge_count(), 3);
    }
}
