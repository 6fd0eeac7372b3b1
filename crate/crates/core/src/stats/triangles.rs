//! Exact triangle counting.
//!
//! Edges are oriented from lower to higher `(degree, id)` rank, which bounds
//! every out-list by `O(sqrt(m))`. Each triangle is then found exactly once as
//! `u -> v -> w` with `w` in the merge intersection of `out(u)` and `out(v)`.

use std::sync::atomic::{AtomicU32, AtomicU64, Ordering};

use rayon::prelude::*;

use crate::graph::{Graph, NodeId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleCounts {
    pub per_node: Vec<u64>,
    pub total: u64,
}

fn oriented(g: &Graph) -> Vec<Vec<NodeId>> {
    let above = |u: NodeId, v: NodeId| (g.degree(v), v) > (g.degree(u), u);
    (0..g.node_count() as NodeId)
        .into_par_iter()
        .map(|u| {
            g.neighbors(u)
                .iter()
                .copied()
                .filter(|&v| above(u, v))
                .collect()
        })
        .collect()
}

#[inline]
fn for_each_common(a: &[NodeId], b: &[NodeId], mut f: impl FnMut(NodeId)) {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                f(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
}

pub fn count_triangles(g: &Graph) -> TriangleCounts {
    let n = g.node_count();
    let out = oriented(g);
    let counts: Vec<AtomicU64> = (0..n).map(|_| AtomicU64::new(0)).collect();
    let total: u64 = (0..n)
        .into_par_iter()
        .map(|u| {
            let out_u = &out[u];
            let mut found = 0u64;
            for &v in out_u {
                let mut here = 0u64;
                for_each_common(out_u, &out[v as usize], |w| {
                    counts[w as usize].fetch_add(1, Ordering::Relaxed);
                    here += 1;
                });
                if here > 0 {
                    counts[v as usize].fetch_add(here, Ordering::Relaxed);
                    found += here;
                }
            }
            if found > 0 {
                counts[u].fetch_add(found, Ordering::Relaxed);
            }
            found
        })
        .sum();
    TriangleCounts {
        per_node: counts.into_iter().map(AtomicU64::into_inner).collect(),
        total,
    }
}

/// Number of triangles through each edge, indexed by adjacency slot
/// (see [`Graph::slots`]); both directions of an edge carry the same value.
pub fn edge_support(g: &Graph) -> Vec<u32> {
    let out = oriented(g);
    let support: Vec<AtomicU32> = (0..g.slot_count()).map(|_| AtomicU32::new(0)).collect();
    let bump = |a: NodeId, b: NodeId| {
        for (x, y) in [(a, b), (b, a)] {
            let s = g.slot(x, y).expect("edge exists");
            support[s].fetch_add(1, Ordering::Relaxed);
        }
    };
    (0..g.node_count()).into_par_iter().for_each(|u| {
        let out_u = &out[u];
        for &v in out_u {
            for_each_common(out_u, &out[v as usize], |w| {
                bump(u as NodeId, v);
                bump(u as NodeId, w);
                bump(v, w);
            });
        }
    });
    support.into_iter().map(AtomicU32::into_inner).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_triangle() {
        let (g, _) = Graph::from_edges(0, [(0, 1), (1, 2), (0, 2)]);
        let t = count_triangles(&g);
        assert_eq!(t.per_node, vec![1, 1, 1]);
        assert_eq!(t.total, 1);
    }

    #[test]
    fn support_of_triangle_with_tail() {
        let (g, _) = Graph::from_edges(0, [(0, 1), (1, 2), (0, 2), (2, 3)]);
        let s = edge_support(&g);
        assert_eq!(s[g.slot(0, 1).unwrap()], 1);
        assert_eq!(s[g.slot(2, 0).unwrap()], 1);
        assert_eq!(s[g.slot(2, 3).unwrap()], 0);
        assert_eq!(s[g.slot(3, 2).unwrap()], 0);
    }

    #[test]
    fn star_has_none() {
        let (g, _) = Graph::from_edges(0, (1..=5).map(|i| (0, i)));
        let t = count_triangles(&g);
        assert_eq!(t.per_node, vec![0; 6]);
        assert_eq!(t.total, 0);
    }

    #[test]
    fn k5_closed_form() {
        let pairs: Vec<_> = (0..5u32)
            .flat_map(|u| (u + 1..5).map(move |v| (u, v)))
            .collect();
        let (g, _) = Graph::from_edges(5, pairs);
        let t = count_triangles(&g);
        assert_eq!(t.total, 10);
        assert_eq!(t.per_node, vec![6; 5]);
    }
}
