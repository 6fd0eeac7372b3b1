//! Core decomposition by bucket peeling in `O(n + m)`.

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreNumbers {
    pub per_node: Vec<u32>,
    pub max: u32,
}

pub fn kcore_decomposition(g: &Graph) -> CoreNumbers {
    let n = g.node_count();
    if n == 0 {
        return CoreNumbers {
            per_node: Vec::new(),
            max: 0,
        };
    }
    let mut deg: Vec<usize> = g.degrees();
    let max_deg = deg.iter().copied().max().unwrap_or(0);

    // bin[d] = first position in `vert` of nodes with current degree d
    let mut bin = vec![0usize; max_deg + 1];
    for &d in &deg {
        bin[d] += 1;
    }
    let mut start = 0;
    for b in bin.iter_mut() {
        let count = *b;
        *b = start;
        start += count;
    }
    let mut pos = vec![0usize; n];
    let mut vert = vec![0u32; n];
    {
        let mut next = bin.clone();
        for v in 0..n {
            pos[v] = next[deg[v]];
            vert[pos[v]] = v as u32;
            next[deg[v]] += 1;
        }
    }

    for i in 0..n {
        let v = vert[i] as usize;
        for &u in g.neighbors(v as u32) {
            let u = u as usize;
            if deg[u] > deg[v] {
                let du = deg[u];
                let pu = pos[u];
                let pw = bin[du];
                let w = vert[pw] as usize;
                if u != w {
                    vert.swap(pu, pw);
                    pos[u] = pw;
                    pos[w] = pu;
                }
                bin[du] += 1;
                deg[u] -= 1;
            }
        }
    }

    let per_node: Vec<u32> = deg.into_iter().map(|d| d as u32).collect();
    let max = per_node.iter().copied().max().unwrap_or(0);
    CoreNumbers { per_node, max }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clique_core_is_n_minus_one() {
        let pairs: Vec<_> = (0..5u32)
            .flat_map(|u| (u + 1..5).map(move |v| (u, v)))
            .collect();
        let (g, _) = Graph::from_edges(5, pairs);
        let c = kcore_decomposition(&g);
        assert_eq!(c.per_node, vec![4; 5]);
        assert_eq!(c.max, 4);
    }

    #[test]
    fn path_core_is_one() {
        let (g, _) = Graph::from_edges(0, [(0, 1), (1, 2), (2, 3)]);
        let c = kcore_decomposition(&g);
        assert_eq!(c.per_node, vec![1; 4]);
    }

    #[test]
    fn triangle_with_tail() {
        let (g, _) = Graph::from_edges(0, [(0, 1), (1, 2), (0, 2), (2, 3)]);
        assert_eq!(kcore_decomposition(&g).per_node, vec![2, 2, 2, 1]);
    }

    #[test]
    fn isolated_nodes_are_zero_core() {
        let g = Graph::empty(3);
        let c = kcore_decomposition(&g);
        assert_eq!(c.per_node, vec![0; 3]);
        assert_eq!(c.max, 0);
    }
}
