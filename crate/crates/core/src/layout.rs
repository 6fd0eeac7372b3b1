//! Deterministic force-directed (Fruchterman–Reingold) layout.
//!
//! Each connected component is laid out on its own, then components are
//! packed onto a grid of equal cells so their bounding boxes never overlap.
//! Components are placed largest first, ties by smallest node id.

use std::collections::HashMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::graph::{Graph, NodeId};
use crate::rng::{seeded, GraphRng};

pub const DEFAULT_ITERATIONS: usize = 200;

/// Ideal edge length.
const K: f64 = 1.0;
/// Gap between packed component cells.
const PADDING: f64 = 2.0 * K;
/// Components above this size use grid-cutoff repulsion.
const EXACT_LIMIT: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

pub fn compute_layout(g: &Graph, seed: u64, iterations: usize) -> Vec<Point> {
    let n = g.node_count();
    let mut pos = vec![Point { x: 0.0, y: 0.0 }; n];
    if n == 0 {
        return pos;
    }
    let (comp, count) = g.connected_components();
    let mut members: Vec<Vec<NodeId>> = vec![Vec::new(); count];
    for v in g.nodes() {
        members[comp[v as usize] as usize].push(v);
    }
    members.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));

    let mut rng = seeded(seed);
    let mut boxes = Vec::with_capacity(count);
    for nodes in &members {
        let local = layout_component(g, nodes, iterations, &mut rng);
        let min_x = local.iter().map(|p| p.x).fold(f64::INFINITY, f64::min);
        let min_y = local.iter().map(|p| p.y).fold(f64::INFINITY, f64::min);
        let max_x = local.iter().map(|p| p.x).fold(f64::NEG_INFINITY, f64::max);
        let max_y = local.iter().map(|p| p.y).fold(f64::NEG_INFINITY, f64::max);
        for (&v, p) in nodes.iter().zip(&local) {
            pos[v as usize] = Point {
                x: p.x - min_x,
                y: p.y - min_y,
            };
        }
        boxes.push((max_x - min_x, max_y - min_y));
    }

    let cell = boxes
        .iter()
        .map(|&(w, h)| w.max(h))
        .fold(0.0, f64::max)
        + PADDING;
    let cols = (count as f64).sqrt().ceil() as usize;
    for (i, nodes) in members.iter().enumerate() {
        let (dx, dy) = ((i % cols) as f64 * cell, (i / cols) as f64 * cell);
        for &v in nodes {
            pos[v as usize].x += dx;
            pos[v as usize].y += dy;
        }
    }
    pos
}

fn layout_component(g: &Graph, nodes: &[NodeId], iterations: usize, rng: &mut GraphRng) -> Vec<Point> {
    let n = nodes.len();
    if n == 1 {
        return vec![Point { x: 0.0, y: 0.0 }];
    }
    let index: HashMap<NodeId, usize> = nodes.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let edges: Vec<(usize, usize)> = nodes
        .iter()
        .enumerate()
        .flat_map(|(i, &v)| {
            let index = &index;
            g.neighbors(v)
                .iter()
                .filter(move |&&u| u > v)
                .map(move |u| (i, index[u]))
        })
        .collect();

    let side = (n as f64).sqrt() * K;
    let mut pos: Vec<Point> = (0..n)
        .map(|_| Point {
            x: rng.random::<f64>() * side,
            y: rng.random::<f64>() * side,
        })
        .collect();
    let mut disp = vec![(0.0f64, 0.0f64); n];
    let start_temp = side / 10.0 + K;

    for iter in 0..iterations {
        disp.iter_mut().for_each(|d| *d = (0.0, 0.0));
        if n <= EXACT_LIMIT {
            for i in 0..n {
                for j in i + 1..n {
                    repel(&pos, &mut disp, i, j);
                }
            }
        } else {
            grid_repulsion(&pos, &mut disp);
        }
        for &(i, j) in &edges {
            let dx = pos[i].x - pos[j].x;
            let dy = pos[i].y - pos[j].y;
            let d = (dx * dx + dy * dy).sqrt().max(1e-9);
            let f = d / K;
            disp[i].0 -= dx * f;
            disp[i].1 -= dy * f;
            disp[j].0 += dx * f;
            disp[j].1 += dy * f;
        }
        let temp = start_temp * (1.0 - iter as f64 / iterations as f64);
        for (p, &(dx, dy)) in pos.iter_mut().zip(&disp) {
            let len = (dx * dx + dy * dy).sqrt();
            if len > 0.0 {
                let step = len.min(temp) / len;
                p.x += dx * step;
                p.y += dy * step;
            }
        }
    }
    pos
}

#[inline]
fn repel(pos: &[Point], disp: &mut [(f64, f64)], i: usize, j: usize) {
    let mut dx = pos[i].x - pos[j].x;
    let mut dy = pos[i].y - pos[j].y;
    let mut d2 = dx * dx + dy * dy;
    if d2 < 1e-18 {
        // coincident points: push apart along a fixed index-dependent direction
        let angle = (i * 31 + j * 17) as f64;
        dx = angle.cos() * 1e-3;
        dy = angle.sin() * 1e-3;
        d2 = dx * dx + dy * dy;
    }
    // k^2 / d along the unit vector
    let f = K * K / d2;
    disp[i].0 += dx * f;
    disp[i].1 += dy * f;
    disp[j].0 -= dx * f;
    disp[j].1 -= dy * f;
}

fn grid_repulsion(pos: &[Point], disp: &mut [(f64, f64)]) {
    let cell = 2.0 * K;
    let key = |p: &Point| ((p.x / cell).floor() as i64, (p.y / cell).floor() as i64);
    let mut grid: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    for (i, p) in pos.iter().enumerate() {
        grid.entry(key(p)).or_default().push(i);
    }
    for (i, p) in pos.iter().enumerate() {
        let (cx, cy) = key(p);
        for gx in cx - 1..=cx + 1 {
            for gy in cy - 1..=cy + 1 {
                if let Some(bucket) = grid.get(&(gx, gy)) {
                    for &j in bucket {
                        if j > i {
                            repel(pos, disp, i, j);
                        }
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_node_at_origin() {
        let pos = compute_layout(&Graph::empty(1), 3, 50);
        assert_eq!(pos, vec![Point { x: 0.0, y: 0.0 }]);
    }

    #[test]
    fn components_do_not_overlap() {
        let (g, _) = Graph::from_edges(0, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 6)]);
        let pos = compute_layout(&g, 1, 100);
        let bbox = |ids: &[usize]| {
            let xs: Vec<f64> = ids.iter().map(|&i| pos[i].x).collect();
            let ys: Vec<f64> = ids.iter().map(|&i| pos[i].y).collect();
            (
                xs.iter().copied().fold(f64::INFINITY, f64::min),
                xs.iter().copied().fold(f64::NEG_INFINITY, f64::max),
                ys.iter().copied().fold(f64::INFINITY, f64::min),
                ys.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            )
        };
        let a = bbox(&[0, 1, 2]);
        let b = bbox(&[3, 4, 5, 6]);
        let disjoint = a.1 < b.0 || b.1 < a.0 || a.3 < b.2 || b.3 < a.2;
        assert!(disjoint, "{a:?} {b:?}");
    }

    #[test]
    fn deterministic_per_seed() {
        let (g, _) = Graph::from_edges(0, (0..20u32).map(|i| (i, (i * 7 + 3) % 20)));
        assert_eq!(compute_layout(&g, 9, 60), compute_layout(&g, 9, 60));
    }

    #[test]
    fn large_component_uses_grid_and_stays_finite() {
        let (g, _) = Graph::from_edges(0, (0..1000u32).map(|i| (i, (i + 1) % 1000)));
        let pos = compute_layout(&g, 2, 30);
        assert!(pos.iter().all(|p| p.x.is_finite() && p.y.is_finite()));
    }
}
