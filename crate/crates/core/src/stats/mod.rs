//! Multi-scale graph statistics.
//!
//! [`compute_all`] produces a global [`GraphStats`] record and a columnar
//! [`NodeStatsTable`]; [`distribution`] turns any node column into PDF, CDF
//! and CCDF series. Per-node work runs on the current rayon pool. Integer
//! results are exact and floating-point reductions are summed sequentially
//! in node order, so the output does not depend on the number of workers.

pub mod clique;
pub mod clustering;
mod distribution;
pub mod kcore;
pub mod triangles;

use serde::{Deserialize, Serialize};

use crate::graph::Graph;

pub use clique::max_clique_lower_bound;
pub use clustering::{assortativity, clustering_coefficients, Clustering};
pub use distribution::{distribution, Distribution, REAL_BINS};
pub use kcore::{kcore_decomposition, CoreNumbers};
pub use triangles::{count_triangles, edge_support, TriangleCounts};

/// Per-node statistics stored as parallel columns.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct NodeStatsTable {
    pub degree: Vec<u64>,
    pub triangles: Vec<u64>,
    pub local_clustering: Vec<f64>,
    pub kcore: Vec<u64>,
    pub wedges: Vec<u64>,
}

#[derive(Debug, Clone, Copy)]
pub enum Column<'a> {
    Integer(&'a [u64]),
    Real(&'a [f64]),
}

impl NodeStatsTable {
    pub const COLUMNS: [&'static str; 5] =
        ["degree", "triangles", "local_clustering", "kcore", "wedges"];

    pub fn len(&self) -> usize {
        self.degree.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degree.is_empty()
    }

    pub fn column(&self, name: &str) -> Option<Column<'_>> {
        Some(match name {
            "degree" => Column::Integer(&self.degree),
            "triangles" => Column::Integer(&self.triangles),
            "local_clustering" => Column::Real(&self.local_clustering),
            "kcore" => Column::Integer(&self.kcore),
            "wedges" => Column::Integer(&self.wedges),
            _ => return None,
        })
    }

    pub fn value(&self, name: &str, node: usize) -> Option<f64> {
        match self.column(name)? {
            Column::Integer(c) => c.get(node).map(|&x| x as f64),
            Column::Real(c) => c.get(node).copied(),
        }
    }
}

/// Global statistics of one graph.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct GraphStats {
    pub n: u64,
    pub m: u64,
    pub density: f64,
    pub max_degree: u64,
    pub avg_degree: f64,
    pub total_triangles: u64,
    pub total_wedges: u64,
    pub avg_clustering: f64,
    /// Transitivity, `3 * total_triangles / total_wedges`.
    pub global_clustering: f64,
    pub max_kcore: u64,
    pub assortativity: Option<f64>,
    pub max_clique_lb: u64,
    pub max_clique_method: String,
    pub components: u64,
}

impl GraphStats {
    /// Numeric statistics addressable by name in queries.
    pub const FIELDS: [&'static str; 13] = [
        "n",
        "m",
        "density",
        "max_degree",
        "avg_degree",
        "total_triangles",
        "total_wedges",
        "avg_clustering",
        "global_clustering",
        "max_kcore",
        "assortativity",
        "max_clique_lb",
        "components",
    ];

    /// `Ok(None)` for a known statistic with no defined value.
    pub fn get(&self, name: &str) -> Option<Option<f64>> {
        Some(Some(match name {
            "n" => self.n as f64,
            "m" => self.m as f64,
            "density" => self.density,
            "max_degree" => self.max_degree as f64,
            "avg_degree" => self.avg_degree,
            "total_triangles" => self.total_triangles as f64,
            "total_wedges" => self.total_wedges as f64,
            "avg_clustering" => self.avg_clustering,
            "global_clustering" | "kappa" => self.global_clustering,
            "max_kcore" => self.max_kcore as f64,
            "assortativity" => return Some(self.assortativity),
            "max_clique_lb" => self.max_clique_lb as f64,
            "components" => self.components as f64,
            _ => return None,
        }))
    }

    /// Canonical JSON rendering shared by every interface that emits stats:
    /// pretty-printed, newline-terminated.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("stats serialize");
        s.push('\n');
        s
    }
}

/// Full statistic stack on the current rayon pool.
pub fn compute_all(g: &Graph) -> (GraphStats, NodeStatsTable) {
    let n = g.node_count();
    let m = g.edge_count();
    let tri = count_triangles(g);
    let cores = kcore_decomposition(g);
    let clustering = clustering_coefficients(g, &tri.per_node);
    let degrees: Vec<u64> = g.degrees().into_iter().map(|d| d as u64).collect();
    let wedges: Vec<u64> = degrees.iter().map(|&d| clustering::wedges(d as usize)).collect();
    let (_, components) = g.connected_components();

    let stats = GraphStats {
        n: n as u64,
        m: m as u64,
        density: if n < 2 {
            0.0
        } else {
            2.0 * m as f64 / (n as f64 * (n as f64 - 1.0))
        },
        max_degree: degrees.iter().copied().max().unwrap_or(0),
        avg_degree: if n == 0 { 0.0 } else { 2.0 * m as f64 / n as f64 },
        total_triangles: tri.total,
        total_wedges: wedges.iter().sum(),
        avg_clustering: clustering.average,
        global_clustering: clustering.global,
        max_kcore: cores.max as u64,
        assortativity: assortativity(g),
        max_clique_lb: max_clique_lower_bound(g, &cores.per_node, cores.max) as u64,
        max_clique_method: clique::METHOD.to_string(),
        components: components as u64,
    };
    let table = NodeStatsTable {
        degree: degrees,
        triangles: tri.per_node,
        local_clustering: clustering.local,
        kcore: cores.per_node.into_iter().map(u64::from).collect(),
        wedges,
    };
    (stats, table)
}

/// [`compute_all`] on a dedicated pool of `threads` workers.
pub fn compute_all_with_threads(g: &Graph, threads: usize) -> (GraphStats, NodeStatsTable) {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .expect("thread pool");
    pool.install(|| compute_all(g))
}
