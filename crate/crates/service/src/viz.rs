//! Visualization payloads: positions and edges of a graph or of a sample of it.

use netrepo_core::clustering::{
    detect_communities, discover_roles, extract_role_features, LabelKind, NodeLabeling, RoleCount,
};
use netrepo_core::layout::{compute_layout, Point};
use netrepo_core::sampler::sample_induced_edge_budget;
use netrepo_core::stats::compute_all;
use netrepo_core::{Graph, NodeId};
use serde::{Deserialize, Serialize};

use crate::error::{Result, ServiceError};
use crate::store::{Catalog, ServiceConfig};

pub const DEFAULT_SEED: u64 = 0;

/// Layout precomputed at ingest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StoredLayout {
    pub seed: u64,
    pub max_nodes: usize,
    pub iterations: usize,
    pub sampled: bool,
    /// Original ids of the laid-out nodes, ascending.
    pub nodes: Vec<NodeId>,
    pub positions: Vec<Point>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VizRequest {
    pub max_nodes: Option<usize>,
    pub labels: Option<LabelKind>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Visualization {
    pub id: String,
    pub sampled: bool,
    pub total_nodes: usize,
    pub total_edges: usize,
    pub seed: u64,
    /// Original node ids; edges and positions index into this list.
    pub nodes: Vec<NodeId>,
    pub positions: Vec<Point>,
    pub edges: Vec<(NodeId, NodeId)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<NodeLabeling>,
}

/// The graph itself when it fits in `max_nodes`, otherwise an induced-edge
/// sample of exactly `max_nodes` nodes.
fn view(g: &Graph, max_nodes: usize, seed: u64) -> (Graph, Vec<NodeId>, bool) {
    if g.node_count() <= max_nodes {
        (g.clone(), g.nodes().collect(), false)
    } else {
        let s = sample_induced_edge_budget(g, max_nodes, seed);
        (s.graph, s.node_map, true)
    }
}

pub(crate) fn default_layout(g: &Graph, config: &ServiceConfig) -> StoredLayout {
    let (sub, nodes, sampled) = view(g, config.viz_nodes, DEFAULT_SEED);
    StoredLayout {
        seed: DEFAULT_SEED,
        max_nodes: config.viz_nodes,
        iterations: config.layout_iterations,
        sampled,
        nodes,
        positions: compute_layout(&sub, DEFAULT_SEED, config.layout_iterations),
    }
}

pub fn labels_for(g: &Graph, kind: LabelKind, seed: u64) -> Result<NodeLabeling> {
    match kind {
        LabelKind::Community => Ok(detect_communities(g, seed)),
        LabelKind::Role => {
            let (_, table) = compute_all(g);
            let features = extract_role_features(g, &table);
            Ok(discover_roles(&features, RoleCount::Auto, seed)?)
        }
    }
}

pub fn visualization(catalog: &Catalog, id: &str, req: &VizRequest) -> Result<Visualization> {
    let record = catalog.get(id)?;
    let config = catalog.config();
    let max_nodes = req.max_nodes.unwrap_or(config.viz_nodes);
    if max_nodes == 0 {
        return Err(ServiceError::BadRequest("max_nodes must be at least 1".into()));
    }
    let seed = req.seed.unwrap_or(DEFAULT_SEED);
    let g = catalog.graph(&record.id)?;
    let (sub, nodes, sampled) = view(&g, max_nodes, seed);

    let stored = catalog.stored_layout(&record.id)?;
    let reusable = stored.seed == seed
        && stored.iterations == config.layout_iterations
        && stored.nodes == nodes;
    let positions = if reusable {
        stored.positions
    } else {
        compute_layout(&sub, seed, config.layout_iterations)
    };
    let labels = req.labels.map(|kind| labels_for(&sub, kind, seed)).transpose()?;
    Ok(Visualization {
        id: record.id,
        sampled,
        total_nodes: g.node_count(),
        total_edges: g.edge_count(),
        seed,
        nodes,
        positions,
        edges: sub.edges().collect(),
        labels,
    })
}

/// Visualization of an unsaved graph, used for generator previews.
pub fn preview(g: &Graph, max_nodes: usize, seed: u64, iterations: usize) -> Visualization {
    let (sub, nodes, sampled) = view(g, max_nodes.max(1), seed);
    Visualization {
        id: String::new(),
        sampled,
        total_nodes: g.node_count(),
        total_edges: g.edge_count(),
        seed,
        nodes,
        positions: compute_layout(&sub, seed, iterations),
        edges: sub.edges().collect(),
        labels: None,
    }
}
