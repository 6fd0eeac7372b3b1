//! Community detection and structural role discovery.
//!
//! Both produce a [`NodeLabeling`]: dense per-node labels suitable for
//! coloring a graph view.

mod community;
mod roles;

use serde::{Deserialize, Serialize};

pub use community::{detect_communities, modularity, MAX_SWEEPS};
pub use roles::{discover_roles, extract_role_features, FeatureMatrix, RoleCount, FEATURE_NAMES};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LabelKind {
    Community,
    Role,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeLabeling {
    pub kind: LabelKind,
    pub k: usize,
    pub labels: Vec<u32>,
    /// Modularity for communities; within-cluster to total sum-of-squares
    /// ratio for roles.
    pub quality: Option<f64>,
}

/// Renumbers labels densely in order of first appearance.
pub(crate) fn compress(labels: &mut [u32]) -> usize {
    let mut map = std::collections::HashMap::new();
    for l in labels.iter_mut() {
        let next = map.len() as u32;
        *l = *map.entry(*l).or_insert(next);
    }
    map.len()
}
