use netrepo_core::generators::GeneratorConfig;
use netrepo_core::stats::GraphStats;
use netrepo_core::NormalizationReport;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Uploaded,
    Generated,
    Bundled,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    #[serde(default)]
    pub description: String,
    #[serde(default)]
    pub citation: String,
    #[serde(default)]
    pub notes: Vec<String>,
    /// Config that reproduces a generated graph.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<GeneratorConfig>,
    /// Share of edges inside a block, for block-structured generators.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub intra_block_fraction: Option<f64>,
    #[serde(default)]
    pub normalization: NormalizationReport,
}

/// File names inside a dataset directory.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatasetPaths {
    pub edges: String,
    pub stats: String,
    pub node_stats: String,
    pub distributions: String,
    pub layout: String,
}

impl Default for DatasetPaths {
    fn default() -> Self {
        Self {
            edges: "graph.txt".into(),
            stats: "stats.json".into(),
            node_stats: "nodes.json".into(),
            distributions: "distributions.json".into(),
            layout: "layout.json".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetRecord {
    pub id: String,
    pub name: String,
    pub collection: String,
    pub source: Source,
    pub metadata: Metadata,
    /// Set once processing finished; only processed records are ever listed.
    pub processed: bool,
    pub stats: Option<GraphStats>,
    pub created_at: String,
    pub paths: DatasetPaths,
}

/// Descriptive fields supplied with an upload or generation request.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct DatasetInfo {
    pub name: String,
    #[serde(default)]
    pub collection: Option<String>,
    #[serde(default)]
    pub description: String,
    #[serde(default)]
    pub citation: String,
}

impl DatasetInfo {
    pub fn named(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            ..Self::default()
        }
    }

    pub fn in_collection(mut self, collection: impl Into<String>) -> Self {
        self.collection = Some(collection.into());
        self
    }
}

/// Partial update of a record's descriptive fields.
#[derive(Debug, Clone, Default, Deserialize)]
pub struct RecordPatch {
    pub name: Option<String>,
    pub description: Option<String>,
    pub citation: Option<String>,
}
