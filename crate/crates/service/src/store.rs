//! File-backed dataset catalog.
//!
//! Layout under the catalog root:
//!
//! ```text
//! catalog.json            index of processed records and slug aliases
//! collections.json        collection taxonomy
//! workspace.json          saved workspace items
//! datasets/<slug>/        graph.txt, stats.json, nodes.json,
//!                         distributions.json, layout.json
//! tmp/                    datasets being processed
//! ```
//!
//! A dataset directory is written completely under `tmp/` and renamed into
//! `datasets/` before its record enters the index, so readers never observe
//! a partial dataset. Directories are immutable afterwards.

use std::collections::{BTreeMap, HashSet};
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Mutex, MutexGuard, RwLock, RwLockReadGuard, RwLockWriteGuard};

use netrepo_core::edgelist::parse_edge_list_str;
use netrepo_core::generators::{intra_block_fraction, GeneratorConfig};
use netrepo_core::graph::build_graph;
use netrepo_core::stats::{compute_all, distribution, Distribution, GraphStats, NodeStatsTable};
use netrepo_core::{Graph, NormalizationReport};
use serde::{Deserialize, Serialize};

use crate::error::{Result, ServiceError};
use crate::model::{DatasetInfo, DatasetPaths, DatasetRecord, Metadata, RecordPatch, Source};
use crate::viz::{self, StoredLayout};
use crate::workspace::Workspace;

pub const DEFAULT_COLLECTIONS: [&str; 8] = [
    "biological",
    "collaboration",
    "infrastructure",
    "social",
    "technological",
    "web",
    "synthetic",
    "misc",
];

const UPLOAD_COLLECTION: &str = "misc";
const GENERATED_COLLECTION: &str = "synthetic";
const MAX_SLUG_LEN: usize = 64;

#[derive(Debug, Clone)]
pub struct ServiceConfig {
    pub root: PathBuf,
    /// Graphs with more edges than this are processed as background jobs.
    pub background_threshold: usize,
    /// Concurrent background jobs.
    pub workers: usize,
    /// Node budget of the layout precomputed at ingest.
    pub viz_nodes: usize,
    pub layout_iterations: usize,
    pub max_upload_bytes: usize,
}

impl ServiceConfig {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        Self {
            root: root.into(),
            background_threshold: 1_000_000,
            workers: 2,
            viz_nodes: 5000,
            layout_iterations: netrepo_core::layout::DEFAULT_ITERATIONS,
            max_upload_bytes: 512 << 20,
        }
    }
}

#[derive(Debug, Default, Serialize, Deserialize)]
struct Index {
    datasets: Vec<DatasetRecord>,
    /// Former or alternative slugs, mapped to the record id.
    aliases: BTreeMap<String, String>,
}

impl Index {
    fn position(&self, id: &str) -> Option<usize> {
        let id = self.aliases.get(id).map(String::as_str).unwrap_or(id);
        self.datasets.iter().position(|r| r.id == id)
    }

    fn taken(&self, slug: &str) -> bool {
        self.aliases.contains_key(slug) || self.datasets.iter().any(|r| r.id == slug)
    }
}

/// A graph with a reserved slug, waiting to be processed.
#[derive(Debug)]
pub struct Pending {
    slug: String,
    info: DatasetInfo,
    collection: String,
    source: Source,
    graph: Graph,
    report: NormalizationReport,
    generator: Option<GeneratorConfig>,
}

impl Pending {
    pub fn id(&self) -> &str {
        &self.slug
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }
}

pub struct Catalog {
    config: ServiceConfig,
    collections: Vec<String>,
    index: RwLock<Index>,
    reserved: Mutex<HashSet<String>>,
    workspace: Workspace,
}

fn lock<T>(m: &Mutex<T>) -> MutexGuard<'_, T> {
    m.lock().unwrap_or_else(|e| e.into_inner())
}

/// Writes `bytes` next to `path` and renames over it.
pub(crate) fn atomic_write(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    static COUNTER: AtomicU64 = AtomicU64::new(0);
    let n = COUNTER.fetch_add(1, Ordering::Relaxed);
    let mut name = path.file_name().unwrap_or_default().to_os_string();
    name.push(format!(".{}.{n}.tmp", std::process::id()));
    let tmp = path.with_file_name(name);
    fs::write(&tmp, bytes)?;
    fs::rename(&tmp, path)
}

/// Lowercase ASCII letters and digits joined by single dashes.
pub fn slugify(name: &str) -> String {
    let mut slug = String::new();
    for c in name.chars() {
        if c.is_ascii_alphanumeric() {
            slug.push(c.to_ascii_lowercase());
        } else if !slug.is_empty() && !slug.ends_with('-') {
            slug.push('-');
        }
        if slug.len() >= MAX_SLUG_LEN {
            break;
        }
    }
    let slug = slug.trim_end_matches('-');
    if slug.is_empty() {
        "graph".to_string()
    } else {
        slug.to_string()
    }
}

impl Catalog {
    pub fn open(config: ServiceConfig) -> Result<Self> {
        let root = &config.root;
        fs::create_dir_all(root.join("datasets"))?;
        let tmp = root.join("tmp");
        if tmp.exists() {
            fs::remove_dir_all(&tmp)?;
        }
        fs::create_dir_all(&tmp)?;

        let collections_path = root.join("collections.json");
        let collections: Vec<String> = if collections_path.exists() {
            serde_json::from_slice(&fs::read(&collections_path)?)?
        } else {
            let defaults: Vec<String> = DEFAULT_COLLECTIONS.iter().map(|s| s.to_string()).collect();
            atomic_write(&collections_path, &serde_json::to_vec_pretty(&defaults)?)?;
            defaults
        };

        let index_path = root.join("catalog.json");
        let index: Index = if index_path.exists() {
            serde_json::from_slice(&fs::read(&index_path)?)?
        } else {
            Index::default()
        };
        // directories renamed in but never indexed were never visible
        let known: HashSet<&str> = index.datasets.iter().map(|r| r.id.as_str()).collect();
        for entry in fs::read_dir(root.join("datasets"))? {
            let entry = entry?;
            let name = entry.file_name();
            if !known.contains(name.to_string_lossy().as_ref()) {
                log::warn!("removing unindexed dataset directory {:?}", entry.path());
                fs::remove_dir_all(entry.path())?;
            }
        }

        let workspace = Workspace::open(root.join("workspace.json"))?;
        Ok(Self {
            config,
            collections,
            index: RwLock::new(index),
            reserved: Mutex::new(HashSet::new()),
            workspace,
        })
    }

    pub fn config(&self) -> &ServiceConfig {
        &self.config
    }

    pub fn collections(&self) -> &[String] {
        &self.collections
    }

    pub fn workspace(&self) -> &Workspace {
        &self.workspace
    }

    fn read(&self) -> RwLockReadGuard<'_, Index> {
        self.index.read().unwrap_or_else(|e| e.into_inner())
    }

    fn write(&self) -> RwLockWriteGuard<'_, Index> {
        self.index.write().unwrap_or_else(|e| e.into_inner())
    }

    fn save_index(&self, index: &Index) -> Result<()> {
        atomic_write(
            &self.config.root.join("catalog.json"),
            &serde_json::to_vec_pretty(index)?,
        )?;
        Ok(())
    }

    fn dataset_dir(&self, id: &str) -> PathBuf {
        self.config.root.join("datasets").join(id)
    }

    fn check_collection(&self, requested: Option<&str>, default: &str) -> Result<String> {
        let c = requested.unwrap_or(default);
        if self.collections.iter().any(|x| x == c) {
            Ok(c.to_string())
        } else {
            Err(ServiceError::UnknownCollection(c.to_string()))
        }
    }

    fn reserve_slug(&self, name: &str) -> String {
        let base = slugify(name);
        let index = self.read();
        let mut reserved = lock(&self.reserved);
        let mut slug = base.clone();
        let mut suffix = 2;
        while index.taken(&slug) || reserved.contains(&slug) {
            slug = format!("{base}-{suffix}");
            suffix += 1;
        }
        reserved.insert(slug.clone());
        slug
    }

    fn pending(
        &self,
        info: DatasetInfo,
        source: Source,
        graph: Graph,
        report: NormalizationReport,
        generator: Option<GeneratorConfig>,
    ) -> Result<Pending> {
        let default = match source {
            Source::Generated => GENERATED_COLLECTION,
            _ => UPLOAD_COLLECTION,
        };
        let collection = self.check_collection(info.collection.as_deref(), default)?;
        if graph.node_count() == 0 {
            return Err(ServiceError::EmptyGraph);
        }
        if info.name.trim().is_empty() {
            return Err(ServiceError::BadRequest("name must not be empty".into()));
        }
        Ok(Pending {
            slug: self.reserve_slug(&info.name),
            info,
            collection,
            source,
            graph,
            report,
            generator,
        })
    }

    /// Parses and normalizes an edge-list upload and reserves its slug.
    pub fn prepare_upload(&self, info: DatasetInfo, text: &str) -> Result<Pending> {
        let raw = parse_edge_list_str(text)?;
        let (graph, report) = build_graph(&raw);
        self.pending(info, Source::Uploaded, graph, report, None)
    }

    /// Validates and runs a generator and reserves the slug of its output.
    pub fn prepare_generated(&self, info: DatasetInfo, config: GeneratorConfig) -> Result<Pending> {
        let graph = config.generate()?;
        let report = NormalizationReport {
            input_edges: graph.edge_count(),
            ..Default::default()
        };
        self.pending(info, Source::Generated, graph, report, Some(config))
    }

    /// Computes and persists everything for `pending`, then publishes the record.
    pub fn finish(&self, pending: Pending) -> Result<DatasetRecord> {
        let slug = pending.slug.clone();
        let tmp = self.config.root.join("tmp").join(&slug);
        let result = self.materialize(pending, &tmp);
        if result.is_err() {
            let _ = fs::remove_dir_all(&tmp);
            lock(&self.reserved).remove(&slug);
        }
        result
    }

    fn materialize(&self, p: Pending, tmp: &Path) -> Result<DatasetRecord> {
        let paths = DatasetPaths::default();
        fs::create_dir_all(tmp)?;
        let stats = write_dataset_files(tmp, &paths, &p.graph, &self.config)?;

        let intra_block_fraction = p
            .generator
            .as_ref()
            .and_then(GeneratorConfig::block_sizes)
            .map(|sizes| intra_block_fraction(&p.graph, &sizes));
        let record = DatasetRecord {
            id: p.slug.clone(),
            name: p.info.name,
            collection: p.collection,
            source: p.source,
            metadata: Metadata {
                description: p.info.description,
                citation: p.info.citation,
                notes: Vec::new(),
                generator: p.generator,
                intra_block_fraction,
                normalization: p.report,
            },
            processed: true,
            stats: Some(stats),
            created_at: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            paths,
        };

        let mut index = self.write();
        fs::rename(tmp, self.dataset_dir(&p.slug))?;
        index.datasets.push(record.clone());
        if let Err(e) = self.save_index(&index) {
            index.datasets.pop();
            let _ = fs::remove_dir_all(self.dataset_dir(&p.slug));
            return Err(e);
        }
        lock(&self.reserved).remove(&p.slug);
        log::info!("dataset {} ready", record.id);
        Ok(record)
    }

    pub fn ingest_text(&self, info: DatasetInfo, text: &str) -> Result<DatasetRecord> {
        let pending = self.prepare_upload(info, text)?;
        self.finish(pending)
    }

    pub fn generate(&self, info: DatasetInfo, config: GeneratorConfig) -> Result<DatasetRecord> {
        let pending = self.prepare_generated(info, config)?;
        self.finish(pending)
    }

    /// All processed records in creation order.
    pub fn list(&self) -> Vec<DatasetRecord> {
        self.read().datasets.clone()
    }

    /// Record by id or alias.
    pub fn get(&self, id: &str) -> Result<DatasetRecord> {
        let index = self.read();
        index
            .position(id)
            .map(|i| index.datasets[i].clone())
            .ok_or_else(|| ServiceError::not_found("graph", id))
    }

    /// Applies `patch`. A new name adds its slug as an alias unless taken;
    /// the id itself never changes.
    pub fn update(&self, id: &str, patch: RecordPatch) -> Result<DatasetRecord> {
        let mut index = self.write();
        let i = index.position(id).ok_or_else(|| ServiceError::not_found("graph", id))?;
        let mut record = index.datasets[i].clone();
        if let Some(name) = patch.name {
            if name.trim().is_empty() {
                return Err(ServiceError::BadRequest("name must not be empty".into()));
            }
            let alias = slugify(&name);
            if !index.taken(&alias) && !lock(&self.reserved).contains(&alias) {
                index.aliases.insert(alias, record.id.clone());
            }
            record.name = name;
        }
        if let Some(d) = patch.description {
            record.metadata.description = d;
        }
        if let Some(c) = patch.citation {
            record.metadata.citation = c;
        }
        let old = std::mem::replace(&mut index.datasets[i], record.clone());
        if let Err(e) = self.save_index(&index) {
            index.datasets[i] = old;
            return Err(e);
        }
        Ok(record)
    }

    pub fn add_note(&self, id: &str, note: String) -> Result<DatasetRecord> {
        let mut index = self.write();
        let i = index.position(id).ok_or_else(|| ServiceError::not_found("graph", id))?;
        index.datasets[i].metadata.notes.push(note);
        if let Err(e) = self.save_index(&index) {
            index.datasets[i].metadata.notes.pop();
            return Err(e);
        }
        Ok(index.datasets[i].clone())
    }

    fn read_file(&self, id: &str, pick: impl Fn(&DatasetPaths) -> &str) -> Result<Vec<u8>> {
        let record = self.get(id)?;
        Ok(fs::read(self.dataset_dir(&record.id).join(pick(&record.paths)))?)
    }

    /// Stats exactly as persisted, the canonical JSON rendering.
    pub fn stats_json(&self, id: &str) -> Result<String> {
        String::from_utf8(self.read_file(id, |p| &p.stats)?)
            .map_err(|e| ServiceError::Io(std::io::Error::other(e)))
    }

    pub fn stats(&self, id: &str) -> Result<GraphStats> {
        Ok(serde_json::from_slice(&self.read_file(id, |p| &p.stats)?)?)
    }

    pub fn node_stats(&self, id: &str) -> Result<NodeStatsTable> {
        Ok(serde_json::from_slice(&self.read_file(id, |p| &p.node_stats)?)?)
    }

    /// Canonical edge-list dump.
    pub fn edge_list(&self, id: &str) -> Result<String> {
        String::from_utf8(self.read_file(id, |p| &p.edges)?)
            .map_err(|e| ServiceError::Io(std::io::Error::other(e)))
    }

    pub fn graph(&self, id: &str) -> Result<Graph> {
        let raw = parse_edge_list_str(&self.edge_list(id)?)?;
        Ok(build_graph(&raw).0)
    }

    pub fn distribution(&self, id: &str, statistic: &str) -> Result<Distribution> {
        if !NodeStatsTable::COLUMNS.contains(&statistic) {
            self.get(id)?;
            return Err(ServiceError::UnknownStatistic(statistic.to_string()));
        }
        let mut all: BTreeMap<String, Distribution> =
            serde_json::from_slice(&self.read_file(id, |p| &p.distributions)?)?;
        all.remove(statistic)
            .ok_or_else(|| ServiceError::UnknownStatistic(statistic.to_string()))
    }

    pub fn stored_layout(&self, id: &str) -> Result<StoredLayout> {
        Ok(serde_json::from_slice(&self.read_file(id, |p| &p.layout)?)?)
    }
}

fn write_dataset_files(
    dir: &Path,
    paths: &DatasetPaths,
    g: &Graph,
    config: &ServiceConfig,
) -> Result<GraphStats> {
    fs::write(dir.join(&paths.edges), g.to_edge_list())?;
    let (stats, table) = compute_all(g);
    fs::write(dir.join(&paths.stats), stats.to_json())?;
    fs::write(dir.join(&paths.node_stats), serde_json::to_vec(&table)?)?;
    let mut dists = BTreeMap::new();
    for column in NodeStatsTable::COLUMNS {
        dists.insert(column, distribution(&table, column)?);
    }
    fs::write(dir.join(&paths.distributions), serde_json::to_vec(&dists)?)?;
    let layout = viz::default_layout(g, config);
    fs::write(dir.join(&paths.layout), serde_json::to_vec(&layout)?)?;
    Ok(stats)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slugs() {
        assert_eq!(slugify("Karate Club (Zachary)"), "karate-club-zachary");
        assert_eq!(slugify("  --  "), "graph");
        assert_eq!(slugify("ÄÖ web"), "web");
        assert!(slugify(&"x".repeat(200)).len() <= MAX_SLUG_LEN);
    }
}
