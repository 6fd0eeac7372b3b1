//! Saved items grouped under opaque workspace keys.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;

use crate::error::{Result, ServiceError};
use crate::store::atomic_write;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ItemKind {
    SavedQuery,
    GeneratedGraph,
    VisualizationPreference,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WorkspaceItem {
    pub id: u64,
    pub kind: ItemKind,
    /// Stored and returned verbatim.
    pub payload: Box<RawValue>,
    pub created_at: String,
}

#[derive(Debug, Deserialize)]
pub struct NewItem {
    pub kind: ItemKind,
    pub payload: Box<RawValue>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
struct Bucket {
    next_id: u64,
    items: Vec<WorkspaceItem>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
struct State {
    keys: BTreeMap<String, Bucket>,
}

pub struct Workspace {
    path: PathBuf,
    state: Mutex<State>,
}

impl Workspace {
    pub(crate) fn open(path: PathBuf) -> Result<Self> {
        let state = if path.exists() {
            serde_json::from_slice(&fs::read(&path)?)?
        } else {
            State::default()
        };
        Ok(Self {
            path,
            state: Mutex::new(state),
        })
    }

    fn persist(&self, state: &State) -> Result<()> {
        atomic_write(&self.path, &serde_json::to_vec(state)?)?;
        Ok(())
    }

    pub fn save(&self, key: &str, item: NewItem) -> Result<WorkspaceItem> {
        let mut state = self.state.lock().unwrap_or_else(|e| e.into_inner());
        let bucket = state.keys.entry(key.to_string()).or_default();
        bucket.next_id += 1;
        let saved = WorkspaceItem {
            id: bucket.next_id,
            kind: item.kind,
            payload: item.payload,
            created_at: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        };
        bucket.items.push(saved.clone());
        if let Err(e) = self.persist(&state) {
            let bucket = state.keys.get_mut(key).expect("bucket exists");
            bucket.items.pop();
            return Err(e);
        }
        Ok(saved)
    }

    /// Items in insertion order; empty for an unknown key.
    pub fn list(&self, key: &str) -> Vec<WorkspaceItem> {
        let state = self.state.lock().unwrap_or_else(|e| e.into_inner());
        state.keys.get(key).map(|b| b.items.clone()).unwrap_or_default()
    }

    pub fn delete(&self, key: &str, id: u64) -> Result<()> {
        let mut state = self.state.lock().unwrap_or_else(|e| e.into_inner());
        let bucket = state
            .keys
            .get_mut(key)
            .ok_or_else(|| ServiceError::not_found("workspace item", id.to_string()))?;
        let pos = bucket
            .items
            .iter()
            .position(|i| i.id == id)
            .ok_or_else(|| ServiceError::not_found("workspace item", id.to_string()))?;
        let removed = bucket.items.remove(pos);
        if let Err(e) = self.persist(&state) {
            state.keys.get_mut(key).expect("bucket exists").items.insert(pos, removed);
            return Err(e);
        }
        Ok(())
    }
}
