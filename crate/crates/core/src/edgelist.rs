//! Edge-list ingestion.
//!
//! Accepted input is whitespace-delimited rows of 2 to 4 columns:
//! `source target [weight [timestamp]]`. Lines starting with `%` or `#` are
//! comments, except the `#nodes N` header written by [`Graph::to_edge_list`].
//! A Matrix Market banner (`%%MatrixMarket ...`) makes the first data row a
//! dimension row, which is skipped.
//!
//! Labels are mapped to dense ids in first-seen order. Files carrying a
//! `#nodes N` header whose labels are all integers below `N` keep their ids
//! unchanged, so canonical dumps round-trip exactly.
//!
//! [`Graph::to_edge_list`]: crate::graph::Graph::to_edge_list

use std::collections::HashMap;
use std::io::BufRead;

use crate::error::{Error, Result};
use crate::graph::NodeId;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct EdgeListFile {
    /// Edge rows as dense node ids, in file order.
    pub edges: Vec<(NodeId, NodeId)>,
    /// Original label of each dense id.
    pub labels: Vec<String>,
    /// Third column per edge row, when present.
    pub weights: Vec<Option<f64>>,
    /// Fourth column per edge row, when present.
    pub timestamps: Vec<Option<f64>>,
    pub comments: Vec<String>,
    /// Node count declared by a `#nodes N` header.
    pub declared_nodes: Option<usize>,
}

impl EdgeListFile {
    pub fn node_count(&self) -> usize {
        self.labels.len().max(self.declared_nodes.unwrap_or(0))
    }

    /// Edge rows with their original labels.
    pub fn labeled_edges(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.edges
            .iter()
            .map(|&(u, v)| (self.labels[u as usize].as_str(), self.labels[v as usize].as_str()))
    }

    pub fn label_map(&self) -> HashMap<&str, NodeId> {
        self.labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i as NodeId))
            .collect()
    }
}

struct Row<'a> {
    source: &'a str,
    target: &'a str,
    weight: Option<f64>,
    timestamp: Option<f64>,
}

fn parse_header(line: &str) -> Option<usize> {
    let rest = line.strip_prefix('#')?.trim_start();
    let rest = rest.strip_prefix("nodes")?;
    rest.trim().parse().ok()
}

fn parse_column(token: &str, line: usize, what: &str) -> Result<f64> {
    token.parse().map_err(|_| Error::Parse {
        line,
        message: format!("{what} column `{token}` is not a number"),
    })
}

pub fn parse_edge_list_str(text: &str) -> Result<EdgeListFile> {
    let mut file = EdgeListFile::default();
    let mut rows = Vec::new();
    let mut matrix_market = false;
    let mut dimension_pending = false;

    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if trimmed.starts_with("%%MatrixMarket") {
            if rows.is_empty() && !matrix_market {
                matrix_market = true;
                dimension_pending = true;
            }
            file.comments.push(trimmed.to_string());
            continue;
        }
        if trimmed.starts_with('%') || trimmed.starts_with('#') {
            if let Some(n) = parse_header(trimmed) {
                file.declared_nodes = Some(n);
            }
            file.comments.push(trimmed.to_string());
            continue;
        }
        if dimension_pending {
            dimension_pending = false;
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        match tokens.len() {
            0 | 1 => {
                return Err(Error::Parse {
                    line: lineno,
                    message: "expected at least 2 columns".into(),
                })
            }
            2..=4 => {}
            k => {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("expected at most 4 columns, found {k}"),
                })
            }
        }
        let weight = tokens
            .get(2)
            .map(|t| parse_column(t, lineno, "weight"))
            .transpose()?;
        let timestamp = tokens
            .get(3)
            .map(|t| parse_column(t, lineno, "timestamp"))
            .transpose()?;
        rows.push(Row {
            source: tokens[0],
            target: tokens[1],
            weight,
            timestamp,
        });
    }

    let identity = file.declared_nodes.filter(|&n| {
        rows.iter().all(|r| {
            [r.source, r.target]
                .iter()
                .all(|t| t.parse::<usize>().is_ok_and(|id| id < n))
        })
    });

    if let Some(n) = identity {
        file.labels = (0..n).map(|i| i.to_string()).collect();
        for r in &rows {
            file.edges.push((
                r.source.parse().expect("checked above"),
                r.target.parse().expect("checked above"),
            ));
        }
    } else {
        let mut ids: HashMap<&str, NodeId> = HashMap::new();
        for r in &rows {
            let mut intern = |label| {
                *ids.entry(label).or_insert_with(|| {
                    file.labels.push(label.to_string());
                    (file.labels.len() - 1) as NodeId
                })
            };
            let u = intern(r.source);
            let v = intern(r.target);
            file.edges.push((u, v));
        }
    }
    for r in &rows {
        file.weights.push(r.weight);
        file.timestamps.push(r.timestamp);
    }
    Ok(file)
}

/// Reads and parses an edge list from any byte stream.
pub fn parse_edge_list<R: BufRead>(mut reader: R) -> Result<EdgeListFile> {
    let mut bytes = Vec::new();
    reader.read_to_end(&mut bytes)?;
    let text = String::from_utf8(bytes).map_err(|e| {
        let line = e.as_bytes()[..e.utf8_error().valid_up_to()]
            .iter()
            .filter(|&&b| b == b'\n')
            .count()
            + 1;
        Error::Parse {
            line,
            message: "input is not valid UTF-8".into(),
        }
    })?;
    parse_edge_list_str(&text)
}
